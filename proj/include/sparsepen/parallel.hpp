#pragma once

namespace sparsepen {

/// Selects between the OpenMP kernels and their serial reference versions.
/// Both produce bit-identical results; Serial exists for testing and benchmarking.
enum class Execution { Serial, Parallel };

/// Worker count from SPARSEPEN_THREADS (0, unset or unparsable = OpenMP default).
int configured_threads();

/// Applies configured_threads() to the OpenMP runtime.
void apply_thread_limit();

} // namespace sparsepen
