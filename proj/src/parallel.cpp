#include "sparsepen/parallel.hpp"

#include <omp.h>

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace sparsepen {

int configured_threads() {
    const char* raw = std::getenv("SPARSEPEN_THREADS");
    if (raw == nullptr) return 0;
    int value = 0;
    const auto [ptr, ec] = std::from_chars(raw, raw + std::strlen(raw), value);
    if (ec != std::errc() || value < 0) return 0;
    return value;
}

void apply_thread_limit() {
    if (const int threads = configured_threads(); threads > 0) omp_set_num_threads(threads);
}

} // namespace sparsepen
