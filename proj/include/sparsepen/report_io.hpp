#pragma once

#include "sparsepen/model_selection.hpp"
#include "sparsepen/simulation.hpp"
#include "sparsepen/solver.hpp"

#include <json.hpp>

#include <iosfwd>
#include <vector>

namespace sparsepen {

// JSON field names follow the C++ member names. Field order is fixed, and doubles
// are written in shortest round-trip form, so equal values serialize identically.

using Json = nlohmann::ordered_json;

Json to_json(const FitResult& fit, const std::vector<std::string>& names = {});
Json to_json(const PathResult& path, const std::vector<std::string>& names = {});
Json to_json(const CVReport& report);
Json to_json(const SimulationReport& report, bool include_records = true);
Json to_json(const std::vector<BenchRow>& rows);

/// term,beta,beta_original (intercept first, beta empty for it)
void write_fit_csv(std::ostream& out, const FitResult& fit, const std::vector<std::string>& names);
/// lambda,nonzero,objective,iterations,converged,wall_time
void write_path_csv(std::ostream& out, const PathResult& path, const Dataset& data);
/// lambda,mean_cv_error,se_cv_error
void write_cv_csv(std::ostream& out, const CVReport& report);
/// family,lambda,a,replication,l2_error,sparsity,seconds,converged
void write_simulation_csv(std::ostream& out, const SimulationReport& report);
/// family,a,lambda,replications,mean_seconds,sd_seconds,mean_iterations,convergence_rate
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);
/// family,iteration,objective
void write_trace_csv(std::ostream& out, const std::vector<BenchRow>& rows);

} // namespace sparsepen
