#pragma once

#include "sparsepen/dataset.hpp"
#include "sparsepen/parallel.hpp"
#include "sparsepen/penalty.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace sparsepen {

struct PenaltyChoice {
    Family family;
    double a;
};

/// Lasso, SCAD (a = 3.7) and MCP (a = 3).
std::vector<PenaltyChoice> default_penalties();

/// Sparse linear model y = X beta0 + eps with beta0 = (v, ..., v, 0, ..., 0).
struct SimulationConfig {
    Eigen::Index n = 200;
    Eigen::Index p = 1000;
    Eigen::Index n_true = 10;
    double beta_value = 1.0;
    double noise_sd = 1.0;
    int replications = 100;
    std::uint64_t seed = 0;
    std::vector<double> lambdas;  // strictly decreasing
    std::vector<PenaltyChoice> families = default_penalties();
    double tol = 1e-6;
    int max_iters = 10000;
    double rho = 0.0;             // AR(1) correlation between neighbouring columns; 0 = iid
    bool warm_start = true;       // walk the lambda grid per family, else cold fits
    Execution execution = Execution::Parallel;

    /// Throws std::invalid_argument.
    void validate(bool require_lambdas = true) const;
};

struct Model1Sample {
    RawTable raw;
    Dataset data;
    Eigen::VectorXd beta_true;
};

/// Draws replication `replication` from a stream keyed by (seed, replication), so the
/// result never depends on which thread or in which order replications run.
Model1Sample generate_model1(const SimulationConfig& cfg, int replication);

/// Log-spaced grid topped by the lambda_max of replication 0.
std::vector<double> default_simulation_grid(const SimulationConfig& cfg, int count, double ratio);

struct ReplicationRecord {
    Family family;
    double a;
    double lambda;
    int replication;
    double l2_error;       // ||beta_hat - beta0||_2
    double squared_error;  // ||beta_hat - beta0||_2^2
    Eigen::Index sparsity; // #{j : |beta_hat_j| > 1e-8}
    bool support_exact;    // estimated support == true support
    double seconds;
    int iterations;
    bool converged;
    std::string error;     // empty unless the fit threw
};

struct CellSummary {
    Family family;
    double a;
    double lambda;
    double mean_l2_error;
    double mean_squared_error;
    double mean_sparsity;
    double mean_fit_seconds;
    double convergence_rate;
    double support_recovery_rate;
    int failures;
};

struct SimulationReport {
    SimulationConfig config;
    std::vector<CellSummary> cells;         // family-major, then lambda in grid order
    std::vector<ReplicationRecord> records; // family, lambda, replication order
};

SimulationReport run_simulation(const SimulationConfig& cfg);

/// Drops all wall-clock fields so that reports compare byte-for-byte.
void clear_timings(SimulationReport& report);

// Convergence timing: cold fits from zero at one fixed lambda, run one at a time.

struct BenchConfig {
    SimulationConfig model;  // lambdas/warm_start/execution are ignored
    double lambda = 0.05;
    bool trace = false;      // keep the objective trace of replication 0
};

struct BenchRow {
    Family family;
    double a;
    double lambda;
    int replications;
    double mean_seconds;
    double sd_seconds;
    double mean_iterations;
    double convergence_rate;
    std::vector<double> trace;  // replication 0, if requested
};

std::vector<BenchRow> run_bench(const BenchConfig& cfg);

} // namespace sparsepen
