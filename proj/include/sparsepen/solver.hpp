#pragma once

#include "sparsepen/dataset.hpp"
#include "sparsepen/penalty.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace sparsepen {

struct FitConfig {
    double tol = 1e-6;                          // on max |delta beta_j| over a full cycle
    int max_iters = 10000;                      // full cycles over all p coordinates
    std::optional<Eigen::VectorXd> warm_start;  // empty = zero initialization
    bool trace = false;                         // record the objective after every cycle
};

struct FitResult {
    PenaltySpec penalty;
    Eigen::VectorXd beta;           // standardized scale
    Eigen::VectorXd beta_original;  // raw predictor scale
    double intercept = 0.0;         // raw scale
    std::vector<double> objective_trace;
    int iterations = 0;
    bool converged = false;
    double final_max_change = 0.0;  // max |delta beta_j| on the last cycle
    double wall_time = 0.0;         // seconds, fit loop only

    Eigen::Index nonzero_count(double eps = 1e-8) const;
};

struct PathResult {
    std::vector<double> lambdas;
    std::vector<FitResult> fits;
    bool warm_started = true;
};

/// (1/2n) ||y - X beta||^2 + sum_j p_lambda(|beta_j|).
double objective(const Dataset& data, const PenaltySpec& spec, const Eigen::VectorXd& beta);

/// Cyclic coordinate descent with a cached residual.
FitResult fit(const Dataset& data, const PenaltySpec& spec, const FitConfig& cfg = {});

/// Fits a strictly decreasing lambda sequence, each fit warm-started from the previous
/// solution. The first fit starts from cfg.warm_start (or zero).
PathResult fit_path(const Dataset& data, Family family, double a,
                    const std::vector<double>& lambdas, const FitConfig& cfg = {});

struct StationarityViolation {
    Eigen::Index index;
    double beta;
    double gradient;  // (1/n) X_j^T (y - X beta)
    double excess;    // amount by which the condition is missed
};

struct StationarityReport {
    std::vector<StationarityViolation> violations;
    bool ok() const noexcept { return violations.empty(); }
};

/// First-order optimality check. For beta_j != 0 requires
/// |g_j - sgn(beta_j) p'(|beta_j|)| <= tol, for beta_j == 0 requires |g_j| <= lambda + tol.
StationarityReport check_stationarity(const Dataset& data, const PenaltySpec& spec,
                                      const Eigen::VectorXd& beta, double tol);

} // namespace sparsepen
