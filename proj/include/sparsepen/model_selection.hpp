#pragma once

#include "sparsepen/dataset.hpp"
#include "sparsepen/parallel.hpp"
#include "sparsepen/penalty.hpp"
#include "sparsepen/solver.hpp"

#include <cstdint>
#include <vector>

namespace sparsepen {

/// Smallest lambda at which the Lasso solution is identically zero: max_j |(1/n) X_j^T y|.
double lambda_max(const Dataset& data);

/// `count` log-spaced values from lambda_max down to ratio * lambda_max.
/// Throws DataError when lambda_max == 0.
std::vector<double> lambda_grid(const Dataset& data, int count, double ratio);

struct CVConfig {
    int folds = 10;
    std::uint64_t seed = 0;
    FitConfig fit;
    StandardizeOptions standardize;
    /// Standardize once on all rows instead of per training split (leaks held-out
    /// location/scale into training; kept to reproduce the global-standardization workflow).
    bool global_standardization = false;
    Execution execution = Execution::Parallel;
};

struct CVReport {
    std::vector<double> lambdas;
    std::vector<double> mean_cv_error;
    std::vector<double> se_cv_error;
    double best_lambda = 0.0;
    std::vector<int> fold_assignments;
};

/// Seeded shuffle then round-robin: fold sizes differ by at most one.
std::vector<int> assign_folds(Eigen::Index n, int k, std::uint64_t seed);

struct FoldOutcome {
    PathResult path;
    std::vector<double> held_out_error; // mean squared prediction error per lambda
};

/// Trains on every row not in `fold` and scores the rows in it.
FoldOutcome evaluate_fold(const RawTable& table, const std::vector<int>& fold_assignments,
                          int fold, Family family, double a, const std::vector<double>& lambdas,
                          const CVConfig& cfg);

/// k-fold cross-validation over a fixed decreasing lambda grid. The best lambda is the
/// argmin of mean held-out error, ties (within 1e-12) going to the larger lambda.
CVReport cross_validate(const RawTable& table, Family family, double a,
                        const std::vector<double>& lambdas, const CVConfig& cfg);

} // namespace sparsepen
