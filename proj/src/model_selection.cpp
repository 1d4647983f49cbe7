#include "sparsepen/model_selection.hpp"

#include "sparsepen/errors.hpp"
#include "sparsepen/kernels.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace sparsepen {

double lambda_max(const Dataset& data) {
    return kernels::column_correlations(data.X(), data.y()).cwiseAbs().maxCoeff();
}

std::vector<double> lambda_grid(const Dataset& data, int count, double ratio) {
    if (count < 2) throw std::invalid_argument("lambda grid needs at least 2 points");
    if (!(ratio > 0.0 && ratio < 1.0)) throw std::invalid_argument("lambda ratio must be in (0, 1)");
    const double top = lambda_max(data);
    if (!(top > 0.0)) throw DataError("lambda_max is zero; response is uncorrelated with every predictor");

    std::vector<double> grid(static_cast<std::size_t>(count));
    const double log_top = std::log(top);
    const double step = std::log(ratio) / static_cast<double>(count - 1);
    grid.front() = top;
    for (int k = 1; k < count - 1; ++k) grid[static_cast<std::size_t>(k)] = std::exp(log_top + step * k);
    grid.back() = ratio * top;
    return grid;
}

std::vector<int> assign_folds(Eigen::Index n, int k, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("cross-validation needs at least 2 folds");
    if (static_cast<Eigen::Index>(k) > n)
        throw std::invalid_argument(fmt::format("{} folds requested for {} observations", k, n));
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> folds(static_cast<std::size_t>(n));
    for (std::size_t pos = 0; pos < order.size(); ++pos)
        folds[static_cast<std::size_t>(order[pos])] = static_cast<int>(pos % static_cast<std::size_t>(k));
    return folds;
}

namespace {

std::vector<Eigen::Index> rows_where(const std::vector<int>& folds, int fold, bool in_fold) {
    std::vector<Eigen::Index> rows;
    for (std::size_t i = 0; i < folds.size(); ++i)
        if ((folds[i] == fold) == in_fold) rows.push_back(static_cast<Eigen::Index>(i));
    return rows;
}

} // namespace

FoldOutcome evaluate_fold(const RawTable& table, const std::vector<int>& fold_assignments,
                          int fold, Family family, double a, const std::vector<double>& lambdas,
                          const CVConfig& cfg) {
    if (fold_assignments.size() != static_cast<std::size_t>(table.n()))
        throw std::invalid_argument("fold assignment length does not match rows");
    const auto train = rows_where(fold_assignments, fold, false);
    const auto held = rows_where(fold_assignments, fold, true);
    if (held.empty()) throw DataError(fmt::format("fold {} is empty", fold));
    if (train.size() < 2) throw DataError(fmt::format("fold {} leaves fewer than 2 training rows", fold));

    const Eigen::MatrixXd X_train = table.X(train, Eigen::all);
    const Eigen::VectorXd y_train = table.y(train);
    // Global mode: scales come from all rows; centering by the training means plays the
    // role of the unpenalized intercept.
    const Dataset data =
        cfg.global_standardization
            ? center_with_scales(X_train, y_train,
                                 standardize(table, cfg.standardize).standardization(),
                                 table.predictor_names)
            : standardize(X_train, y_train, cfg.standardize, table.predictor_names);

    FoldOutcome outcome;
    outcome.path = fit_path(data, family, a, lambdas, cfg.fit);
    const Eigen::MatrixXd X_held = table.X(held, Eigen::all);
    const Eigen::VectorXd y_held = table.y(held);
    for (const FitResult& f : outcome.path.fits) {
        const Eigen::VectorXd pred = data.predict_original(X_held, f.beta);
        outcome.held_out_error.push_back((y_held - pred).squaredNorm() /
                                         static_cast<double>(held.size()));
    }
    return outcome;
}

CVReport cross_validate(const RawTable& table, Family family, double a,
                        const std::vector<double>& lambdas, const CVConfig& cfg) {
    if (lambdas.empty()) throw std::invalid_argument("lambda grid is empty");
    const int k = cfg.folds;
    CVReport report;
    report.lambdas = lambdas;
    report.fold_assignments = assign_folds(table.n(), k, cfg.seed);

    // Fold outcomes land in their own slot; aggregation below runs in fold order, so
    // serial and parallel execution give identical sums.
    std::vector<std::vector<double>> errors(static_cast<std::size_t>(k));
    if (cfg.execution == Execution::Serial) {
        for (int f = 0; f < k; ++f)
            errors[static_cast<std::size_t>(f)] =
                evaluate_fold(table, report.fold_assignments, f, family, a, lambdas, cfg).held_out_error;
    } else {
        std::vector<std::exception_ptr> failures(static_cast<std::size_t>(k));
#pragma omp parallel for schedule(dynamic, 1)
        for (int f = 0; f < k; ++f) {
            try {
                errors[static_cast<std::size_t>(f)] =
                    evaluate_fold(table, report.fold_assignments, f, family, a, lambdas, cfg)
                        .held_out_error;
            } catch (...) {
                failures[static_cast<std::size_t>(f)] = std::current_exception();
            }
        }
        for (const auto& failure : failures)
            if (failure) std::rethrow_exception(failure);
    }

    const std::size_t m = lambdas.size();
    report.mean_cv_error.assign(m, 0.0);
    report.se_cv_error.assign(m, 0.0);
    for (std::size_t l = 0; l < m; ++l) {
        double sum = 0.0;
        for (int f = 0; f < k; ++f) sum += errors[static_cast<std::size_t>(f)][l];
        const double mean = sum / k;
        double ss = 0.0;
        for (int f = 0; f < k; ++f) {
            const double d = errors[static_cast<std::size_t>(f)][l] - mean;
            ss += d * d;
        }
        report.mean_cv_error[l] = mean;
        report.se_cv_error[l] = std::sqrt(ss / (k - 1)) / std::sqrt(static_cast<double>(k));
    }

    std::size_t best = 0;
    for (std::size_t l = 1; l < m; ++l)
        if (report.mean_cv_error[l] < report.mean_cv_error[best] - 1e-12) best = l;
    report.best_lambda = lambdas[best];
    return report;
}

} // namespace sparsepen
