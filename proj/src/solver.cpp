#include "sparsepen/solver.hpp"

#include "sparsepen/errors.hpp"
#include "sparsepen/kernels.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace sparsepen {

namespace {

double penalty_sum(const PenaltySpec& spec, const Eigen::VectorXd& beta) {
    double total = 0.0;
    for (Eigen::Index j = 0; j < beta.size(); ++j) total += penalty_value(spec, std::abs(beta(j)));
    return total;
}

double objective_from_residual(const PenaltySpec& spec, const Eigen::VectorXd& r,
                               const Eigen::VectorXd& beta) {
    return 0.5 * r.squaredNorm() / static_cast<double>(r.size()) + penalty_sum(spec, beta);
}

} // namespace

Eigen::Index FitResult::nonzero_count(double eps) const {
    return (beta_original.array().abs() > eps).count();
}

double objective(const Dataset& data, const PenaltySpec& spec, const Eigen::VectorXd& beta) {
    if (beta.size() != data.p()) throw std::invalid_argument("coefficient length does not match p");
    const Eigen::VectorXd r = data.y() - data.X() * beta;
    return objective_from_residual(spec, r, beta);
}

FitResult fit(const Dataset& data, const PenaltySpec& spec, const FitConfig& cfg) {
    if (!(cfg.tol > 0.0)) throw std::invalid_argument("tol must be > 0");
    if (cfg.max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");

    const auto start = std::chrono::steady_clock::now();
    const Eigen::MatrixXd& X = data.X();
    const Eigen::Index n = data.n();
    const Eigen::Index p = data.p();
    const double inv_n = 1.0 / static_cast<double>(n);

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
    if (cfg.warm_start) {
        if (cfg.warm_start->size() != p)
            throw std::invalid_argument("warm start length does not match p");
        if (!cfg.warm_start->allFinite()) throw NumericError("warm start contains non-finite values");
        beta = *cfg.warm_start;
    }

    // Column mean squares are 1 up to rounding; using them keeps z_j the exact partial
    // residual correlation.
    Eigen::VectorXd col_msq(p);
    for (Eigen::Index j = 0; j < p; ++j) col_msq(j) = X.col(j).squaredNorm() * inv_n;

    const bool unit = data.unit_scaled();

    Eigen::VectorXd r = data.y();
    if (cfg.warm_start) r.noalias() -= X * beta;

    FitResult result{spec, {}, {}, 0.0, {}, 0, false, 0.0, 0.0};
    if (cfg.trace) result.objective_trace.reserve(static_cast<std::size_t>(std::min(cfg.max_iters, 1024)));

    for (int iter = 1; iter <= cfg.max_iters; ++iter) {
        double max_change = 0.0;
        for (Eigen::Index j = 0; j < p; ++j) {
            const double old = beta(j);
            const double z = X.col(j).dot(r) * inv_n + col_msq(j) * old;
            const double updated = unit ? threshold(spec, z)
                                        : threshold_scaled(spec, z / col_msq(j), col_msq(j));
            const double delta = updated - old;
            if (delta != 0.0) {
                r.noalias() -= delta * X.col(j);
                beta(j) = updated;
                max_change = std::max(max_change, std::abs(delta));
            }
        }
        if (!std::isfinite(max_change)) throw NumericError("coordinate descent diverged");
        result.iterations = iter;
        result.final_max_change = max_change;
        if (cfg.trace) {
            const double q = objective_from_residual(spec, r, beta);
            if (!std::isfinite(q)) throw NumericError("objective became non-finite");
            result.objective_trace.push_back(q);
        }
        if (max_change < cfg.tol) {
            result.converged = true;
            break;
        }
    }

    result.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const OriginalCoefficients original = data.to_original(beta);
    result.beta = std::move(beta);
    result.beta_original = original.slopes;
    result.intercept = original.intercept;
    return result;
}

PathResult fit_path(const Dataset& data, Family family, double a,
                    const std::vector<double>& lambdas, const FitConfig& cfg) {
    if (lambdas.empty()) throw std::invalid_argument("lambda path is empty");
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
        if (!(lambdas[k] >= 0.0)) throw std::invalid_argument("lambdas must be >= 0");
        if (k > 0 && !(lambdas[k] < lambdas[k - 1]))
            throw std::invalid_argument("lambdas must be strictly decreasing");
    }

    PathResult path;
    path.lambdas = lambdas;
    path.warm_started = true;
    path.fits.reserve(lambdas.size());
    FitConfig step = cfg;
    for (const double lambda : lambdas) {
        path.fits.push_back(fit(data, PenaltySpec(family, lambda, a), step));
        step.warm_start = path.fits.back().beta;
    }
    return path;
}

StationarityReport check_stationarity(const Dataset& data, const PenaltySpec& spec,
                                      const Eigen::VectorXd& beta, double tol) {
    if (beta.size() != data.p()) throw std::invalid_argument("coefficient length does not match p");
    const Eigen::VectorXd r = data.y() - data.X() * beta;
    const Eigen::VectorXd g = kernels::column_correlations(data.X(), r);

    StationarityReport report;
    for (Eigen::Index j = 0; j < beta.size(); ++j) {
        const double b = beta(j);
        double excess = 0.0;
        if (b != 0.0) {
            const double expected = (b > 0.0 ? 1.0 : -1.0) * penalty_derivative(spec, std::abs(b));
            excess = std::abs(g(j) - expected) - tol;
        } else {
            excess = std::abs(g(j)) - (spec.lambda() + tol);
        }
        if (excess > 0.0 || std::isnan(excess)) report.violations.push_back({j, b, g(j), excess});
    }
    return report;
}

} // namespace sparsepen
