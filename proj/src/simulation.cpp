#include "sparsepen/simulation.hpp"

#include "sparsepen/errors.hpp"
#include "sparsepen/model_selection.hpp"
#include "sparsepen/solver.hpp"

#include <cmath>
#include <exception>
#include <random>
#include <stdexcept>

namespace sparsepen {

namespace {

constexpr double kNonzeroEps = 1e-8;

std::mt19937_64 replication_stream(std::uint64_t seed, int replication) {
    const auto rep = static_cast<std::uint64_t>(replication);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(rep), static_cast<std::uint32_t>(rep >> 32)};
    return std::mt19937_64(seq);
}

ReplicationRecord score_fit(const FitResult& f, const Eigen::VectorXd& beta_true,
                            Eigen::Index n_true, const PenaltyChoice& choice, double lambda,
                            int replication) {
    const Eigen::VectorXd diff = f.beta_original - beta_true;
    const auto nonzero = (f.beta_original.array().abs() > kNonzeroEps);
    const Eigen::Index sparsity = nonzero.count();
    const bool support_exact =
        sparsity == n_true && nonzero.head(n_true).all();
    return {choice.family, choice.a,  lambda,       replication, diff.norm(),
            diff.squaredNorm(), sparsity, support_exact, f.wall_time, f.iterations,
            f.converged,   {}};
}

std::vector<ReplicationRecord> simulate_replication(const SimulationConfig& cfg, int replication) {
    const Model1Sample sample = generate_model1(cfg, replication);
    std::vector<ReplicationRecord> out;
    out.reserve(cfg.families.size() * cfg.lambdas.size());
    for (const PenaltyChoice& choice : cfg.families) {
        FitConfig fit_cfg;
        fit_cfg.tol = cfg.tol;
        fit_cfg.max_iters = cfg.max_iters;
        for (const double lambda : cfg.lambdas) {
            try {
                const FitResult f = fit(sample.data, PenaltySpec(choice.family, lambda, choice.a), fit_cfg);
                out.push_back(score_fit(f, sample.beta_true, cfg.n_true, choice, lambda, replication));
                if (cfg.warm_start) fit_cfg.warm_start = f.beta;
            } catch (const std::exception& e) {
                ReplicationRecord failed{choice.family, choice.a, lambda, replication,
                                         std::nan(""),  std::nan(""), 0,    false,
                                         0.0,           0,            false, e.what()};
                out.push_back(std::move(failed));
            }
        }
    }
    return out;
}

} // namespace

std::vector<PenaltyChoice> default_penalties() {
    return {{Family::Lasso, default_a(Family::Lasso)},
            {Family::SCAD, default_a(Family::SCAD)},
            {Family::MCP, default_a(Family::MCP)}};
}

void SimulationConfig::validate(bool require_lambdas) const {
    if (n < 2 || p < 1) throw std::invalid_argument("simulation needs n >= 2 and p >= 1");
    if (n_true < 0 || n_true > p) throw std::invalid_argument("n_true must lie in [0, p]");
    if (replications < 1) throw std::invalid_argument("replications must be >= 1");
    if (!(noise_sd > 0.0)) throw std::invalid_argument("noise_sd must be > 0");
    if (!(rho > -1.0 && rho < 1.0)) throw std::invalid_argument("rho must lie in (-1, 1)");
    if (!(tol > 0.0) || max_iters < 1) throw std::invalid_argument("tol > 0 and max_iters >= 1 required");
    if (families.empty()) throw std::invalid_argument("no penalty families selected");
    for (const auto& choice : families) PenaltySpec(choice.family, 0.0, choice.a);
    if (require_lambdas && lambdas.empty()) throw std::invalid_argument("lambda grid is empty");
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
        if (!(lambdas[k] >= 0.0)) throw std::invalid_argument("lambdas must be >= 0");
        if (k > 0 && !(lambdas[k] < lambdas[k - 1]))
            throw std::invalid_argument("lambdas must be strictly decreasing");
    }
}

Model1Sample generate_model1(const SimulationConfig& cfg, int replication) {
    std::mt19937_64 rng = replication_stream(cfg.seed, replication);
    std::normal_distribution<double> normal(0.0, 1.0);

    const Eigen::Index n = cfg.n;
    const Eigen::Index p = cfg.p;
    const double innovation = std::sqrt(1.0 - cfg.rho * cfg.rho);

    RawTable raw;
    raw.response_name = "y";
    raw.X.resize(n, p);
    for (Eigen::Index i = 0; i < n; ++i) {
        double previous = 0.0;
        for (Eigen::Index j = 0; j < p; ++j) {
            const double e = normal(rng);
            const double x = (j == 0 || cfg.rho == 0.0) ? e : cfg.rho * previous + innovation * e;
            raw.X(i, j) = x;
            previous = x;
        }
    }
    Eigen::VectorXd beta_true = Eigen::VectorXd::Zero(p);
    beta_true.head(cfg.n_true).setConstant(cfg.beta_value);

    raw.y = raw.X * beta_true;
    for (Eigen::Index i = 0; i < n; ++i) raw.y(i) += cfg.noise_sd * normal(rng);

    raw.predictor_names.reserve(static_cast<std::size_t>(p));
    for (Eigen::Index j = 0; j < p; ++j) raw.predictor_names.push_back("x" + std::to_string(j + 1));

    Dataset data = standardize(raw);
    return {std::move(raw), std::move(data), std::move(beta_true)};
}

std::vector<double> default_simulation_grid(const SimulationConfig& cfg, int count, double ratio) {
    cfg.validate(false);
    return lambda_grid(generate_model1(cfg, 0).data, count, ratio);
}

SimulationReport run_simulation(const SimulationConfig& cfg) {
    cfg.validate();
    const int reps = cfg.replications;
    std::vector<std::vector<ReplicationRecord>> per_rep(static_cast<std::size_t>(reps));

    if (cfg.execution == Execution::Serial) {
        for (int r = 0; r < reps; ++r) per_rep[static_cast<std::size_t>(r)] = simulate_replication(cfg, r);
    } else {
        std::vector<std::exception_ptr> failures(static_cast<std::size_t>(reps));
#pragma omp parallel for schedule(dynamic, 1)
        for (int r = 0; r < reps; ++r) {
            try {
                per_rep[static_cast<std::size_t>(r)] = simulate_replication(cfg, r);
            } catch (...) {
                failures[static_cast<std::size_t>(r)] = std::current_exception();
            }
        }
        for (const auto& failure : failures)
            if (failure) std::rethrow_exception(failure);
    }

    SimulationReport report;
    report.config = cfg;
    const std::size_t L = cfg.lambdas.size();
    report.records.reserve(cfg.families.size() * L * static_cast<std::size_t>(reps));
    for (std::size_t f = 0; f < cfg.families.size(); ++f) {
        for (std::size_t l = 0; l < L; ++l) {
            CellSummary cell{cfg.families[f].family, cfg.families[f].a, cfg.lambdas[l], 0, 0, 0, 0, 0, 0, 0};
            int ok = 0;
            for (int r = 0; r < reps; ++r) {
                const ReplicationRecord& rec = per_rep[static_cast<std::size_t>(r)][f * L + l];
                report.records.push_back(rec);
                if (!rec.error.empty()) {
                    ++cell.failures;
                    continue;
                }
                ++ok;
                cell.mean_l2_error += rec.l2_error;
                cell.mean_squared_error += rec.squared_error;
                cell.mean_sparsity += static_cast<double>(rec.sparsity);
                cell.mean_fit_seconds += rec.seconds;
                cell.convergence_rate += rec.converged ? 1.0 : 0.0;
                cell.support_recovery_rate += rec.support_exact ? 1.0 : 0.0;
            }
            if (ok > 0) {
                cell.mean_l2_error /= ok;
                cell.mean_squared_error /= ok;
                cell.mean_sparsity /= ok;
                cell.mean_fit_seconds /= ok;
                cell.support_recovery_rate /= ok;
            } else {
                cell.mean_l2_error = cell.mean_squared_error = cell.mean_sparsity = std::nan("");
            }
            // Failed fits count as not converged.
            cell.convergence_rate /= reps;
            report.cells.push_back(cell);
        }
    }
    return report;
}

void clear_timings(SimulationReport& report) {
    for (auto& cell : report.cells) cell.mean_fit_seconds = 0.0;
    for (auto& rec : report.records) rec.seconds = 0.0;
}

std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
    cfg.model.validate(false);
    if (!(cfg.lambda >= 0.0)) throw std::invalid_argument("bench lambda must be >= 0");
    const int reps = cfg.model.replications;
    const std::size_t F = cfg.model.families.size();

    std::vector<std::vector<double>> seconds(F), iterations(F);
    std::vector<int> converged(F, 0);
    std::vector<std::vector<double>> traces(F);

    FitConfig fit_cfg;
    fit_cfg.tol = cfg.model.tol;
    fit_cfg.max_iters = cfg.model.max_iters;
    // Sequential on purpose: concurrent fits would share memory bandwidth and skew timings.
    for (int r = 0; r < reps; ++r) {
        const Model1Sample sample = generate_model1(cfg.model, r);
        for (std::size_t f = 0; f < F; ++f) {
            const PenaltyChoice& choice = cfg.model.families[f];
            fit_cfg.trace = cfg.trace && r == 0;
            const FitResult res = fit(sample.data, PenaltySpec(choice.family, cfg.lambda, choice.a), fit_cfg);
            seconds[f].push_back(res.wall_time);
            iterations[f].push_back(res.iterations);
            converged[f] += res.converged ? 1 : 0;
            if (fit_cfg.trace) traces[f] = res.objective_trace;
        }
    }

    std::vector<BenchRow> rows;
    for (std::size_t f = 0; f < F; ++f) {
        const Eigen::Map<const Eigen::VectorXd> s(seconds[f].data(), reps);
        const Eigen::Map<const Eigen::VectorXd> it(iterations[f].data(), reps);
        const double mean = s.mean();
        const double sd = reps > 1 ? std::sqrt((s.array() - mean).square().sum() / (reps - 1)) : 0.0;
        rows.push_back({cfg.model.families[f].family, cfg.model.families[f].a, cfg.lambda, reps, mean, sd,
                        it.mean(), static_cast<double>(converged[f]) / reps, std::move(traces[f])});
    }
    return rows;
}

} // namespace sparsepen
