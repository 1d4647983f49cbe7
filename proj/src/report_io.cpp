#include "sparsepen/report_io.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <ostream>

namespace sparsepen {

namespace {

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

Json penalty_json(const PenaltySpec& spec) {
    Json j;
    j["family"] = std::string(to_string(spec.family()));
    j["lambda"] = spec.lambda();
    if (spec.family() != Family::Lasso) j["a"] = spec.a();
    return j;
}

// CSV cells: shortest representation that round-trips.
std::string num(double v) { return fmt::format("{}", v); }

} // namespace

Json to_json(const FitResult& fit, const std::vector<std::string>& names) {
    Json j;
    j["penalty"] = penalty_json(fit.penalty);
    if (!names.empty()) j["names"] = names;
    j["beta"] = to_vector(fit.beta);
    j["beta_original"] = to_vector(fit.beta_original);
    j["intercept"] = fit.intercept;
    j["objective_trace"] = fit.objective_trace;
    j["iterations"] = fit.iterations;
    j["converged"] = fit.converged;
    j["final_max_change"] = fit.final_max_change;
    j["wall_time"] = fit.wall_time;
    return j;
}

Json to_json(const PathResult& path, const std::vector<std::string>& names) {
    Json j;
    j["lambdas"] = path.lambdas;
    if (!names.empty()) j["names"] = names;
    Json fits = Json::array();
    for (const auto& f : path.fits) fits.push_back(to_json(f));
    j["fits"] = std::move(fits);
    j["warm_started"] = path.warm_started;
    return j;
}

Json to_json(const CVReport& report) {
    Json j;
    j["lambdas"] = report.lambdas;
    j["mean_cv_error"] = report.mean_cv_error;
    j["se_cv_error"] = report.se_cv_error;
    j["best_lambda"] = report.best_lambda;
    j["fold_assignments"] = report.fold_assignments;
    return j;
}

Json to_json(const SimulationReport& report, bool include_records) {
    const SimulationConfig& c = report.config;
    Json config;
    config["n"] = c.n;
    config["p"] = c.p;
    config["n_true"] = c.n_true;
    config["beta_value"] = c.beta_value;
    config["noise_sd"] = c.noise_sd;
    config["replications"] = c.replications;
    config["seed"] = c.seed;
    config["lambdas"] = c.lambdas;
    Json fams = Json::array();
    for (const auto& f : c.families) fams.push_back({{"family", to_string(f.family)}, {"a", f.a}});
    config["families"] = std::move(fams);
    config["tol"] = c.tol;
    config["max_iters"] = c.max_iters;
    config["rho"] = c.rho;
    config["warm_start"] = c.warm_start;

    Json cells = Json::array();
    for (const auto& cell : report.cells) {
        Json j;
        j["family"] = std::string(to_string(cell.family));
        j["a"] = cell.a;
        j["lambda"] = cell.lambda;
        j["mean_l2_error"] = cell.mean_l2_error;
        j["mean_squared_error"] = cell.mean_squared_error;
        j["mean_sparsity"] = cell.mean_sparsity;
        j["mean_fit_seconds"] = cell.mean_fit_seconds;
        j["convergence_rate"] = cell.convergence_rate;
        j["support_recovery_rate"] = cell.support_recovery_rate;
        j["failures"] = cell.failures;
        cells.push_back(std::move(j));
    }

    Json out;
    out["config"] = std::move(config);
    out["cells"] = std::move(cells);
    if (include_records) {
        Json records = Json::array();
        for (const auto& rec : report.records) {
            Json j;
            j["family"] = std::string(to_string(rec.family));
            j["a"] = rec.a;
            j["lambda"] = rec.lambda;
            j["replication"] = rec.replication;
            j["l2_error"] = rec.l2_error;
            j["squared_error"] = rec.squared_error;
            j["sparsity"] = rec.sparsity;
            j["support_exact"] = rec.support_exact;
            j["seconds"] = rec.seconds;
            j["iterations"] = rec.iterations;
            j["converged"] = rec.converged;
            if (!rec.error.empty()) j["error"] = rec.error;
            records.push_back(std::move(j));
        }
        out["records"] = std::move(records);
    }
    return out;
}

Json to_json(const std::vector<BenchRow>& rows) {
    Json out = Json::array();
    for (const auto& row : rows) {
        Json j;
        j["family"] = std::string(to_string(row.family));
        j["a"] = row.a;
        j["lambda"] = row.lambda;
        j["replications"] = row.replications;
        j["mean_seconds"] = row.mean_seconds;
        j["sd_seconds"] = row.sd_seconds;
        j["mean_iterations"] = row.mean_iterations;
        j["convergence_rate"] = row.convergence_rate;
        if (!row.trace.empty()) j["objective_trace"] = row.trace;
        out.push_back(std::move(j));
    }
    return out;
}

void write_fit_csv(std::ostream& out, const FitResult& fit, const std::vector<std::string>& names) {
    fmt::print(out, "term,beta,beta_original\n");
    fmt::print(out, "(intercept),,{}\n", num(fit.intercept));
    for (Eigen::Index j = 0; j < fit.beta.size(); ++j) {
        const std::string name =
            static_cast<std::size_t>(j) < names.size() ? names[static_cast<std::size_t>(j)] : fmt::format("x{}", j + 1);
        fmt::print(out, "{},{},{}\n", name, num(fit.beta(j)), num(fit.beta_original(j)));
    }
}

void write_path_csv(std::ostream& out, const PathResult& path, const Dataset& data) {
    fmt::print(out, "lambda,nonzero,objective,iterations,converged,wall_time\n");
    for (const auto& f : path.fits) {
        fmt::print(out, "{},{},{},{},{},{}\n", num(f.penalty.lambda()), f.nonzero_count(),
                   num(objective(data, f.penalty, f.beta)), f.iterations, f.converged ? 1 : 0,
                   num(f.wall_time));
    }
}

void write_cv_csv(std::ostream& out, const CVReport& report) {
    fmt::print(out, "lambda,mean_cv_error,se_cv_error\n");
    for (std::size_t l = 0; l < report.lambdas.size(); ++l)
        fmt::print(out, "{},{},{}\n", num(report.lambdas[l]), num(report.mean_cv_error[l]),
                   num(report.se_cv_error[l]));
}

void write_simulation_csv(std::ostream& out, const SimulationReport& report) {
    fmt::print(out, "family,lambda,a,replication,l2_error,sparsity,seconds,converged\n");
    for (const auto& rec : report.records)
        fmt::print(out, "{},{},{},{},{},{},{},{}\n", to_string(rec.family), num(rec.lambda), num(rec.a),
                   rec.replication, num(rec.l2_error), rec.sparsity, num(rec.seconds),
                   rec.converged ? 1 : 0);
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
    fmt::print(out, "family,a,lambda,replications,mean_seconds,sd_seconds,mean_iterations,convergence_rate\n");
    for (const auto& row : rows)
        fmt::print(out, "{},{},{},{},{},{},{},{}\n", to_string(row.family), num(row.a), num(row.lambda),
                   row.replications, num(row.mean_seconds), num(row.sd_seconds),
                   num(row.mean_iterations), num(row.convergence_rate));
}

void write_trace_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
    fmt::print(out, "family,iteration,objective\n");
    for (const auto& row : rows)
        for (std::size_t k = 0; k < row.trace.size(); ++k)
            fmt::print(out, "{},{},{}\n", to_string(row.family), k + 1, num(row.trace[k]));
}

} // namespace sparsepen
