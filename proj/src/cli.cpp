#include "sparsepen/cli.hpp"

#include "sparsepen/errors.hpp"
#include "sparsepen/model_selection.hpp"
#include "sparsepen/parallel.hpp"
#include "sparsepen/report_io.hpp"
#include "sparsepen/simulation.hpp"
#include "sparsepen/solver.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

namespace sparsepen::cli {

namespace {

struct Options {
    // penalty
    std::optional<std::string> penalty;
    std::optional<double> lambda;
    std::optional<double> a;
    // data
    std::string data;
    std::string response;
    bool standardize_response = false;
    // grid
    int nlambda = 50;
    double lambda_ratio = 0.01;
    std::vector<double> lambdas;
    // cv
    int folds = 10;
    std::uint64_t seed = 0;
    bool global_standardize = false;
    // simulation
    long n = 200;
    long p = 1000;
    long n_true = 10;
    double beta_value = 1.0;
    double noise_sd = 1.0;
    std::optional<int> replications;
    double rho = 0.0;
    bool cold_start = false;
    bool no_timing = false;
    // solver
    double tol = 1e-6;
    int max_iters = 10000;
    // output
    std::string out;
    std::optional<std::string> format;
    bool trace = false;
};

constexpr double kBenchLambda = 0.05;

void add_penalty(CLI::App* cmd, Options& o, bool lambda) {
    cmd->add_option("--penalty", o.penalty, "lasso | scad | mcp")
        ->check(CLI::IsMember({"lasso", "scad", "mcp"}, CLI::ignore_case));
    if (lambda) cmd->add_option("--lambda", o.lambda, "penalty level")->check(CLI::NonNegativeNumber);
    cmd->add_option("--a", o.a, "concavity parameter (SCAD default 3.7, MCP default 3)");
}

void add_data(CLI::App* cmd, Options& o) {
    cmd->add_option("--data", o.data, "CSV file with a header row")->required();
    cmd->add_option("--response", o.response, "name of the response column")->required();
    cmd->add_flag("--standardize-response", o.standardize_response,
                  "scale the centered response to unit variance as well");
}

void add_grid(CLI::App* cmd, Options& o) {
    cmd->add_option("--nlambda", o.nlambda, "number of grid points")->check(CLI::Range(2, 100000));
    cmd->add_option("--lambda-ratio", o.lambda_ratio, "smallest / largest lambda")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--lambdas", o.lambdas, "explicit decreasing grid (overrides --nlambda)")
        ->delimiter(',');
}

void add_solver(CLI::App* cmd, Options& o) {
    cmd->add_option("--tol", o.tol, "max coefficient change at convergence")->check(CLI::PositiveNumber);
    cmd->add_option("--max-iters", o.max_iters, "max full coordinate cycles")->check(CLI::PositiveNumber);
}

void add_output(CLI::App* cmd, Options& o) {
    cmd->add_option("--out", o.out, "output file (default: standard output)");
    cmd->add_option("--format", o.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
}

void add_model(CLI::App* cmd, Options& o) {
    cmd->add_option("--n", o.n, "observations")->check(CLI::Range(2L, 100000000L));
    cmd->add_option("--p", o.p, "predictors")->check(CLI::Range(1L, 100000000L));
    cmd->add_option("--n-true", o.n_true, "leading nonzero coefficients")->check(CLI::NonNegativeNumber);
    cmd->add_option("--beta-value", o.beta_value, "value of each nonzero coefficient");
    cmd->add_option("--noise-sd", o.noise_sd, "noise standard deviation")->check(CLI::PositiveNumber);
    cmd->add_option("--replications", o.replications, "replications")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.seed, "random seed");
    cmd->add_option("--rho", o.rho, "AR(1) correlation of neighbouring predictors");
}

PenaltyChoice resolve_penalty(const Options& o, std::ostream& err) {
    const Family family = parse_family(o.penalty.value_or("lasso"));
    if (family == Family::Lasso) {
        if (o.a) fmt::print(err, "warning: --a is ignored for the lasso penalty\n");
        return {family, 0.0};
    }
    return {family, o.a.value_or(default_a(family))};
}

std::vector<PenaltyChoice> resolve_families(const Options& o, std::ostream& err) {
    if (!o.penalty) {
        if (o.a) throw CLI::ValidationError("--a", "requires --penalty when several families run");
        return default_penalties();
    }
    return {resolve_penalty(o, err)};
}

FitConfig fit_config(const Options& o) {
    FitConfig cfg;
    cfg.tol = o.tol;
    cfg.max_iters = o.max_iters;
    cfg.trace = o.trace;
    return cfg;
}

SimulationConfig model_config(const Options& o, std::ostream& err, int default_replications) {
    SimulationConfig cfg;
    cfg.n = o.n;
    cfg.p = o.p;
    cfg.n_true = o.n_true;
    cfg.beta_value = o.beta_value;
    cfg.noise_sd = o.noise_sd;
    cfg.replications = o.replications.value_or(default_replications);
    cfg.seed = o.seed;
    cfg.rho = o.rho;
    cfg.tol = o.tol;
    cfg.max_iters = o.max_iters;
    cfg.families = resolve_families(o, err);
    cfg.warm_start = !o.cold_start;
    return cfg;
}

void check_lambdas(const std::vector<double>& lambdas) {
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
        if (!(lambdas[k] >= 0.0)) throw CLI::ValidationError("--lambdas", "values must be >= 0");
        if (k > 0 && !(lambdas[k] < lambdas[k - 1]))
            throw CLI::ValidationError("--lambdas", "values must be strictly decreasing");
    }
}

void emit(const Options& o, std::ostream& stdout_stream, const std::function<void(std::ostream&)>& writer) {
    if (o.out.empty()) {
        writer(stdout_stream);
        stdout_stream.flush();
        return;
    }
    std::ofstream file(o.out, std::ios::binary);
    if (!file) throw DataError(fmt::format("cannot write '{}'", o.out));
    writer(file);
    if (!file) throw DataError(fmt::format("failed writing '{}'", o.out));
}

void emit_json(const Options& o, std::ostream& out, const Json& j) {
    emit(o, out, [&](std::ostream& s) { s << j.dump(2) << '\n'; });
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    apply_thread_limit();

    Options o;
    CLI::App app{"Penalized least squares (Lasso, SCAD, MCP) by coordinate descent", "sparsepen"};
    app.require_subcommand(1, 1);

    auto* fit_cmd = app.add_subcommand("fit", "fit one lambda");
    add_penalty(fit_cmd, o, true);
    fit_cmd->get_option("--lambda")->required();
    add_data(fit_cmd, o);
    add_solver(fit_cmd, o);
    add_output(fit_cmd, o);
    fit_cmd->add_flag("--trace", o.trace, "record the objective after every full cycle");

    auto* path_cmd = app.add_subcommand("path", "warm-started fits along a lambda grid");
    add_penalty(path_cmd, o, false);
    add_data(path_cmd, o);
    add_grid(path_cmd, o);
    add_solver(path_cmd, o);
    add_output(path_cmd, o);

    auto* cv_cmd = app.add_subcommand("cv", "k-fold cross-validation of lambda");
    add_penalty(cv_cmd, o, false);
    add_data(cv_cmd, o);
    add_grid(cv_cmd, o);
    add_solver(cv_cmd, o);
    add_output(cv_cmd, o);
    cv_cmd->add_option("--folds", o.folds, "number of folds")->check(CLI::Range(2, 1000000));
    cv_cmd->add_option("--seed", o.seed, "fold shuffle seed");
    cv_cmd->add_flag("--global-standardize", o.global_standardize,
                     "take predictor scales from all rows instead of each training split");

    auto* sim_cmd = app.add_subcommand("simulate", "replicated sparse-model sweep over penalty x lambda");
    add_penalty(sim_cmd, o, false);
    add_model(sim_cmd, o);
    add_grid(sim_cmd, o);
    add_solver(sim_cmd, o);
    add_output(sim_cmd, o);
    sim_cmd->add_flag("--cold-start", o.cold_start, "fit every lambda from zero instead of walking the grid");
    sim_cmd->add_flag("--no-timing", o.no_timing, "write 0 for wall-clock fields");

    auto* bench_cmd = app.add_subcommand("bench", "convergence time per penalty family");
    add_penalty(bench_cmd, o, true);
    add_model(bench_cmd, o);
    add_solver(bench_cmd, o);
    add_output(bench_cmd, o);
    bench_cmd->add_flag("--trace", o.trace, "emit replication 0 objective traces instead of the table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    try {
        if (fit_cmd->parsed()) {
            const PenaltyChoice choice = resolve_penalty(o, err);
            const PenaltySpec spec(choice.family, *o.lambda, choice.a);
            const RawTable table = load_csv(o.data, o.response);
            const Dataset data = standardize(table, {o.standardize_response});
            const FitResult result = fit(data, spec, fit_config(o));
            if (!result.converged)
                fmt::print(err, "warning: no convergence after {} cycles\n", result.iterations);
            if (o.format.value_or("json") == "csv")
                emit(o, out, [&](std::ostream& s) { write_fit_csv(s, result, data.names()); });
            else
                emit_json(o, out, to_json(result, data.names()));
        } else if (path_cmd->parsed()) {
            const PenaltyChoice choice = resolve_penalty(o, err);
            check_lambdas(o.lambdas);
            const RawTable table = load_csv(o.data, o.response);
            const Dataset data = standardize(table, {o.standardize_response});
            const std::vector<double> grid =
                o.lambdas.empty() ? lambda_grid(data, o.nlambda, o.lambda_ratio) : o.lambdas;
            const PathResult path = fit_path(data, choice.family, choice.a, grid, fit_config(o));
            if (o.format.value_or("json") == "csv")
                emit(o, out, [&](std::ostream& s) { write_path_csv(s, path, data); });
            else
                emit_json(o, out, to_json(path, data.names()));
        } else if (cv_cmd->parsed()) {
            const PenaltyChoice choice = resolve_penalty(o, err);
            check_lambdas(o.lambdas);
            const RawTable table = load_csv(o.data, o.response);
            if (o.folds > table.n())
                throw CLI::ValidationError("--folds", fmt::format("{} folds for {} rows", o.folds, table.n()));
            CVConfig cfg;
            cfg.folds = o.folds;
            cfg.seed = o.seed;
            cfg.fit = fit_config(o);
            cfg.standardize.standardize_response = o.standardize_response;
            cfg.global_standardization = o.global_standardize;
            const std::vector<double> grid =
                o.lambdas.empty() ? lambda_grid(standardize(table, cfg.standardize), o.nlambda, o.lambda_ratio)
                                  : o.lambdas;
            const CVReport report = cross_validate(table, choice.family, choice.a, grid, cfg);
            if (o.format.value_or("json") == "csv")
                emit(o, out, [&](std::ostream& s) { write_cv_csv(s, report); });
            else
                emit_json(o, out, to_json(report));
        } else if (sim_cmd->parsed()) {
            check_lambdas(o.lambdas);
            SimulationConfig cfg = model_config(o, err, 100);
            cfg.validate(false);
            cfg.lambdas = o.lambdas.empty() ? default_simulation_grid(cfg, o.nlambda, o.lambda_ratio) : o.lambdas;
            SimulationReport report = run_simulation(cfg);
            if (o.no_timing) clear_timings(report);
            if (o.format.value_or("csv") == "csv")
                emit(o, out, [&](std::ostream& s) { write_simulation_csv(s, report); });
            else
                emit_json(o, out, to_json(report));
        } else if (bench_cmd->parsed()) {
            BenchConfig cfg;
            cfg.model = model_config(o, err, 10);
            cfg.lambda = o.lambda.value_or(kBenchLambda);
            cfg.trace = o.trace;
            const std::vector<BenchRow> rows = run_bench(cfg);
            if (o.format.value_or("csv") == "csv")
                emit(o, out, [&](std::ostream& s) {
                    if (o.trace)
                        write_trace_csv(s, rows);
                    else
                        write_bench_csv(s, rows);
                });
            else
                emit_json(o, out, to_json(rows));
        }
    } catch (const CLI::ValidationError& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kUsage;
    } catch (const std::invalid_argument& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kUsage;
    } catch (const DataError& e) {
        fmt::print(err, "data error: {}\n", e.what());
        return kDataError;
    } catch (const NumericError& e) {
        fmt::print(err, "numeric error: {}\n", e.what());
        return kNumericError;
    } catch (const std::exception& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kNumericError;
    }
    return kOk;
}

} // namespace sparsepen::cli
