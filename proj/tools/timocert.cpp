// Command-line front end: certify, optimize, simulate and verify subcommands
// over a single JSON configuration.
//
// Exit codes: 0 success, 1 usage/config/validation error, 2 infeasible
// certificate or violated bound.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include "timo/certificate.hpp"
#include "timo/config.hpp"
#include "timo/discretize.hpp"
#include "timo/json_io.hpp"
#include "timo/simulate.hpp"
#include "timo/weight_search.hpp"

namespace {

enum class LogLevel { Quiet = 0, Info = 1, Debug = 2 };

LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("TIMO_LOG");
        if (!env) return LogLevel::Info;
        const std::string value(env);
        if (value == "quiet") return LogLevel::Quiet;
        if (value == "debug") return LogLevel::Debug;
        return LogLevel::Info;
    }();
    return level;
}

template <typename... Args>
void info(const char* fmt, Args... args) {
    if (log_level() >= LogLevel::Info) std::printf(fmt, args...);
}

template <typename... Args>
void debug(const char* fmt, Args... args) {
    if (log_level() >= LogLevel::Debug) std::fprintf(stderr, fmt, args...);
}

struct CliOptions {
    std::string config_path;
    std::string out_dir;  // overrides config.output.directory when nonempty
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> grid;
    std::string dump_path;  // overrides config.output.dump_system when nonempty
};

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc) {
    write_text_file(path, doc.dump(2) + "\n");
}

std::filesystem::path prepare_out_dir(const timo::RunConfig& config,
                                      const CliOptions& options) {
    const std::filesystem::path dir =
        options.out_dir.empty() ? config.output.directory : options.out_dir;
    std::filesystem::create_directories(dir);
    return dir;
}

void print_certificate(const timo::Certificate& cert) {
    info("certificate (gate: %s, essinf grid: %zu)\n",
         cert.gate == timo::DecayGate::Strict ? "strict" : "relaxed", cert.grid_points);
    info("  k1          = %.6g\n", cert.k1);
    info("  k2          = %.6g\n", cert.k2);
    info("  kappa1      = %.6g\n", cert.kappa1);
    info("  eta         = %.6g\n", cert.eta);
    info("  essinf c1   = %+.6g%s\n", cert.c_essinf[0],
         cert.c_essinf[0] <= 0.0 ? "  (nonpositive: excluded by the relaxed gate)" : "");
    for (int i = 1; i < 6; ++i) info("  essinf c%d   = %+.6g\n", i + 1, cert.c_essinf[i]);
    info("  beta        = %.6g (min essinf c1..c4)\n", cert.beta);
    info("  beta_prime  = %.6g (min essinf c2..c4)\n", cert.beta_prime);
    info("  kappa2      = %.6g (strict %.6g, relaxed %.6g)\n", cert.kappa2(),
         cert.kappa2_strict, cert.kappa2_prime);
    info("  feasible    = %s (strict %s, relaxed %s)\n", cert.feasible() ? "yes" : "no",
         cert.feasible_strict ? "yes" : "no", cert.feasible_prime ? "yes" : "no");
}

int require_valid_beam(const timo::RunConfig& config) {
    const timo::ValidationReport report = timo::validate(config.beam);
    if (report.valid) {
        debug("beam valid, min positivity margin %.6g\n", report.min_margin);
        return kExitOk;
    }
    std::fprintf(stderr, "error: beam parameters failed validation\n");
    for (const auto& issue : report.issues) {
        std::fprintf(stderr, "  %s: %s\n", issue.field.c_str(), issue.message.c_str());
    }
    return kExitUsage;
}

int cmd_certify(const timo::RunConfig& config, const CliOptions& options) {
    if (const int rc = require_valid_beam(config); rc != kExitOk) return rc;
    if (!config.weights) {
        std::fprintf(stderr, "error: `certify` needs the \"weights\" key in the config\n");
        return kExitUsage;
    }
    timo::CertifyOptions opts;
    if (options.grid) opts.grid_points = *options.grid;
    const timo::Certificate cert = timo::certify(*config.weights, config.beam, opts);
    print_certificate(cert);
    const auto dir = prepare_out_dir(config, options);
    write_json_file(dir / "certificate.json", timo::certificate_to_json(cert));
    info("wrote %s\n", (dir / "certificate.json").string().c_str());
    return cert.feasible() ? kExitOk : kExitInfeasible;
}

timo::SearchConfig build_search_config(const timo::RunConfig& config,
                                       const CliOptions& options) {
    timo::SearchConfig search = config.search.value_or(timo::SearchConfig{});
    if (!search.initial && config.weights) search.initial = config.weights;
    if (options.seed) search.seed = *options.seed;
    if (options.grid) search.grid_points = *options.grid;
    return search;
}

int cmd_optimize(const timo::RunConfig& config, const CliOptions& options) {
    if (const int rc = require_valid_beam(config); rc != kExitOk) return rc;
    const timo::SearchConfig search = build_search_config(config, options);
    timo::SearchResult result;
    try {
        result = timo::maximize_kappa2(config.beam, search);
    } catch (const timo::FeasibilityNotFound& err) {
        std::fprintf(stderr, "infeasible: %s\n", err.what());
        return kExitInfeasible;
    }
    info("optimize: kappa2 %.6g -> %.6g after %zu iterations\n", result.kappa2_seed,
         result.certificate.kappa2(),
         result.trace.empty() ? std::size_t{0} : result.trace.back().iteration);
    info("  weights: n0=%.15g n1=%.15g n2=%.15g alpha1=%.15g alpha2=%.15g alpha3=%.15g\n",
         result.weights.n0, result.weights.n1, result.weights.n2, result.weights.alpha1,
         result.weights.alpha2, result.weights.alpha3);
    print_certificate(result.certificate);

    const auto dir = prepare_out_dir(config, options);
    nlohmann::json doc = timo::certificate_to_json(result.certificate);
    doc["weights"] = {{"n0", result.weights.n0},         {"n1", result.weights.n1},
                      {"n2", result.weights.n2},         {"alpha1", result.weights.alpha1},
                      {"alpha2", result.weights.alpha2}, {"alpha3", result.weights.alpha3}};
    write_json_file(dir / "certificate.json", doc);
    std::ofstream trace(dir / "search_trace.csv", std::ios::binary);
    timo::write_trace_csv(trace, result.trace);
    info("wrote %s and %s\n", (dir / "certificate.json").string().c_str(),
         (dir / "search_trace.csv").string().c_str());
    return kExitOk;
}

int run_simulation(const timo::RunConfig& config, const CliOptions& options) {
    if (const int rc = require_valid_beam(config); rc != kExitOk) return rc;
    if (config.weights.has_value() == config.search.has_value()) {
        std::fprintf(stderr,
                     "error: exactly one of \"weights\" or \"search\" must be present for "
                     "bound checking\n");
        return kExitUsage;
    }

    timo::LyapunovWeights weights{};
    timo::Certificate cert;
    timo::CertifyOptions opts;
    if (options.grid) opts.grid_points = *options.grid;
    if (config.weights) {
        weights = *config.weights;
        cert = timo::certify(weights, config.beam, opts);
    } else {
        try {
            const timo::SearchResult result =
                timo::maximize_kappa2(config.beam, build_search_config(config, options));
            weights = result.weights;
            cert = result.certificate;
        } catch (const timo::FeasibilityNotFound& err) {
            std::fprintf(stderr, "infeasible: %s\n", err.what());
            return kExitInfeasible;
        }
    }
    print_certificate(cert);
    const auto dir = prepare_out_dir(config, options);
    write_json_file(dir / "certificate.json", timo::certificate_to_json(cert));
    if (!cert.feasible()) {
        std::fprintf(stderr, "infeasible certificate; not simulating\n");
        return kExitInfeasible;
    }

    const timo::DiscreteSystem sys =
        timo::build_system(config.beam, config.discretization.n_elements);
    debug("system: %zu states, dxi=%.6g\n", sys.dim(), sys.delta_xi);
    if (!options.dump_path.empty() || config.output.dump_system) {
        const std::filesystem::path path = options.dump_path.empty()
                                               ? dir / "system.txt"
                                               : std::filesystem::path(options.dump_path);
        std::ofstream out(path, std::ios::binary);
        timo::dump_system(sys, out);
        info("wrote %s\n", path.string().c_str());
    }

    const Eigen::VectorXd z0 = timo::sample_initial_condition(config.initial_condition, sys);
    timo::Trajectory traj =
        timo::integrate(sys, z0, config.discretization.dt, config.discretization.t_end);
    timo::annotate_lyapunov(traj, sys, config.beam, weights);
    const timo::BoundReport report = timo::check_bound(traj, cert);

    info("simulation: %zu samples, dt=%.6g, t_end=%.6g\n", traj.times.size(),
         config.discretization.dt, config.discretization.t_end);
    info("bound check: %s, max norm/bound ratio %.6g at t=%.6g\n",
         report.passed ? "PASS" : "FAIL", report.max_ratio, report.time_of_max_ratio);
    info("decay: empirical tail rate %.6g vs certified kappa2/2 = %.6g\n",
         report.empirical_tail_rate, report.certified_half_rate);

    std::ofstream csv(dir / "trajectory.csv", std::ios::binary);
    timo::write_trajectory_csv(csv, traj);
    write_json_file(dir / "bound_report.json", timo::bound_report_to_json(report));
    info("wrote %s and %s\n", (dir / "trajectory.csv").string().c_str(),
         (dir / "bound_report.json").string().c_str());
    return report.passed ? kExitOk : kExitInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lyapunov decay certificates for viscously damped shear beams"};
    app.require_subcommand(1);

    CliOptions options;
    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", options.config_path, "JSON configuration file")
            ->required();
        cmd->add_option("--out", options.out_dir, "output directory (overrides config)");
        cmd->add_option("--seed", options.seed, "search seed (overrides config)");
        cmd->add_option("--grid", options.grid, "dense grid size for essential infima");
        cmd->add_option("--dump-system", options.dump_path, "write J, R, Q to this path");
    };

    CLI::App* certify = app.add_subcommand("certify", "compute a decay certificate");
    CLI::App* optimize = app.add_subcommand("optimize", "search weights maximizing kappa2");
    CLI::App* simulate = app.add_subcommand("simulate", "integrate and check the bound");
    CLI::App* verify =
        app.add_subcommand("verify", "certify + simulate + bound check in one pass");
    for (CLI::App* cmd : {certify, optimize, simulate, verify}) add_common(cmd);

    CLI11_PARSE(app, argc, argv);

    std::optional<timo::RunConfig> config;
    try {
        config = timo::RunConfig::from_file(options.config_path);
    } catch (const std::exception& err) {
        std::fprintf(stderr, "config error: %s\n", err.what());
        return kExitUsage;
    }

    try {
        if (certify->parsed()) return cmd_certify(*config, options);
        if (optimize->parsed()) return cmd_optimize(*config, options);
        if (simulate->parsed()) return run_simulation(*config, options);
        if (verify->parsed()) return run_simulation(*config, options);
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return kExitUsage;
    }
    return kExitUsage;
}
