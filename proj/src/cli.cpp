#include "shnls/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "shnls/groundstate.hpp"
#include "shnls/harness.hpp"
#include "shnls/io.hpp"
#include "shnls/threads.hpp"
#include "shnls/validation.hpp"

namespace shnls::cli {

namespace {

void setup_logging(bool quiet, bool verbose) {
    static auto logger = spdlog::stderr_color_mt("shnls");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    spdlog::set_level(quiet ? spdlog::level::warn : verbose ? spdlog::level::debug : spdlog::level::info);
}

int do_run(const std::string& config_path, const std::string& out) {
    auto config = harness::load_run_config(config_path);
    if (!out.empty()) config.output.directory = out;
    spdlog::info("{}: {} on {}, initial data {}", config_path, config.equation.describe(), config.grid.describe(),
                 harness::initial_kind(config.initial.shape));
    const auto outcome = harness::execute(config);
    const auto& s = outcome.summary;
    std::printf("%s: %s t=%.6g steps=%ld mass_drift=%.3e regime=%s\n", outcome.directory.string().c_str(),
                to_string(s.reason).c_str(), s.t_final, s.steps, s.mass_drift_rel, to_string(s.regime.regime).c_str());
    return kExitOk;
}

int do_sweep(const std::string& config_path, const std::string& out) {
    auto sweep = harness::load_sweep_config(config_path);
    if (!out.empty()) sweep.directory = out;
    const auto report = harness::alpha_sweep(sweep);
    std::size_t failed = 0;
    for (const auto& e : report.entries) failed += e.failed ? 1 : 0;
    std::printf("%s: %zu runs, %zu failed, peak_sup_nondecreasing=%s, all_regularized_completed=%s\n",
                report.directory.string().c_str(), report.entries.size(), failed,
                report.peak_sup_nondecreasing ? "true" : "false", report.all_regularized_completed ? "true" : "false");
    return kExitOk;
}

struct TownesArgs {
    double sigma = 1.0;
    int dim = 2;
    std::pair<double, double> bracket{0.5, 8.0};
    double tol = 1e-12;
    double r_max = 25.0;
    std::string out;
};

int do_townes(const TownesArgs& a) {
    groundstate::ShootingOptions opts;
    opts.r_max = a.r_max;
    const auto profile = groundstate::solve_ground_state(a.sigma, a.dim, a.bracket, a.tol, opts);
    std::printf("R0 = %.10f\npower = %.8f\n", profile.R0, profile.power);
    if (!a.out.empty()) {
        const std::filesystem::path dir = a.out;
        io::ensure_directory(dir);
        std::ofstream csv(dir / "ground_state.csv");
        if (!csv) throw io::IoError(dir / "ground_state.csv", "cannot open for writing");
        groundstate::write_profile_csv(csv, profile);
        if (!csv) throw io::IoError(dir / "ground_state.csv", "write failed");
        io::write_text_file(dir / "ground_state.json", groundstate::profile_sidecar_json(profile));
        spdlog::info("profile written to {}", (dir / "ground_state.csv").string());
    }
    return kExitOk;
}

int do_validate(const std::string& suite) {
    const auto checks = validation::run_suite(suite);
    bool ok = true;
    for (const auto& c : checks) {
        std::printf("%s\n", validation::format_line(c).c_str());
        ok = ok && c.passed;
    }
    std::printf("%s: %zu checks, %s\n", suite.c_str(), checks.size(), ok ? "all passed" : "FAILURES");
    return ok ? kExitOk : kExitValidationFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Regularized nonlinear Schroedinger solver (NLS / SH / SN)", "shnls"};
    app.require_subcommand(1);
    app.fallthrough();
    bool quiet = false;
    bool verbose = false;
    app.add_flag("-q,--quiet", quiet, "Only print the summary line and errors");
    app.add_flag("-v,--verbose", verbose, "Debug logging");

    std::string run_config;
    std::string run_out;
    auto* run = app.add_subcommand("run", "Execute one run config");
    run->add_option("config", run_config, "Run config (TOML)")->required();
    run->add_option("--out", run_out, "Output directory (overrides [output] directory)");

    std::string sweep_config;
    std::string sweep_out;
    auto* sweep = app.add_subcommand("sweep", "Execute an alpha sweep");
    sweep->add_option("config", sweep_config, "Sweep config (TOML)")->required();
    sweep->add_option("--out", sweep_out, "Sweep output directory");

    TownesArgs townes_args;
    auto* townes = app.add_subcommand("townes", "Solve for a radial ground state by shooting");
    townes->add_option("--sigma", townes_args.sigma, "Nonlinearity exponent")->capture_default_str();
    townes->add_option("--dim", townes_args.dim, "Spatial dimension")->check(CLI::Range(1, 3))->capture_default_str();
    townes->add_option("--bracket", townes_args.bracket, "Initial R(0) bracket: lo hi")->capture_default_str();
    townes->add_option("--tol", townes_args.tol, "Bisection tolerance on R(0)")->capture_default_str();
    townes->add_option("--r-max", townes_args.r_max, "Integration radius")->capture_default_str();
    townes->add_option("--out", townes_args.out, "Directory for ground_state.csv and .json");

    std::string suite = "all";
    auto* validate = app.add_subcommand("validate", "Run built-in self-checks");
    validate->add_option("--suite", suite, "Suite to run")
        ->check(CLI::IsMember(validation::suite_names()))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    setup_logging(quiet, verbose);
    configure_threads_from_env();

    try {
        if (*run) return do_run(run_config, run_out);
        if (*sweep) return do_sweep(sweep_config, sweep_out);
        if (*townes) return do_townes(townes_args);
        if (*validate) return do_validate(suite);
    } catch (const harness::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const io::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    }
    return kExitUsage;
}

}  // namespace shnls::cli
