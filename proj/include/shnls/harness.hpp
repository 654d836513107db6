#pragma once

// Run orchestration: TOML configs, initial data, execution with persisted outputs, and
// alpha-continuation sweeps.
//
// Per-run output tree:
//   config.resolved.toml  diagnostics.csv  summary.json  snapshots/t_<index>.bin + .json
// A sweep adds sweep_report.json and sweep_report.csv next to one directory per run.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "shnls/diagnostics.hpp"
#include "shnls/grid.hpp"
#include "shnls/stepper.hpp"
#include "shnls/system.hpp"

namespace shnls::harness {

/// Invalid or unreadable configuration. what() is "<file>:<line>:<column>: <message>" when the
/// location is known.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string source, long line, long column, const std::string& message);
    const std::string& source() const { return source_; }
    long line() const { return line_; }

private:
    std::string source_;
    long line_ = 0;
};

struct GaussianInit {
    double amplitude = 1.0;
    double width = 1.0;
    std::array<double, 3> center{0.0, 0.0, 0.0};
};

struct PlaneWaveInit {
    double amplitude = 1.0;
    /// Integer mode numbers m_d; k_d = 2 pi m_d / L_d.
    std::array<long, 3> k_index{0, 0, 0};
};

/// eta * sqrt(2) sech(eta x) for sigma = 1; the general-sigma 1D NLS soliton otherwise.
struct Soliton1dInit {
    double eta = 1.0;
};

/// Ground state rescaled in amplitude to power_multiple times the critical power.
struct TownesInit {
    double power_multiple = 1.0;
};

struct FileInit {
    std::filesystem::path path;
};

using InitialShape = std::variant<GaussianInit, PlaneWaveInit, Soliton1dInit, TownesInit, FileInit>;

struct InitialData {
    InitialShape shape = GaussianInit{};
    /// Multiplicative noise v *= 1 + a (xi_re + i xi_im), xi uniform in [-1, 1]; 0 disables it.
    double noise_amplitude = 0.0;
};

struct OutputSpec {
    std::filesystem::path directory = "shnls_out";
    long diagnostics_every = 10;
    /// Snapshot cadence in steps; 0 writes only the initial and final states.
    long snapshot_every = 0;
};

struct RunConfig {
    Grid grid;
    EquationSpec equation;
    InitialData initial;
    StepControl step;
    BlowupPolicy blowup;
    OutputSpec output;
    std::uint64_t seed = 0;
    /// Where the config came from; relative file paths in [initial] resolve against it.
    std::string source = "<memory>";

    void validate() const;
};

RunConfig parse_run_config(std::string_view toml_text, const std::string& source_name);
RunConfig load_run_config(const std::filesystem::path& path);
/// TOML that parses back to the same config.
std::string to_toml(const RunConfig& config);

/// Deterministic for a given config and seed.
ComplexField build_initial(const RunConfig& config);

std::string initial_kind(const InitialShape& shape);

struct RunSummary {
    std::string label;
    EquationSpec equation;
    Termination reason = Termination::Completed;
    std::string detail;
    double t_final = 0.0;
    long steps = 0;
    std::optional<double> blowup_time;
    /// max_i |N_i - N_0| / N_0 over the diagnostics series (0 for a zero field).
    double mass_drift_rel = 0.0;
    double hamiltonian_drift_abs = 0.0;
    double hamiltonian_drift_rel = 0.0;
    double peak_sup_abs = 0.0;
    double peak_grad_sq = 0.0;
    RegimeReport regime;
    AprioriReport apriori;
    std::size_t records = 0;
    std::size_t snapshots = 0;
};

std::string summary_json(const RunSummary& summary);
RunSummary summarize(const RunConfig& config, const RunResult& result, std::string label = "");

struct ExecuteOptions {
    /// Use this field instead of build_initial (sweeps share one field bit for bit).
    const ComplexField* initial = nullptr;
    std::string label;
};

struct RunOutcome {
    RunResult result;
    RunSummary summary;
    std::filesystem::path directory;
};

/// Runs the config and writes the output tree into config.output.directory.
/// I/O problems raise io::IoError; numerical terminations are reported in the summary.
RunOutcome execute(const RunConfig& config, const ExecuteOptions& options = {});

struct SweepConfig {
    RunConfig base;
    /// Strictly decreasing, all > 0.
    std::vector<double> alphas;
    bool include_nls_baseline = false;
    std::filesystem::path directory = "shnls_sweep";
    std::string source = "<memory>";

    void validate() const;
};

/// Sweep file: `base = "<run config>"` (relative to the sweep file), `alphas = [...]`,
/// optional `include_nls_baseline` and `[output] directory`.
SweepConfig parse_sweep_config(std::string_view toml_text, const std::string& source_name);
SweepConfig load_sweep_config(const std::filesystem::path& path);

struct SweepEntry {
    std::string label;
    EquationKind kind = EquationKind::SH;
    double alpha = 0.0;
    bool failed = false;
    std::string error;
    std::optional<RunSummary> summary;
};

struct SweepReport {
    std::vector<SweepEntry> entries;
    /// Peak sup|v| never decreases as alpha decreases (over the successful SH runs).
    bool peak_sup_nondecreasing = true;
    /// Every SH run completed to t_end.
    bool all_regularized_completed = true;
    std::filesystem::path directory;
};

/// Runs every alpha (plus the NLS baseline when requested) from one shared initial field.
/// A failing run is recorded and the sweep continues.
SweepReport alpha_sweep(const SweepConfig& sweep);

std::string sweep_report_json(const SweepReport& report);
std::string sweep_report_csv(const SweepReport& report);

}  // namespace shnls::harness
