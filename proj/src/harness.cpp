#include "shnls/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>

#include <spdlog/spdlog.h>

#include "json.hpp"
#include "shnls/groundstate.hpp"
#include "shnls/io.hpp"
#include "shnls/kernels.hpp"
#include "toml.hpp"

namespace shnls::harness {

namespace {

std::string format_location(const std::string& source, long line, long column, const std::string& message) {
    std::ostringstream os;
    os << source;
    if (line > 0) {
        os << ":" << line;
        if (column > 0) os << ":" << column;
    }
    os << ": " << message;
    return os.str();
}

// Typed access to one TOML table with located errors and unknown-key rejection.
class TableReader {
public:
    TableReader(const toml::table& table, std::string source, std::string name)
        : table_(table), source_(std::move(source)), name_(std::move(name)) {}

    [[noreturn]] void fail(const toml::node* node, const std::string& message) const {
        const auto& src = node != nullptr ? node->source() : table_.source();
        throw ConfigError(source_, static_cast<long>(src.begin.line), static_cast<long>(src.begin.column),
                          (name_.empty() ? "" : "[" + name_ + "] ") + message);
    }

    const toml::node* find(std::string_view key) {
        seen_.insert(std::string(key));
        return table_.get(key);
    }

    double number(std::string_view key, std::optional<double> fallback = std::nullopt) {
        const toml::node* node = find(key);
        if (node == nullptr) {
            if (fallback) return *fallback;
            fail(nullptr, "missing required key '" + std::string(key) + "'");
        }
        if (auto v = node->value<double>()) return *v;
        fail(node, "'" + std::string(key) + "' must be a number");
    }

    long integer(std::string_view key, std::optional<long> fallback = std::nullopt) {
        const toml::node* node = find(key);
        if (node == nullptr) {
            if (fallback) return *fallback;
            fail(nullptr, "missing required key '" + std::string(key) + "'");
        }
        if (node->is_integer()) return static_cast<long>(*node->value<std::int64_t>());
        fail(node, "'" + std::string(key) + "' must be an integer");
    }

    bool boolean(std::string_view key, bool fallback) {
        const toml::node* node = find(key);
        if (node == nullptr) return fallback;
        if (auto v = node->value<bool>()) return *v;
        fail(node, "'" + std::string(key) + "' must be true or false");
    }

    std::string string(std::string_view key, std::optional<std::string> fallback = std::nullopt) {
        const toml::node* node = find(key);
        if (node == nullptr) {
            if (fallback) return *fallback;
            fail(nullptr, "missing required key '" + std::string(key) + "'");
        }
        if (auto v = node->value<std::string>()) return *v;
        fail(node, "'" + std::string(key) + "' must be a string");
    }

    /// A scalar broadcast to `count` entries, or an array of exactly `count` numbers.
    std::vector<double> numbers(std::string_view key, std::size_t count, std::optional<double> fallback = std::nullopt) {
        const toml::node* node = find(key);
        if (node == nullptr) {
            if (fallback) return std::vector<double>(count, *fallback);
            fail(nullptr, "missing required key '" + std::string(key) + "'");
        }
        if (auto v = node->value<double>()) return std::vector<double>(count, *v);
        const auto* arr = node->as_array();
        if (arr == nullptr || arr->size() != count) {
            fail(node, "'" + std::string(key) + "' must be a number or an array of " + std::to_string(count) + " numbers");
        }
        std::vector<double> out;
        for (const auto& el : *arr) {
            auto v = el.value<double>();
            if (!v) fail(&el, "'" + std::string(key) + "' entries must be numbers");
            out.push_back(*v);
        }
        return out;
    }

    std::vector<long> integers(std::string_view key, std::size_t count, std::optional<long> fallback = std::nullopt) {
        const toml::node* node = find(key);
        if (node == nullptr) {
            if (fallback) return std::vector<long>(count, *fallback);
            fail(nullptr, "missing required key '" + std::string(key) + "'");
        }
        if (node->is_integer()) return std::vector<long>(count, static_cast<long>(*node->value<std::int64_t>()));
        const auto* arr = node->as_array();
        if (arr == nullptr || arr->size() != count) {
            fail(node, "'" + std::string(key) + "' must be an integer or an array of " + std::to_string(count) + " integers");
        }
        std::vector<long> out;
        for (const auto& el : *arr) {
            if (!el.is_integer()) fail(&el, "'" + std::string(key) + "' entries must be integers");
            out.push_back(static_cast<long>(*el.value<std::int64_t>()));
        }
        return out;
    }

    void reject_unknown() const {
        for (const auto& [key, node] : table_) {
            if (!seen_.contains(std::string(key.str()))) fail(&node, "unknown key '" + std::string(key.str()) + "'");
        }
    }

private:
    const toml::table& table_;
    std::string source_;
    std::string name_;
    std::set<std::string> seen_;
};

toml::table parse_toml(std::string_view text, const std::string& source) {
    try {
        return toml::parse(text, source);
    } catch (const toml::parse_error& e) {
        throw ConfigError(source, static_cast<long>(e.source().begin.line), static_cast<long>(e.source().begin.column),
                          std::string(e.description()));
    }
}

const toml::table& subtable(TableReader& root, const toml::table& doc, std::string_view key, const std::string& source,
                            const toml::table& empty) {
    const toml::node* node = root.find(key);
    if (node == nullptr) return empty;
    const auto* t = node->as_table();
    if (t == nullptr) {
        throw ConfigError(source, static_cast<long>(node->source().begin.line),
                          static_cast<long>(node->source().begin.column), "'" + std::string(key) + "' must be a table");
    }
    (void)doc;
    return *t;
}

template <typename Fn>
void located(const TableReader& reader, Fn&& fn) {
    try {
        fn();
    } catch (const std::invalid_argument& e) {
        reader.fail(nullptr, e.what());
    }
}

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string alpha_label(double alpha) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "alpha_%g", alpha);
    return buf;
}

RunConfig read_run_config(const toml::table& doc, const std::string& source) {
    RunConfig cfg;
    cfg.source = source;
    const toml::table empty;
    TableReader root(doc, source, "");

    const long seed = root.integer("seed", 0);
    if (seed < 0) root.fail(root.find("seed"), "'seed' must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(seed);

    {
        const auto& t = subtable(root, doc, "grid", source, empty);
        TableReader r(t, source, "grid");
        const long dim = r.integer("dim");
        if (dim < 1 || dim > 3) r.fail(r.find("dim"), "'dim' must be 1, 2 or 3");
        const auto d = static_cast<std::size_t>(dim);
        const auto n = r.integers("n", d);
        const auto len = r.numbers("length", d);
        std::array<std::size_t, 3> nn{1, 1, 1};
        std::array<double, 3> ll{1.0, 1.0, 1.0};
        for (std::size_t i = 0; i < d; ++i) {
            if (n[i] <= 0) r.fail(r.find("n"), "'n' entries must be positive");
            nn[i] = static_cast<std::size_t>(n[i]);
            ll[i] = len[i];
        }
        located(r, [&] { cfg.grid = Grid(static_cast<int>(dim), nn, ll); });
        r.reject_unknown();
    }
    {
        const auto& t = subtable(root, doc, "equation", source, empty);
        TableReader r(t, source, "equation");
        located(r, [&] { cfg.equation.kind = parse_equation_kind(r.string("kind")); });
        cfg.equation.sigma = r.number("sigma", 1.0);
        cfg.equation.alpha = r.number("alpha", 0.0);
        located(r, [&] { cfg.equation.validate(); });
        r.reject_unknown();
    }
    {
        const auto& t = subtable(root, doc, "initial", source, empty);
        TableReader r(t, source, "initial");
        const std::string type = r.string("type");
        const int dim = cfg.grid.dim();
        if (type == "gaussian") {
            GaussianInit g;
            g.amplitude = r.number("amplitude", 1.0);
            g.width = r.number("width", 1.0);
            const auto c = r.numbers("center", static_cast<std::size_t>(dim), 0.0);
            for (int i = 0; i < dim; ++i) g.center[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)];
            cfg.initial.shape = g;
        } else if (type == "plane-wave") {
            PlaneWaveInit p;
            p.amplitude = r.number("amplitude", 1.0);
            const auto k = r.integers("k_index", static_cast<std::size_t>(dim), 0);
            for (int i = 0; i < dim; ++i) p.k_index[static_cast<std::size_t>(i)] = k[static_cast<std::size_t>(i)];
            cfg.initial.shape = p;
        } else if (type == "soliton-1d") {
            cfg.initial.shape = Soliton1dInit{r.number("eta", 1.0)};
        } else if (type == "townes") {
            cfg.initial.shape = TownesInit{r.number("power_multiple")};
        } else if (type == "file") {
            std::filesystem::path p = r.string("path");
            if (p.is_relative() && source != "<memory>") p = std::filesystem::path(source).parent_path() / p;
            cfg.initial.shape = FileInit{p};
        } else {
            r.fail(r.find("type"), "unknown initial data type '" + type +
                                       "' (expected gaussian, plane-wave, soliton-1d, townes or file)");
        }
        cfg.initial.noise_amplitude = r.number("noise_amplitude", 0.0);
        r.reject_unknown();
    }
    {
        const auto& t = subtable(root, doc, "step", source, empty);
        TableReader r(t, source, "step");
        StepControl s;
        s.t_end = r.number("t_end");
        s.dt_init = r.number("dt_init", s.dt_init);
        s.dt_min = r.number("dt_min", std::min(s.dt_min, s.dt_init));
        s.dt_max = r.number("dt_max", std::max(s.dt_max, s.dt_init));
        s.safety = r.number("safety", s.safety);
        s.max_steps = r.integer("max_steps", s.max_steps);
        s.adaptive = r.boolean("adaptive", s.adaptive);
        located(r, [&] { s.validate(); });
        cfg.step = s;
        r.reject_unknown();
    }
    {
        const auto& t = subtable(root, doc, "blowup", source, empty);
        TableReader r(t, source, "blowup");
        cfg.blowup.sup_factor = r.number("sup_factor", cfg.blowup.sup_factor);
        cfg.blowup.tail_limit = r.number("tail_limit", cfg.blowup.tail_limit);
        cfg.blowup.consecutive = static_cast<int>(r.integer("consecutive", cfg.blowup.consecutive));
        located(r, [&] { cfg.blowup.validate(); });
        r.reject_unknown();
    }
    {
        const auto& t = subtable(root, doc, "output", source, empty);
        TableReader r(t, source, "output");
        cfg.output.directory = r.string("directory", cfg.output.directory.string());
        cfg.output.diagnostics_every = r.integer("diagnostics_every", cfg.output.diagnostics_every);
        cfg.output.snapshot_every = r.integer("snapshot_every", cfg.output.snapshot_every);
        r.reject_unknown();
    }
    root.reject_unknown();
    located(root, [&] { cfg.validate(); });
    return cfg;
}

std::optional<double> drift_guard(double reference) {
    if (reference == 0.0 || !std::isfinite(reference)) return std::nullopt;
    return std::abs(reference);
}

nlohmann::ordered_json regime_json(const RegimeReport& r) {
    nlohmann::ordered_json j;
    j["label"] = to_string(r.regime);
    j["nls_critical"] = r.nls_critical;
    j["global_range"] = r.global_range;
    j["explanation"] = r.explanation;
    return j;
}

nlohmann::ordered_json summary_to_json(const RunSummary& s) {
    nlohmann::ordered_json j;
    if (!s.label.empty()) j["label"] = s.label;
    j["equation"] = {{"kind", to_string(s.equation.kind)}, {"sigma", s.equation.sigma}, {"alpha", s.equation.alpha}};
    j["termination"] = to_string(s.reason);
    j["detail"] = s.detail;
    j["t_final"] = s.t_final;
    j["steps"] = s.steps;
    j["blowup_time"] = s.blowup_time ? nlohmann::ordered_json(*s.blowup_time) : nlohmann::ordered_json(nullptr);
    j["mass_drift_rel"] = s.mass_drift_rel;
    j["hamiltonian_drift_abs"] = s.hamiltonian_drift_abs;
    j["hamiltonian_drift_rel"] = s.hamiltonian_drift_rel;
    j["peak_sup_abs"] = s.peak_sup_abs;
    j["peak_grad_sq"] = s.peak_grad_sq;
    j["regime"] = regime_json(s.regime);
    j["apriori"] = {{"max_grad_sq", s.apriori.max_grad_sq},
                    {"finite", s.apriori.finite},
                    {"last_quarter_growth", std::isfinite(s.apriori.last_quarter_growth)
                                                ? nlohmann::ordered_json(s.apriori.last_quarter_growth)
                                                : nlohmann::ordered_json("inf")},
                    {"divergence_flagged", s.apriori.divergence_flagged},
                    {"bounded", s.apriori.bounded}};
    j["records"] = s.records;
    j["snapshots"] = s.snapshots;
    return j;
}

}  // namespace

ConfigError::ConfigError(std::string source, long line, long column, const std::string& message)
    : std::runtime_error(format_location(source, line, column, message)), source_(std::move(source)), line_(line) {}

void RunConfig::validate() const {
    equation.validate();
    step.validate();
    blowup.validate();
    if (output.diagnostics_every <= 0) throw std::invalid_argument("output.diagnostics_every must be > 0");
    if (output.snapshot_every < 0) throw std::invalid_argument("output.snapshot_every must be >= 0");
    if (!(initial.noise_amplitude >= 0.0)) throw std::invalid_argument("initial.noise_amplitude must be >= 0");
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, GaussianInit>) {
                if (!(s.width > 0.0)) throw std::invalid_argument("gaussian width must be > 0");
            } else if constexpr (std::is_same_v<T, Soliton1dInit>) {
                if (grid.dim() != 1) throw std::invalid_argument("soliton-1d initial data requires dim = 1");
                if (!(s.eta > 0.0)) throw std::invalid_argument("soliton-1d eta must be > 0");
            } else if constexpr (std::is_same_v<T, TownesInit>) {
                if (!(s.power_multiple > 0.0)) throw std::invalid_argument("townes power_multiple must be > 0");
                if (grid.dim() != 2 || equation.sigma != 1.0) {
                    throw std::invalid_argument("townes initial data requires dim = 2 and sigma = 1");
                }
            } else if constexpr (std::is_same_v<T, FileInit>) {
                if (s.path.empty()) throw std::invalid_argument("file initial data needs a path");
            }
        },
        initial.shape);
}

RunConfig parse_run_config(std::string_view toml_text, const std::string& source_name) {
    return read_run_config(parse_toml(toml_text, source_name), source_name);
}

RunConfig load_run_config(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) throw ConfigError(path.string(), 0, 0, "config file not found");
    std::string text;
    try {
        text = io::read_text_file(path);
    } catch (const io::IoError& e) {
        throw ConfigError(path.string(), 0, 0, e.what());
    }
    return parse_run_config(text, path.string());
}

std::string initial_kind(const InitialShape& shape) {
    return std::visit(
        [](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, GaussianInit>) return "gaussian";
            else if constexpr (std::is_same_v<T, PlaneWaveInit>) return "plane-wave";
            else if constexpr (std::is_same_v<T, Soliton1dInit>) return "soliton-1d";
            else if constexpr (std::is_same_v<T, TownesInit>) return "townes";
            else return "file";
        },
        shape);
}

std::string to_toml(const RunConfig& c) {
    auto list = [](auto get, int dim) {
        toml::array a;
        for (int d = 0; d < dim; ++d) a.push_back(get(d));
        return a;
    };
    const int dim = c.grid.dim();
    toml::table initial{{"type", initial_kind(c.initial.shape)}, {"noise_amplitude", c.initial.noise_amplitude}};
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, GaussianInit>) {
                initial.insert("amplitude", s.amplitude);
                initial.insert("width", s.width);
                initial.insert("center", list([&](int d) { return s.center[static_cast<std::size_t>(d)]; }, dim));
            } else if constexpr (std::is_same_v<T, PlaneWaveInit>) {
                initial.insert("amplitude", s.amplitude);
                initial.insert("k_index", list([&](int d) { return static_cast<std::int64_t>(s.k_index[static_cast<std::size_t>(d)]); }, dim));
            } else if constexpr (std::is_same_v<T, Soliton1dInit>) {
                initial.insert("eta", s.eta);
            } else if constexpr (std::is_same_v<T, TownesInit>) {
                initial.insert("power_multiple", s.power_multiple);
            } else {
                initial.insert("path", s.path.string());
            }
        },
        c.initial.shape);

    toml::table doc{
        {"seed", static_cast<std::int64_t>(c.seed)},
        {"grid", toml::table{{"dim", dim},
                             {"n", list([&](int d) { return static_cast<std::int64_t>(c.grid.n(d)); }, dim)},
                             {"length", list([&](int d) { return c.grid.length(d); }, dim)}}},
        {"equation", toml::table{{"kind", to_string(c.equation.kind)}, {"sigma", c.equation.sigma}, {"alpha", c.equation.alpha}}},
        {"initial", std::move(initial)},
        {"step", toml::table{{"t_end", c.step.t_end},
                             {"dt_init", c.step.dt_init},
                             {"dt_min", c.step.dt_min},
                             {"dt_max", c.step.dt_max},
                             {"safety", c.step.safety},
                             {"max_steps", static_cast<std::int64_t>(c.step.max_steps)},
                             {"adaptive", c.step.adaptive}}},
        {"blowup", toml::table{{"sup_factor", c.blowup.sup_factor},
                               {"tail_limit", c.blowup.tail_limit},
                               {"consecutive", c.blowup.consecutive}}},
        {"output", toml::table{{"directory", c.output.directory.string()},
                               {"diagnostics_every", static_cast<std::int64_t>(c.output.diagnostics_every)},
                               {"snapshot_every", static_cast<std::int64_t>(c.output.snapshot_every)}}},
    };
    std::ostringstream os;
    os << doc << "\n";
    return os.str();
}

ComplexField build_initial(const RunConfig& config) {
    config.validate();
    const Grid& grid = config.grid;
    ComplexField v(grid);
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, GaussianInit>) {
                for (std::size_t i = 0; i < v.size(); ++i) {
                    const auto idx = grid.unflatten(i);
                    double r2 = 0.0;
                    for (int d = 0; d < grid.dim(); ++d) {
                        const auto ud = static_cast<std::size_t>(d);
                        const double x = grid.coordinate(d, idx[ud]) - s.center[ud];
                        r2 += x * x;
                    }
                    v.values[i] = s.amplitude * std::exp(-r2 / (2.0 * s.width * s.width));
                }
            } else if constexpr (std::is_same_v<T, PlaneWaveInit>) {
                for (std::size_t i = 0; i < v.size(); ++i) {
                    const auto idx = grid.unflatten(i);
                    double phase = 0.0;
                    for (int d = 0; d < grid.dim(); ++d) {
                        const auto ud = static_cast<std::size_t>(d);
                        const double k = 2.0 * std::numbers::pi * static_cast<double>(s.k_index[ud]) / grid.length(d);
                        phase += k * grid.coordinate(d, idx[ud]);
                    }
                    v.values[i] = s.amplitude * Complex(std::cos(phase), std::sin(phase));
                }
            } else if constexpr (std::is_same_v<T, Soliton1dInit>) {
                const double sigma = config.equation.sigma;
                const double peak = std::pow(s.eta * s.eta * (sigma + 1.0), 1.0 / (2.0 * sigma));
                for (std::size_t i = 0; i < v.size(); ++i) {
                    const double x = grid.coordinate(0, i);
                    v.values[i] = peak * std::pow(1.0 / std::cosh(sigma * s.eta * x), 1.0 / sigma);
                }
            } else if constexpr (std::is_same_v<T, TownesInit>) {
                const auto& profile = groundstate::townes_profile();
                v = groundstate::deposit(profile, grid, 1.0, 1.0);
                const double discrete = mass(v);
                kernels::scale(v.values, std::sqrt(s.power_multiple * profile.power / discrete));
            } else {
                io::SnapshotMeta meta;
                v = io::read_snapshot(s.path, &meta);
                if (!(meta.grid == grid)) {
                    throw std::invalid_argument("initial file " + s.path.string() + " holds a " + meta.grid.describe() +
                                                ", config expects " + grid.describe());
                }
            }
        },
        config.initial.shape);

    if (config.initial.noise_amplitude > 0.0) {
        std::mt19937_64 rng(config.seed);
        std::uniform_real_distribution<double> xi(-1.0, 1.0);
        for (auto& z : v.values) {
            const double re = xi(rng);
            const double im = xi(rng);
            z *= Complex(1.0 + config.initial.noise_amplitude * re, config.initial.noise_amplitude * im);
        }
    }
    v.require_finite("build_initial");
    return v;
}

RunSummary summarize(const RunConfig& config, const RunResult& result, std::string label) {
    RunSummary s;
    s.label = std::move(label);
    s.equation = config.equation;
    s.reason = result.reason;
    s.detail = result.detail;
    s.t_final = result.t_final;
    s.steps = result.steps;
    s.blowup_time = result.blowup_time;
    s.records = result.series.size();
    s.regime = validate_regime(config.equation, config.grid.dim());
    s.apriori = apriori_tracker(config.equation, config.grid.dim(), result.series);
    if (!result.series.empty()) {
        const auto& first = result.series.front();
        double dm = 0.0;
        double dh = 0.0;
        for (const auto& r : result.series) {
            dm = std::max(dm, std::abs(r.mass - first.mass));
            dh = std::max(dh, std::abs(r.hamiltonian - first.hamiltonian));
            s.peak_sup_abs = std::max(s.peak_sup_abs, r.sup_abs);
            s.peak_grad_sq = std::max(s.peak_grad_sq, r.grad_sq);
        }
        s.mass_drift_rel = drift_guard(first.mass) ? dm / *drift_guard(first.mass) : dm;
        s.hamiltonian_drift_abs = dh;
        s.hamiltonian_drift_rel = drift_guard(first.hamiltonian) ? dh / *drift_guard(first.hamiltonian) : dh;
    }
    return s;
}

std::string summary_json(const RunSummary& summary) { return summary_to_json(summary).dump(2) + "\n"; }

RunOutcome execute(const RunConfig& config, const ExecuteOptions& options) {
    config.validate();
    RunOutcome outcome;
    outcome.directory = config.output.directory;
    const auto snap_dir = outcome.directory / "snapshots";
    io::ensure_directory(snap_dir);
    io::write_text_file(outcome.directory / "config.resolved.toml", to_toml(config));

    ComplexField v0 = options.initial != nullptr ? *options.initial : build_initial(config);
    if (!(v0.grid == config.grid)) throw std::invalid_argument("execute: initial field grid does not match config");

    std::size_t snapshot_index = 0;
    RunSettings settings;
    settings.control = config.step;
    settings.policy = config.blowup;
    settings.diagnostics_every = config.output.diagnostics_every;
    settings.observers.push_back(Observer{config.output.snapshot_every, [&](const Observation& obs) {
                                              char name[32];
                                              std::snprintf(name, sizeof name, "t_%05zu.bin", snapshot_index++);
                                              io::write_snapshot(snap_dir / name, obs.field, obs.t, obs.step);
                                          }});

    spdlog::debug("run {}: {} on {}", options.label.empty() ? outcome.directory.string() : options.label,
                  config.equation.describe(), config.grid.describe());
    outcome.result = run(config.equation, v0, settings);
    outcome.summary = summarize(config, outcome.result, options.label);
    outcome.summary.snapshots = snapshot_index;

    std::ostringstream csv;
    write_csv_header(csv);
    for (const auto& r : outcome.result.series) write_csv_row(csv, r);
    io::write_text_file(outcome.directory / "diagnostics.csv", csv.str());
    io::write_text_file(outcome.directory / "summary.json", summary_json(outcome.summary));
    return outcome;
}

void SweepConfig::validate() const {
    if (alphas.empty()) throw std::invalid_argument("sweep: alphas must not be empty");
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        if (!(alphas[i] > 0.0)) throw std::invalid_argument("sweep: every alpha must be > 0");
        if (i > 0 && !(alphas[i] < alphas[i - 1])) throw std::invalid_argument("sweep: alphas must be strictly decreasing");
    }
    if (base.equation.kind == EquationKind::NLS) throw std::invalid_argument("sweep: base equation must be SH or SN");
}

SweepConfig parse_sweep_config(std::string_view toml_text, const std::string& source_name) {
    const toml::table doc = parse_toml(toml_text, source_name);
    TableReader root(doc, source_name, "");
    SweepConfig sweep;
    sweep.source = source_name;
    std::filesystem::path base = root.string("base");
    if (base.is_relative() && source_name != "<memory>") base = std::filesystem::path(source_name).parent_path() / base;

    const toml::node* alphas = root.find("alphas");
    if (alphas == nullptr || !alphas->is_array()) root.fail(alphas, "'alphas' must be an array of numbers");
    for (const auto& el : *alphas->as_array()) {
        auto v = el.value<double>();
        if (!v) root.fail(&el, "'alphas' entries must be numbers");
        sweep.alphas.push_back(*v);
    }
    sweep.include_nls_baseline = root.boolean("include_nls_baseline", false);
    const toml::table empty;
    {
        const auto& t = subtable(root, doc, "output", source_name, empty);
        TableReader r(t, source_name, "output");
        sweep.directory = r.string("directory", sweep.directory.string());
        r.reject_unknown();
    }
    root.reject_unknown();
    sweep.base = load_run_config(base);
    located(root, [&] { sweep.validate(); });
    return sweep;
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) throw ConfigError(path.string(), 0, 0, "sweep file not found");
    return parse_sweep_config(io::read_text_file(path), path.string());
}

SweepReport alpha_sweep(const SweepConfig& sweep) {
    sweep.validate();
    SweepReport report;
    report.directory = sweep.directory;
    io::ensure_directory(sweep.directory);

    const ComplexField v0 = build_initial(sweep.base);

    auto run_one = [&](RunConfig cfg, const std::string& label) {
        SweepEntry entry;
        entry.label = label;
        entry.kind = cfg.equation.kind;
        entry.alpha = cfg.equation.alpha;
        cfg.output.directory = sweep.directory / label;
        try {
            ExecuteOptions opts;
            opts.initial = &v0;
            opts.label = label;
            entry.summary = execute(cfg, opts).summary;
            spdlog::info("{}: {} at t={:.6g}", label, to_string(entry.summary->reason), entry.summary->t_final);
        } catch (const std::exception& e) {
            entry.failed = true;
            entry.error = e.what();
            spdlog::error("{}: failed: {}", label, e.what());
        }
        report.entries.push_back(std::move(entry));
    };

    for (double alpha : sweep.alphas) {
        RunConfig cfg = sweep.base;
        cfg.equation.alpha = alpha;
        run_one(cfg, alpha_label(alpha));
    }
    if (sweep.include_nls_baseline) {
        RunConfig cfg = sweep.base;
        cfg.equation.kind = EquationKind::NLS;
        cfg.equation.alpha = 0.0;
        run_one(cfg, "nls_baseline");
    }

    double previous_peak = -1.0;
    for (const auto& e : report.entries) {
        if (e.kind == EquationKind::NLS) continue;
        if (e.failed || !e.summary) {
            report.all_regularized_completed = false;
            continue;
        }
        if (e.summary->reason != Termination::Completed) report.all_regularized_completed = false;
        if (e.summary->peak_sup_abs < previous_peak) report.peak_sup_nondecreasing = false;
        previous_peak = e.summary->peak_sup_abs;
    }

    io::write_text_file(sweep.directory / "sweep_report.json", sweep_report_json(report));
    io::write_text_file(sweep.directory / "sweep_report.csv", sweep_report_csv(report));
    return report;
}

std::string sweep_report_json(const SweepReport& report) {
    nlohmann::ordered_json j;
    j["runs"] = nlohmann::ordered_json::array();
    for (const auto& e : report.entries) {
        nlohmann::ordered_json r;
        r["label"] = e.label;
        r["kind"] = to_string(e.kind);
        r["alpha"] = e.alpha;
        r["status"] = e.failed ? "failed" : "ok";
        if (e.failed) r["error"] = e.error;
        if (e.summary) r["summary"] = summary_to_json(*e.summary);
        j["runs"].push_back(std::move(r));
    }
    j["peak_sup_nondecreasing_as_alpha_decreases"] = report.peak_sup_nondecreasing;
    j["all_regularized_runs_completed"] = report.all_regularized_completed;
    return j.dump(2) + "\n";
}

std::string sweep_report_csv(const SweepReport& report) {
    std::ostringstream os;
    os << "label,kind,alpha,status,termination,t_final,peak_sup_abs,peak_grad_sq,blowup_time,mass_drift_rel\n";
    for (const auto& e : report.entries) {
        os << e.label << ',' << to_string(e.kind) << ',' << fmt_double(e.alpha) << ',' << (e.failed ? "failed" : "ok");
        if (e.summary) {
            const auto& s = *e.summary;
            os << ',' << to_string(s.reason) << ',' << fmt_double(s.t_final) << ',' << fmt_double(s.peak_sup_abs) << ','
               << fmt_double(s.peak_grad_sq) << ',' << (s.blowup_time ? fmt_double(*s.blowup_time) : "") << ','
               << fmt_double(s.mass_drift_rel);
        } else {
            os << ",,,,,,";
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace shnls::harness
