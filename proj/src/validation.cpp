#include "shnls/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "shnls/diagnostics.hpp"
#include "shnls/spectral.hpp"
#include "shnls/stepper.hpp"
#include "shnls/system.hpp"

namespace shnls::validation {

namespace {

CheckResult check(const std::string& suite, const std::string& name, double value, double tol, std::string detail = "") {
    return CheckResult{suite, name, std::isfinite(value) && value <= tol, value, tol, std::move(detail)};
}

ComplexField sech_soliton(const Grid& g, double eta) {
    ComplexField v(g);
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = std::sqrt(2.0) * eta / std::cosh(eta * g.coordinate(0, i));
    }
    return v;
}

ComplexField gaussian(const Grid& g, double amplitude, double width) {
    ComplexField v(g);
    const auto r2 = g.radius_sq_table();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = amplitude * std::exp(-r2[i] / (2.0 * width * width));
    return v;
}

double relative_mass_drift(const EquationSpec& spec, ComplexField v, double dt, int steps) {
    const double m0 = mass(v);
    double worst = 0.0;
    for (int s = 0; s < steps; ++s) {
        strang_step_inplace(spec, v, dt);
        worst = std::max(worst, std::abs(mass(v) - m0) / m0);
    }
    return worst;
}

std::vector<CheckResult> conservation() {
    const std::string s = "conservation";
    std::vector<CheckResult> out;

    const Grid line(1, {1024, 1, 1}, {80.0, 1, 1});
    out.push_back(check(s, "nls-soliton-mass", relative_mass_drift({EquationKind::NLS, 1.0, 0.0}, sech_soliton(line, 1.0), 1e-3, 2000),
                        1e-11, "1D, 2000 steps of dt=1e-3"));

    const Grid plane = Grid::cube(2, 64, 16.0);
    out.push_back(check(s, "sh-gaussian-mass", relative_mass_drift({EquationKind::SH, 1.0, 0.5}, gaussian(plane, 1.5, 1.0), 1e-3, 200),
                        1e-11, "2D, alpha=0.5"));
    out.push_back(check(s, "sn-gaussian-mass", relative_mass_drift({EquationKind::SN, 1.0, 0.5}, gaussian(plane, 1.0, 1.0), 1e-3, 200),
                        1e-11, "2D, alpha=0.5"));

    // Energy is conserved only up to the O(dt^2) splitting error.
    const EquationSpec nls{EquationKind::NLS, 1.0, 0.0};
    ComplexField v = gaussian(line, 1.2, 1.5);
    const double h0 = hamiltonian(nls, v);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        strang_step_inplace(nls, v, 1e-3);
        worst = std::max(worst, std::abs(hamiltonian(nls, v) - h0) / std::abs(h0));
    }
    out.push_back(check(s, "nls-gaussian-energy", worst, 1e-5, "1D, t=1, dt=1e-3"));
    return out;
}

std::vector<CheckResult> multipliers() {
    const std::string s = "multipliers";
    std::vector<CheckResult> out;
    const std::vector<Grid> grids{Grid(1, {256, 1, 1}, {20.0, 1, 1}), Grid::cube(2, 64, 2.0 * std::numbers::pi),
                                  Grid::cube(3, 16, 4.0)};
    for (double alpha : {0.05, 0.1, 0.5, 1.0}) {
        double excess = -1.0;
        for (const auto& g : grids) {
            const double bound = std::max(1.0, 1.0 / (alpha * alpha));
            const auto gain = spectral::elliptic_gain_table(g, alpha);
            for (double x : gain) excess = std::max(excess, x - bound);
        }
        char name[48];
        std::snprintf(name, sizeof name, "elliptic-bound-alpha-%g", alpha);
        // Pass means max(gain - bound) <= 0 exactly.
        out.push_back(check(s, name, excess, 0.0, "max over grids of gain - max(1, alpha^-2)"));
    }

    const Grid g = Grid::cube(2, 32, 10.0);
    ComplexField c(g);
    std::fill(c.values.begin(), c.values.end(), Complex(3.0, -1.0));
    const auto b = spectral::helmholtz_inverse(c, 0.3);
    double err = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) err = std::max(err, std::abs(b[i] - c[i]));
    out.push_back(check(s, "helmholtz-constant-fixed-point", err, 1e-13));

    // cos(k x) is an eigenfunction: B cos = cos / (1 + alpha^2 k^2), Poisson gives cos / (alpha^2 k^2).
    const Grid line(1, {64, 1, 1}, {2.0 * std::numbers::pi, 1, 1});
    const double alpha = 0.7;
    const double k = 3.0;
    ComplexField f(line);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::cos(k * line.coordinate(0, i));
    const auto h = spectral::helmholtz_inverse(f, alpha);
    const auto p = spectral::poisson_inverse_zero_mean(f, alpha);
    double eh = 0.0;
    double ep = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        eh = std::max(eh, std::abs(h[i] - f[i] / (1.0 + alpha * alpha * k * k)));
        ep = std::max(ep, std::abs(p[i] - f[i] / (alpha * alpha * k * k)));
    }
    out.push_back(check(s, "helmholtz-cosine-eigenvalue", eh, 1e-13));
    out.push_back(check(s, "poisson-cosine-eigenvalue", ep, 1e-13));
    return out;
}

std::vector<CheckResult> exact() {
    const std::string s = "exact";
    std::vector<CheckResult> out;

    const Grid ring(1, {64, 1, 1}, {2.0 * std::numbers::pi, 1, 1});
    for (auto kind : {EquationKind::NLS, EquationKind::SH}) {
        const EquationSpec spec{kind, 1.0, kind == EquationKind::SH ? 0.3 : 0.0};
        const double amp = 0.8;
        const double k = 2.0;
        const double dt = 0.01;
        ComplexField v(ring);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = amp * std::polar(1.0, k * ring.coordinate(0, i));
        const ComplexField expected_base = v;
        strang_step_inplace(spec, v, dt);
        const double omega = k * k - std::pow(amp, 2.0);
        double err = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            err = std::max(err, std::abs(v[i] - expected_base[i] * std::polar(1.0, -omega * dt)));
        }
        out.push_back(check(s, "plane-wave-" + to_string(kind), err, 1e-12));
    }

    {
        const Grid line(1, {1024, 1, 1}, {80.0, 1, 1});
        const EquationSpec nls{EquationKind::NLS, 1.0, 0.0};
        ComplexField v = sech_soliton(line, 1.0);
        const ComplexField v0 = v;
        for (int k = 0; k < 1000; ++k) strang_step_inplace(nls, v, 1e-3);
        double num = 0.0;
        double den = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            num += std::norm(v[i] - v0[i] * std::polar(1.0, 1.0));
            den += std::norm(v0[i]);
        }
        out.push_back(check(s, "soliton-phase-rotation", std::sqrt(num / den), 1e-6, "relative L2 error at t=1"));
    }

    {
        // i v_t + v_xx = 0 with v0 = exp(-x^2/2): |v(t)|_inf = (1 + 4 t^2)^{-1/4}.
        const Grid line(1, {4096, 1, 1}, {400.0, 1, 1});
        ComplexField v = gaussian(line, 1.0, 1.0);
        double err = 0.0;
        for (double t : {1.0, 2.0, 4.0}) {
            const auto w = spectral::free_propagator(v, t);
            err = std::max(err, std::abs(sup_abs(w) - std::pow(1.0 + 4.0 * t * t, -0.25)));
        }
        out.push_back(check(s, "free-gaussian-sup-decay", err, 1e-6, "t in {1, 2, 4}"));
    }
    return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"conservation", "multipliers", "exact", "all"};
    return names;
}

std::vector<CheckResult> run_suite(const std::string& suite) {
    if (suite == "conservation") return conservation();
    if (suite == "multipliers") return multipliers();
    if (suite == "exact") return exact();
    if (suite == "all") {
        auto out = conservation();
        for (auto* next : {&multipliers, &exact}) {
            auto more = (*next)();
            out.insert(out.end(), more.begin(), more.end());
        }
        return out;
    }
    throw std::invalid_argument("unknown validation suite '" + suite + "'");
}

std::string format_line(const CheckResult& c) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s %s/%s value=%.3e tol=%.1e", c.passed ? "PASS" : "FAIL", c.suite.c_str(),
                  c.name.c_str(), c.value, c.tolerance);
    std::string line = buf;
    if (!c.detail.empty()) line += " (" + c.detail + ")";
    return line;
}

}  // namespace shnls::validation
