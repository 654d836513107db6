#include "shnls/system.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <spdlog/spdlog.h>

#include "shnls/kernels.hpp"
#include "shnls/spectral.hpp"

namespace shnls {

std::string to_string(EquationKind kind) {
    switch (kind) {
        case EquationKind::NLS: return "NLS";
        case EquationKind::SH: return "SH";
        case EquationKind::SN: return "SN";
    }
    return "?";
}

EquationKind parse_equation_kind(const std::string& text) {
    std::string up = text;
    std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
    if (up == "NLS") return EquationKind::NLS;
    if (up == "SH") return EquationKind::SH;
    if (up == "SN") return EquationKind::SN;
    throw std::invalid_argument("unknown equation kind '" + text + "' (expected NLS, SH or SN)");
}

void EquationSpec::validate() const {
    if (!std::isfinite(sigma) || !std::isfinite(alpha)) throw std::invalid_argument("sigma and alpha must be finite");
    if (kind == EquationKind::NLS) {
        if (!(sigma > 0.0)) throw std::invalid_argument("NLS requires sigma > 0");
        return;
    }
    if (sigma < 1.0) throw std::invalid_argument(to_string(kind) + " requires sigma >= 1");
    if (!(alpha > 0.0)) throw std::invalid_argument(to_string(kind) + " requires alpha > 0");
}

std::string EquationSpec::describe() const {
    std::ostringstream os;
    os << to_string(kind) << " sigma=" << sigma;
    if (kind != EquationKind::NLS) os << " alpha=" << alpha;
    return os.str();
}

namespace {

// SH with alpha == 0 is the classical limit; everything else must pass validate().
void check_for_evaluation(const EquationSpec& spec) {
    if (spec.kind == EquationKind::SH && spec.alpha == 0.0 && spec.sigma >= 1.0) return;
    spec.validate();
}

}  // namespace

RealField potential_values(const EquationSpec& spec, const ComplexField& v) {
    check_for_evaluation(spec);
    v.require_finite("potential");
    RealField w(v.size());
    switch (spec.kind) {
        case EquationKind::NLS:
            kernels::pow_abs(v.values, 2.0 * spec.sigma, w);
            break;
        case EquationKind::SH: {
            RealField source(v.size());
            kernels::pow_abs(v.values, spec.sigma + 1.0, source);
            const RealField u = spectral::helmholtz_inverse_real(v.grid, source, spec.alpha);
            if (spec.sigma == 1.0) {
                w = u;
            } else {
                RealField factor(v.size());
                kernels::pow_abs(v.values, spec.sigma - 1.0, factor);
                kernels::multiply(u, factor, w);
            }
            const double lo = kernels::min_value(u);
            const double hi = kernels::max_value(u);
            if (lo < -1e-10 * std::max(hi, 0.0) && lo < -std::numeric_limits<double>::min()) {
                spdlog::warn("SH potential has negative samples (min {:.3e}, max {:.3e})", lo, hi);
            }
            break;
        }
        case EquationKind::SN: {
            RealField source(v.size());
            kernels::abs_sq(v.values, source);
            w = spectral::poisson_inverse_zero_mean_real(v.grid, source, spec.alpha);
            break;
        }
    }
    return w;
}

ComplexField potential(const EquationSpec& spec, const ComplexField& v) {
    return spectral::as_complex(v.grid, potential_values(spec, v));
}

ComplexField nonlinearity(const EquationSpec& spec, const ComplexField& v) {
    const RealField w = potential_values(spec, v);
    ComplexField out(v.grid);
    kernels::multiply_field(w, v.values, out.values);
    return out;
}

double potential_energy(const EquationSpec& spec, const ComplexField& v) {
    check_for_evaluation(spec);
    v.require_finite("potential_energy");
    const double dv = v.grid.cell_volume();
    switch (spec.kind) {
        case EquationKind::NLS: {
            RealField a(v.size());
            kernels::pow_abs(v.values, 2.0 * spec.sigma + 2.0, a);
            const RealField ones(v.size(), 1.0);
            return kernels::sum_product(a, ones) * dv / (spec.sigma + 1.0);
        }
        case EquationKind::SH: {
            RealField source(v.size());
            kernels::pow_abs(v.values, spec.sigma + 1.0, source);
            const RealField u = spectral::helmholtz_inverse_real(v.grid, source, spec.alpha);
            return kernels::sum_product(u, source) * dv / (spec.sigma + 1.0);
        }
        case EquationKind::SN: {
            const RealField psi = potential_values(spec, v);
            return 0.5 * kernels::weighted_sum_abs_sq(v.values, psi) * dv;
        }
    }
    return 0.0;
}

std::string to_string(Regime regime) {
    switch (regime) {
        case Regime::GlobalGuaranteed: return "global-guaranteed";
        case Regime::LocalOnly: return "local-only";
        case Regime::BlowupPossible: return "blow-up-possible";
        case Regime::OutsideTheory: return "outside-theory";
    }
    return "?";
}

RegimeReport validate_regime(const EquationSpec& spec, int dim) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("validate_regime: dim must be 1, 2 or 3");
    const double n = dim;
    const double inf = std::numeric_limits<double>::infinity();
    RegimeReport report;
    std::ostringstream why;

    if (spec.kind == EquationKind::NLS) {
        const double critical = 2.0 / n;
        const double local_limit = dim <= 2 ? inf : 2.0 / (n - 2.0);
        report.nls_critical = std::abs(spec.sigma - critical) <= 1e-12;
        report.global_range = spec.sigma > 0.0 && spec.sigma < critical;
        if (!(spec.sigma > 0.0) || spec.sigma >= local_limit) {
            report.regime = Regime::OutsideTheory;
            why << "NLS sigma=" << spec.sigma << " outside 0 < sigma < 2/(N-2)";
        } else if (report.global_range) {
            report.regime = Regime::GlobalGuaranteed;
            why << "NLS sigma=" << spec.sigma << " < 2/N=" << critical;
        } else {
            report.regime = Regime::BlowupPossible;
            why << "NLS sigma=" << spec.sigma << " >= 2/N=" << critical << (report.nls_critical ? " (critical)" : "");
        }
    } else {
        // SN has the sigma = 1 structure regardless of the configured sigma.
        const double sigma = spec.kind == EquationKind::SN ? 1.0 : spec.sigma;
        const double global_limit = 4.0 / n;
        const double local_limit = dim <= 2 ? inf : 4.0 / (n - 2.0);
        report.nls_critical = std::abs(sigma - 2.0 / n) <= 1e-12;
        report.global_range = sigma >= 1.0 && sigma < global_limit;
        if (sigma < 1.0 || sigma >= local_limit) {
            report.regime = Regime::OutsideTheory;
            why << to_string(spec.kind) << " sigma=" << sigma << " outside 1 <= sigma < 4/(N-2)";
        } else if (report.global_range) {
            report.regime = Regime::GlobalGuaranteed;
            why << to_string(spec.kind) << " 1 <= sigma=" << sigma << " < 4/N=" << global_limit;
        } else {
            report.regime = Regime::LocalOnly;
            why << to_string(spec.kind) << " 4/N=" << global_limit << " <= sigma=" << sigma << " < 4/(N-2)";
        }
    }
    report.explanation = why.str();
    return report;
}

}  // namespace shnls
