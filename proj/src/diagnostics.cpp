#include "shnls/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "shnls/kernels.hpp"
#include "shnls/spectral.hpp"

namespace shnls {

void BlowupPolicy::validate() const {
    if (!(sup_factor > 1.0)) throw std::invalid_argument("blowup policy: sup_factor must be > 1");
    if (!(tail_limit > 0.0 && tail_limit < 1.0)) throw std::invalid_argument("blowup policy: tail_limit must be in (0,1)");
    if (consecutive < 1) throw std::invalid_argument("blowup policy: consecutive must be >= 1");
}

double mass(const ComplexField& v) {
    v.require_finite("mass");
    return kernels::sum_abs_sq(v.values) * v.grid.cell_volume();
}

double hamiltonian(const EquationSpec& spec, const ComplexField& v) {
    return spectral::gradient_sq_integral(v) - potential_energy(spec, v);
}

double sup_abs(const ComplexField& v) { return kernels::max_abs(v.values); }

double tail_fraction(const ComplexField& v) { return spectral::tail_fraction_from_coeffs(spectral::to_spectral(v)); }

DiagnosticsRecord measure(const EquationSpec& spec, const ComplexField& v, double t, double dt_current) {
    DiagnosticsRecord r;
    r.t = t;
    r.dt_current = dt_current;
    r.mass = mass(v);
    const ComplexField coeffs = spectral::to_spectral(v);
    r.grad_sq = spectral::gradient_sq_from_coeffs(coeffs);
    r.h1_sq = r.mass + r.grad_sq;
    r.hamiltonian = r.grad_sq - potential_energy(spec, v);
    r.sup_abs = sup_abs(v);
    r.tail_fraction = spectral::tail_fraction_from_coeffs(coeffs);
    return r;
}

BlowupVerdict blowup_check(std::span<const DiagnosticsRecord> history, const BlowupPolicy& policy) {
    if (history.empty()) throw std::invalid_argument("blowup_check: empty history");
    const double sup_limit = policy.sup_factor * history.front().sup_abs;
    auto sup_trip = [&](const DiagnosticsRecord& r) { return r.sup_abs > sup_limit; };
    auto tail_trip = [&](const DiagnosticsRecord& r) { return r.tail_fraction > policy.tail_limit; };

    BlowupVerdict verdict;
    verdict.latest_tripped = sup_trip(history.back()) || tail_trip(history.back());

    const auto need = static_cast<std::size_t>(policy.consecutive);
    if (history.size() < need) return verdict;
    const auto recent = history.last(need);
    bool any_sup = false;
    bool any_tail = false;
    for (const auto& r : recent) {
        const bool s = sup_trip(r);
        const bool t = tail_trip(r);
        if (!s && !t) return verdict;
        any_sup = any_sup || s;
        any_tail = any_tail || t;
    }
    verdict.triggered = true;
    verdict.reason = any_sup && any_tail ? "sup+tail" : (any_sup ? "sup" : "tail");
    return verdict;
}

AprioriReport apriori_tracker(const EquationSpec& spec, int dim, std::span<const DiagnosticsRecord> records,
                              double growth_threshold) {
    AprioriReport report;
    report.regime = validate_regime(spec, dim);
    if (records.empty()) {
        report.bounded = report.regime.global_range;
        return report;
    }
    double max_gs = 0.0;
    for (const auto& r : records) {
        if (!std::isfinite(r.grad_sq)) report.finite = false;
        else max_gs = std::max(max_gs, r.grad_sq);
    }
    report.max_grad_sq = max_gs;

    const double t0 = records.front().t;
    const double t1 = records.back().t;
    const double split = t0 + 0.75 * (t1 - t0);
    double early = 0.0;
    double late = 0.0;
    bool have_early = false;
    for (const auto& r : records) {
        if (!std::isfinite(r.grad_sq)) continue;
        if (r.t < split || records.size() == 1) {
            early = std::max(early, r.grad_sq);
            have_early = true;
        } else {
            late = std::max(late, r.grad_sq);
        }
    }
    if (!have_early || late == 0.0) {
        report.last_quarter_growth = 0.0;
    } else if (early == 0.0) {
        report.last_quarter_growth = std::numeric_limits<double>::infinity();
    } else {
        report.last_quarter_growth = late / early;
    }
    report.divergence_flagged = !report.finite || report.last_quarter_growth > growth_threshold;
    report.bounded = report.regime.global_range && report.finite && !report.divergence_flagged;
    return report;
}

void write_csv_header(std::ostream& os) {
    os << "t,mass,hamiltonian,grad_sq,h1_sq,sup_abs,tail_fraction,dt_current\n";
}

void write_csv_row(std::ostream& os, const DiagnosticsRecord& r) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t, r.mass, r.hamiltonian,
                  r.grad_sq, r.h1_sq, r.sup_abs, r.tail_fraction, r.dt_current);
    os << buf;
}

}  // namespace shnls
