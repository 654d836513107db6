#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "shnls/grid.hpp"
#include "shnls/system.hpp"

namespace shnls {

struct DiagnosticsRecord {
    double t = 0.0;
    double mass = 0.0;
    double hamiltonian = 0.0;
    double grad_sq = 0.0;
    /// mass + grad_sq
    double h1_sq = 0.0;
    double sup_abs = 0.0;
    /// Spectral energy share of the outer third of modes on any axis.
    double tail_fraction = 0.0;
    double dt_current = 0.0;
};

/// Blow-up is declared when sup|v| exceeds sup_factor * sup|v(0)| or the spectral tail exceeds
/// tail_limit, in each of the last `consecutive` records.
struct BlowupPolicy {
    double sup_factor = 50.0;
    double tail_limit = 0.1;
    int consecutive = 3;

    void validate() const;
};

double mass(const ComplexField& v);
double hamiltonian(const EquationSpec& spec, const ComplexField& v);
double sup_abs(const ComplexField& v);
double tail_fraction(const ComplexField& v);

/// All indicators of one snapshot (one forward transform shared by grad_sq and the tail).
DiagnosticsRecord measure(const EquationSpec& spec, const ComplexField& v, double t, double dt_current);

struct BlowupVerdict {
    bool triggered = false;
    /// The newest record trips a condition (the streak may still be too short).
    bool latest_tripped = false;
    /// "sup", "tail" or "sup+tail" when triggered.
    std::string reason;
};

/// history[0] is the t = 0 record that anchors the sup-norm reference.
BlowupVerdict blowup_check(std::span<const DiagnosticsRecord> history, const BlowupPolicy& policy);

struct AprioriReport {
    RegimeReport regime;
    double max_grad_sq = 0.0;
    bool finite = true;
    /// max grad_sq over the last quarter of the time span divided by the max over the rest.
    double last_quarter_growth = 0.0;
    bool divergence_flagged = false;
    /// Only meaningful in the global range: finite and not diverging.
    bool bounded = false;
};

/// Growth ratio above which the last quarter counts as diverging.
inline constexpr double kAprioriGrowthThreshold = 2.0;

/// Qualitative check of the gradient bound: the constant in the bound is not computable, so
/// the series is tested for finiteness and for a late surge relative to its earlier maximum.
AprioriReport apriori_tracker(const EquationSpec& spec, int dim, std::span<const DiagnosticsRecord> records,
                              double growth_threshold = kAprioriGrowthThreshold);

/// Column order: t, mass, hamiltonian, grad_sq, h1_sq, sup_abs, tail_fraction, dt_current.
void write_csv_header(std::ostream& os);
/// One row, 17 significant digits per value.
void write_csv_row(std::ostream& os, const DiagnosticsRecord& r);

}  // namespace shnls
