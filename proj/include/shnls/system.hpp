#pragma once

#include <string>

#include "shnls/grid.hpp"

namespace shnls {

/// NLS:  i v_t + Lap v + |v|^{2 sigma} v = 0
/// SH:   i v_t + Lap v + u |v|^{sigma-1} v = 0,   u - alpha^2 Lap u = |v|^{sigma+1}
/// SN:   i v_t + Lap v + psi v = 0,               -alpha^2 Lap psi = |v|^2
enum class EquationKind { NLS, SH, SN };

std::string to_string(EquationKind kind);
/// Accepts "NLS", "SH", "SN" (case-insensitive).
EquationKind parse_equation_kind(const std::string& text);

struct EquationSpec {
    EquationKind kind = EquationKind::NLS;
    /// Nonlinearity exponent. SN always uses the |v|^2 source; its sigma is reported only.
    double sigma = 1.0;
    /// Regularization length; required > 0 for SH and SN, ignored for NLS.
    double alpha = 0.0;

    /// Throws std::invalid_argument on sigma < 1 (SH/SN), sigma <= 0 (NLS) or missing alpha.
    void validate() const;
    std::string describe() const;
};

/// Real self-induced potential W(v), so the equation reads i v_t + Lap v + W(v) v = 0.
///   NLS: |v|^{2 sigma}
///   SH:  B(|v|^{sigma+1}) |v|^{sigma-1},  B = (I - alpha^2 Lap)^{-1}
///   SN:  zero-mean solution of -alpha^2 Lap psi = |v|^2
/// SH with alpha = 0 is accepted here and reduces to NLS (B = I).
/// Negative SH values below -1e-10 * max W are logged, not rejected.
RealField potential_values(const EquationSpec& spec, const ComplexField& v);

/// potential_values as a complex field with zero imaginary part.
ComplexField potential(const EquationSpec& spec, const ComplexField& v);

/// f(v) = W(v) v.
ComplexField nonlinearity(const EquationSpec& spec, const ComplexField& v);

/// Integral of the potential-energy density that H subtracts from |grad v|^2:
///   NLS: |v|^{2 sigma + 2}/(sigma + 1),  SH: u |v|^{sigma+1}/(sigma + 1),  SN: psi |v|^2 / 2.
double potential_energy(const EquationSpec& spec, const ComplexField& v);

enum class Regime { GlobalGuaranteed, LocalOnly, BlowupPossible, OutsideTheory };

std::string to_string(Regime regime);

struct RegimeReport {
    Regime regime = Regime::OutsideTheory;
    /// sigma == 2/N, where NLS blow-up first becomes possible.
    bool nls_critical = false;
    /// sigma < 4/N for SH/SN, sigma < 2/N for NLS.
    bool global_range = false;
    std::string explanation;
};

/// Classifies (kind, sigma, dim) against the existence theory. Advisory: never throws for a
/// valid dim, even when the spec is outside every theorem.
///   SH/SN: 1 <= sigma < 4/N global; 4/N <= sigma < 4/(N-2) local only (4/(N-2) = inf for N <= 2).
///   NLS:   sigma < 2/N global; 2/N <= sigma < 2/(N-2) blow-up possible.
RegimeReport validate_regime(const EquationSpec& spec, int dim);

}  // namespace shnls
