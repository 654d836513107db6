#pragma once

// Periodic-box spectral transforms and Fourier-multiplier operators.
//
// Transform convention: to_spectral divides by the sample count, so a constant
// field A has coefficient A at k = 0; from_spectral is the plain inverse sum.
// With that convention
//     sum_x |f|^2 dV = V * sum_k |F_k|^2          (V = box volume)
// which is what gradient_sq_integral uses.

#include "shnls/grid.hpp"

namespace shnls::spectral {

ComplexField to_spectral(const ComplexField& f);
ComplexField from_spectral(const ComplexField& coeffs);

/// In-place variants used on the stepping hot path.
void to_spectral_inplace(ComplexField& f);
void from_spectral_inplace(ComplexField& coeffs);

/// Cached |k|^2 table for the grid, in storage order.
const RealField& wavenumber_sq(const Grid& grid);

/// Helmholtz inverse B = (I - alpha^2 Lap)^-1: multiplier 1/(1 + alpha^2 |k|^2).
/// alpha = 0 returns f unchanged. Throws std::invalid_argument for alpha < 0.
ComplexField helmholtz_inverse(const ComplexField& f, double alpha);

/// Real-data path for the SH potential. The imaginary residue of the round trip is
/// checked against 1e-12 * max|result| and then discarded.
RealField helmholtz_inverse_real(const Grid& grid, const RealField& f, double alpha);

/// Zero-mean inverse of -alpha^2 Lap: multiplier 1/(alpha^2 |k|^2) for k != 0 and 0 at
/// k = 0. Throws std::invalid_argument for alpha <= 0.
ComplexField poisson_inverse_zero_mean(const ComplexField& f, double alpha);
RealField poisson_inverse_zero_mean_real(const Grid& grid, const RealField& f, double alpha);

/// U(t) = exp(i t Lap): multiplier exp(-i |k|^2 t).
ComplexField free_propagator(const ComplexField& f, double t);
void free_propagate_inplace(ComplexField& f, double t);

/// Integral of |grad f|^2 over the box, from the spectral coefficients.
double gradient_sq_integral(const ComplexField& f);
/// Same quantity when the coefficients are already available.
double gradient_sq_from_coeffs(const ComplexField& coeffs);

/// Spectral derivative along one axis (multiplier i k_axis).
ComplexField derivative(const ComplexField& f, int axis);

/// 1/(1 + alpha^2 |k|^2) for every mode.
RealField helmholtz_multiplier(const Grid& grid, double alpha);

/// (1 + |k|^2)/(1 + alpha^2 |k|^2): the H^2-from-L^2 gain of B per mode. Bounded by
/// max(1, alpha^-2), approached as |k| grows.
RealField elliptic_gain_table(const Grid& grid, double alpha);

/// Fraction of spectral energy in modes with |m_d| > n_d/3 on any axis. Zero field gives 0.
double tail_fraction_from_coeffs(const ComplexField& coeffs);

/// Builds a real field as complex samples.
ComplexField as_complex(const Grid& grid, const RealField& values);

}  // namespace shnls::spectral
