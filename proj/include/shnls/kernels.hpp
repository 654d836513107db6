#pragma once

// Pointwise and reduction kernels behind the spectral operators, the nonlinear
// substep and the diagnostics.
//
// Two implementations with identical signatures:
//   serial::   plain loops, the reference the tests compare against;
//   parallel:: OpenMP loops. Reductions are summed over fixed-size blocks and the
//              block partials combined in index order, so the result does not
//              depend on the thread count.
// The unqualified kernels:: functions forward to parallel::.

#include <cstddef>
#include <span>

#include "shnls/grid.hpp"

namespace shnls::kernels {

/// Samples per reduction block in parallel::; partial sums are combined in block order.
inline constexpr std::size_t kReductionBlock = 4096;

/// |z|^2 below this maps to 0 in pow_abs (keeps log() away from zero).
inline constexpr double kPowCutoff = 1e-300;

#define SHNLS_KERNEL_DECLS                                                                     \
    void scale(std::span<Complex> data, double factor);                                         \
    void multiply_real(std::span<Complex> data, std::span<const double> mult);                  \
    void dispersive_phase(std::span<Complex> data, std::span<const double> ksq, double t);      \
    void potential_phase(std::span<Complex> v, std::span<const double> w, double dt);           \
    void multiply_field(std::span<const double> w, std::span<const Complex> v,                  \
                        std::span<Complex> out);                                                \
    void abs_sq(std::span<const Complex> v, std::span<double> out);                             \
    void pow_abs(std::span<const Complex> v, double p, std::span<double> out);                  \
    void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out); \
    double sum_abs_sq(std::span<const Complex> v);                                              \
    double weighted_sum_abs_sq(std::span<const Complex> v, std::span<const double> w);          \
    double sum_product(std::span<const double> a, std::span<const double> b);                   \
    double max_abs(std::span<const Complex> v);                                                 \
    double max_value(std::span<const double> a);                                                \
    double min_value(std::span<const double> a);                                                \
    double max_abs_imag(std::span<const Complex> v);                                            \
    double max_abs_real(std::span<const Complex> v);

namespace serial {
SHNLS_KERNEL_DECLS
}  // namespace serial

namespace parallel {
SHNLS_KERNEL_DECLS
}  // namespace parallel

#undef SHNLS_KERNEL_DECLS

using namespace parallel;

}  // namespace shnls::kernels
