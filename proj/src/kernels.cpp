#include "shnls/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace shnls::kernels {

namespace {

inline double pow_from_abs_sq(double a2, double p) {
    if (p == 0.0) return 1.0;
    if (p == 2.0) return a2;
    if (a2 < kPowCutoff) return 0.0;
    if (p == 1.0) return std::sqrt(a2);
    return std::exp(0.5 * p * std::log(a2));
}

inline Complex unit_phase(double theta) { return {std::cos(theta), std::sin(theta)}; }

}  // namespace

// ---------------------------------------------------------------------------
// serial reference
// ---------------------------------------------------------------------------
namespace serial {

void scale(std::span<Complex> data, double factor) {
    for (auto& z : data) z *= factor;
}

void multiply_real(std::span<Complex> data, std::span<const double> mult) {
    for (std::size_t i = 0; i < data.size(); ++i) data[i] *= mult[i];
}

void dispersive_phase(std::span<Complex> data, std::span<const double> ksq, double t) {
    for (std::size_t i = 0; i < data.size(); ++i) data[i] *= unit_phase(-ksq[i] * t);
}

void potential_phase(std::span<Complex> v, std::span<const double> w, double dt) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= unit_phase(w[i] * dt);
}

void multiply_field(std::span<const double> w, std::span<const Complex> v, std::span<Complex> out) {
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = w[i] * v[i];
}

void abs_sq(std::span<const Complex> v, std::span<double> out) {
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::norm(v[i]);
}

void pow_abs(std::span<const Complex> v, double p, std::span<double> out) {
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = pow_from_abs_sq(std::norm(v[i]), p);
}

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
}

double sum_abs_sq(std::span<const Complex> v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return s;
}

double weighted_sum_abs_sq(std::span<const Complex> v, std::span<const double> w) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += w[i] * std::norm(v[i]);
    return s;
}

double sum_product(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double max_abs(std::span<const Complex> v) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::norm(z));
    return std::sqrt(m);
}

double max_value(std::span<const double> a) {
    double m = -std::numeric_limits<double>::infinity();
    for (double x : a) m = std::max(m, x);
    return m;
}

double min_value(std::span<const double> a) {
    double m = std::numeric_limits<double>::infinity();
    for (double x : a) m = std::min(m, x);
    return m;
}

double max_abs_imag(std::span<const Complex> v) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z.imag()));
    return m;
}

double max_abs_real(std::span<const Complex> v) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z.real()));
    return m;
}

}  // namespace serial

// ---------------------------------------------------------------------------
// OpenMP
// ---------------------------------------------------------------------------
namespace parallel {

namespace {

using Index = std::ptrdiff_t;

inline Index ssize(std::size_t n) { return static_cast<Index>(n); }

// Fixed-order blocked sum: block partials are independent of the thread count.
template <typename Term>
double blocked_sum(std::size_t n, Term term) {
    const std::size_t blocks = (n + kReductionBlock - 1) / kReductionBlock;
    if (blocks <= 1) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += term(i);
        return s;
    }
    std::vector<double> partial(blocks, 0.0);
#pragma omp parallel for schedule(static)
    for (Index b = 0; b < ssize(blocks); ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * kReductionBlock;
        const std::size_t hi = std::min(n, lo + kReductionBlock);
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += term(i);
        partial[static_cast<std::size_t>(b)] = s;
    }
    double s = 0.0;
    for (double p : partial) s += p;
    return s;
}

}  // namespace

void scale(std::span<Complex> data, double factor) {
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < ssize(data.size()); ++i) data[static_cast<std::size_t>(i)] *= factor;
}

void multiply_real(std::span<Complex> data, std::span<const double> mult) {
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < ssize(data.size()); ++i) {
        const auto u = static_cast<std::size_t>(i);
        data[u] *= mult[u];
    }
}

void dispersive_phase(std::span<Complex> data, std::span<const double> ksq, double t) {
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < ssize(data.size()); ++i) {
        const auto u = static_cast<std::size_t>(i);
        data[u] *= unit_phase(-ksq[u] * t);
    }
}

void potential_phase(std::span<Complex> v, std::span<const double> w, double dt) {
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < ssize(v.size()); ++i) {
        const auto u = static_cast<std::size_t>(i);
        v[u] *= unit_phase(w[u] * dt);
    }
}

void multiply_field(std::span<const double> w, std::span<const Complex> v, std::span<Complex> out) {
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < ssize(v.size()); ++i) {
        const auto u = static_cast<std::size_t>(i);
        out[u] = w[u] * v[u];
    }
}

void abs_sq(std::span<const Complex> v, std::span<double> out) {
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < ssize(v.size()); ++i) {
        const auto u = static_cast<std::size_t>(i);
        out[u] = std::norm(v[u]);
    }
}

void pow_abs(std::span<const Complex> v, double p, std::span<double> out) {
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < ssize(v.size()); ++i) {
        const auto u = static_cast<std::size_t>(i);
        out[u] = pow_from_abs_sq(std::norm(v[u]), p);
    }
}

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < ssize(a.size()); ++i) {
        const auto u = static_cast<std::size_t>(i);
        out[u] = a[u] * b[u];
    }
}

double sum_abs_sq(std::span<const Complex> v) {
    return blocked_sum(v.size(), [&](std::size_t i) { return std::norm(v[i]); });
}

double weighted_sum_abs_sq(std::span<const Complex> v, std::span<const double> w) {
    return blocked_sum(v.size(), [&](std::size_t i) { return w[i] * std::norm(v[i]); });
}

double sum_product(std::span<const double> a, std::span<const double> b) {
    return blocked_sum(a.size(), [&](std::size_t i) { return a[i] * b[i]; });
}

double max_abs(std::span<const Complex> v) {
    double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m)
    for (Index i = 0; i < ssize(v.size()); ++i) m = std::max(m, std::norm(v[static_cast<std::size_t>(i)]));
    return std::sqrt(m);
}

double max_value(std::span<const double> a) {
    double m = -std::numeric_limits<double>::infinity();
#pragma omp parallel for schedule(static) reduction(max : m)
    for (Index i = 0; i < ssize(a.size()); ++i) m = std::max(m, a[static_cast<std::size_t>(i)]);
    return m;
}

double min_value(std::span<const double> a) {
    double m = std::numeric_limits<double>::infinity();
#pragma omp parallel for schedule(static) reduction(min : m)
    for (Index i = 0; i < ssize(a.size()); ++i) m = std::min(m, a[static_cast<std::size_t>(i)]);
    return m;
}

double max_abs_imag(std::span<const Complex> v) {
    double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m)
    for (Index i = 0; i < ssize(v.size()); ++i) m = std::max(m, std::abs(v[static_cast<std::size_t>(i)].imag()));
    return m;
}

double max_abs_real(std::span<const Complex> v) {
    double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m)
    for (Index i = 0; i < ssize(v.size()); ++i) m = std::max(m, std::abs(v[static_cast<std::size_t>(i)].real()));
    return m;
}

}  // namespace parallel

}  // namespace shnls::kernels
