#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "shnls/grid.hpp"

namespace shnls::test {

inline Grid line(std::size_t n, double length) { return Grid(1, {n, 1, 1}, {length, 1.0, 1.0}); }

inline ComplexField gaussian(const Grid& g, double amplitude = 1.0, double width = 1.0) {
    ComplexField v(g);
    const auto r2 = g.radius_sq_table();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = amplitude * std::exp(-r2[i] / (2.0 * width * width));
    return v;
}

/// eta sqrt(2) sech(eta x), optionally boosted to velocity 2 c by e^{i c x}.
inline ComplexField sech(const Grid& g, double eta = 1.0, double c = 0.0) {
    ComplexField v(g);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double x = g.coordinate(0, i);
        v[i] = std::sqrt(2.0) * eta / std::cosh(eta * x) * std::polar(1.0, c * x);
    }
    return v;
}

inline ComplexField random_field(const Grid& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    ComplexField v(g);
    for (auto& z : v.values) z = Complex(n(rng), n(rng));
    return v;
}

/// Smooth random field: a few low modes with random coefficients, times a Gaussian envelope.
inline ComplexField smooth_random_field(const Grid& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexField v(g);
    const auto r2 = g.radius_sq_table();
    std::array<double, 6> c{};
    for (auto& x : c) x = u(rng);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto idx = g.unflatten(i);
        double phase = 0.0;
        for (int d = 0; d < g.dim(); ++d) phase += (c[static_cast<std::size_t>(d)] + 1.5) * g.coordinate(d, idx[static_cast<std::size_t>(d)]);
        v[i] = (1.0 + 0.3 * c[3]) * std::exp(-r2[i] / 4.0) * std::polar(1.0 + 0.2 * c[4], phase + c[5]);
    }
    return v;
}

inline double max_diff(const ComplexField& a, const ComplexField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double l2_diff(const ComplexField& a, const ComplexField& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
    return std::sqrt(s * a.grid.cell_volume());
}

inline double l2_norm(const ComplexField& a) {
    double s = 0.0;
    for (const auto& z : a.values) s += std::norm(z);
    return std::sqrt(s * a.grid.cell_volume());
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("shnls_test_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace shnls::test
