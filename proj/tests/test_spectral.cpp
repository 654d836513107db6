#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "shnls/diagnostics.hpp"
#include "shnls/spectral.hpp"
#include "support.hpp"

using namespace shnls;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

namespace {

// Dense spectral Laplacian from an explicit DFT sum; shares nothing with the FFT path.
MatrixXcd dense_laplacian(const Grid& g) {
    const auto n = static_cast<long>(g.n(0));
    MatrixXcd d2 = MatrixXcd::Zero(n, n);
    for (long j = 0; j < n; ++j) {
        for (long l = 0; l < n; ++l) {
            Complex s = 0.0;
            for (long m = 0; m < n; ++m) {
                const long mode = m < n / 2 ? m : m - n;
                const double k = 2.0 * std::numbers::pi * static_cast<double>(mode) / g.length(0);
                s += -k * k * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(mode * (j - l)) / static_cast<double>(n));
            }
            d2(j, l) = s / static_cast<double>(n);
        }
    }
    return d2;
}

VectorXcd to_eigen(const ComplexField& f) {
    VectorXcd out(static_cast<long>(f.size()));
    for (std::size_t i = 0; i < f.size(); ++i) out(static_cast<long>(i)) = f[i];
    return out;
}

double max_diff(const ComplexField& f, const VectorXcd& e) {
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i] - e(static_cast<long>(i))));
    return m;
}

ComplexField plane_wave(const Grid& g, std::array<long, 3> m, double amplitude = 1.0) {
    ComplexField v(g);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto idx = g.unflatten(i);
        double phase = 0.0;
        for (int d = 0; d < g.dim(); ++d) {
            const auto ud = static_cast<std::size_t>(d);
            phase += 2.0 * std::numbers::pi * static_cast<double>(m[ud]) / g.length(d) * g.coordinate(d, idx[ud]);
        }
        v[i] = amplitude * std::polar(1.0, phase);
    }
    return v;
}

}  // namespace

TEST_CASE("constant field maps to its value at k = 0") {
    for (const Grid& g : {test::line(16, 3.0), Grid::cube(2, 8, 1.0), Grid::cube(3, 8, 2.0)}) {
        ComplexField c(g);
        std::fill(c.values.begin(), c.values.end(), Complex(2.0, 0.0));
        const auto F = spectral::to_spectral(c);
        CHECK(std::abs(F[0] - 2.0) < 1e-14);
        for (std::size_t i = 1; i < F.size(); ++i) CHECK(std::abs(F[i]) < 1e-14);
    }
}

TEST_CASE("a grid mode maps to a single unit coefficient") {
    const Grid g = test::line(32, 2.0 * std::numbers::pi);
    const auto F = spectral::to_spectral(plane_wave(g, {3, 0, 0}));
    // x_0 = -L/2 shifts the phase of the coefficient; its modulus is 1.
    CHECK(std::abs(F[3]) == doctest::Approx(1.0).epsilon(1e-14));
    double others = 0.0;
    for (std::size_t i = 0; i < F.size(); ++i) if (i != 3) others = std::max(others, std::abs(F[i]));
    CHECK(others < 1e-14);
}

TEST_CASE("inverse of zero and of a unit k = 0 coefficient") {
    const Grid g = Grid::cube(2, 16, 4.0);
    ComplexField F(g);
    CHECK(spectral::from_spectral(F).values == F.values);
    F[0] = 1.0;
    const auto f = spectral::from_spectral(F);
    for (const auto& z : f.values) CHECK(std::abs(z - 1.0) < 1e-15);
}

TEST_CASE("round trip on random fields") {
    const std::vector<Grid> grids{test::line(8, 1.0), test::line(1024, 50.0), Grid::cube(2, 64, 3.0),
                                  Grid(2, {8, 32, 1}, {1.0, 7.0, 1.0}), Grid::cube(3, 16, 2.0)};
    std::uint64_t seed = 1;
    for (const auto& g : grids) {
        CAPTURE(g.describe());
        const auto f = test::random_field(g, seed++);
        const auto back = spectral::from_spectral(spectral::to_spectral(f));
        CHECK(test::l2_diff(back, f) / test::l2_norm(f) < 1e-12);
    }
}

TEST_CASE("Parseval identity in the chosen normalization") {
    const Grid g = Grid::cube(2, 32, 5.0);
    const auto f = test::random_field(g, 3);
    const auto F = spectral::to_spectral(f);
    double coeff = 0.0;
    for (const auto& z : F.values) coeff += std::norm(z);
    CHECK(g.volume() * coeff == doctest::Approx(mass(f)).epsilon(1e-12));
}

TEST_CASE("Helmholtz inverse") {
    const Grid g = test::line(64, 2.0 * std::numbers::pi);
    SUBCASE("unit wavenumber with alpha = 1 halves the mode") {
        const auto f = plane_wave(g, {1, 0, 0});
        const auto b = spectral::helmholtz_inverse(f, 1.0);
        for (std::size_t i = 0; i < f.size(); ++i) CHECK(std::abs(b[i] - 0.5 * f[i]) < 1e-14);
    }
    SUBCASE("alpha = 0 is the identity") {
        const auto f = test::random_field(g, 4);
        CHECK(spectral::helmholtz_inverse(f, 0.0).values == f.values);
    }
    SUBCASE("negative alpha is rejected") {
        CHECK_THROWS_AS(spectral::helmholtz_inverse(plane_wave(g, {1, 0, 0}), -0.1), std::invalid_argument);
    }
    SUBCASE("dense solve on an 8-point grid") {
        const Grid small = test::line(8, 3.0);
        const MatrixXcd lap = dense_laplacian(small);
        for (double alpha : {0.1, 0.5, 1.3}) {
            const auto f = test::random_field(small, 5);
            const MatrixXcd op = MatrixXcd::Identity(8, 8) - alpha * alpha * lap;
            const VectorXcd u = op.fullPivLu().solve(to_eigen(f));
            CHECK(max_diff(spectral::helmholtz_inverse(f, alpha), u) < 1e-12);
        }
    }
}

TEST_CASE("Poisson inverse with the mean removed") {
    const Grid g = test::line(64, 2.0 * std::numbers::pi);
    SUBCASE("unit wavenumber with alpha = 1 is a fixed point") {
        const auto f = plane_wave(g, {1, 0, 0});
        const auto p = spectral::poisson_inverse_zero_mean(f, 1.0);
        for (std::size_t i = 0; i < f.size(); ++i) CHECK(std::abs(p[i] - f[i]) < 1e-14);
    }
    SUBCASE("constant maps to zero") {
        ComplexField c(g);
        std::fill(c.values.begin(), c.values.end(), Complex(1.7, 0.0));
        for (const auto& z : spectral::poisson_inverse_zero_mean(c, 0.4).values) CHECK(std::abs(z) < 1e-15);
    }
    SUBCASE("alpha must be positive") {
        CHECK_THROWS_AS(spectral::poisson_inverse_zero_mean(plane_wave(g, {1, 0, 0}), 0.0), std::invalid_argument);
    }
    SUBCASE("dense solve on an 8-point grid") {
        const Grid small = test::line(8, 3.0);
        const MatrixXcd lap = dense_laplacian(small);
        const MatrixXcd mean = MatrixXcd::Constant(8, 8, 1.0 / 8.0);
        const double alpha = 0.6;
        const auto f = test::random_field(small, 6);
        const VectorXcd rhs = to_eigen(f) - mean * to_eigen(f);
        // The mean projector pins the null space so the solution has zero mean.
        const VectorXcd u = (-alpha * alpha * lap + mean).fullPivLu().solve(rhs);
        CHECK(max_diff(spectral::poisson_inverse_zero_mean(f, alpha), u) < 1e-12);
    }
    SUBCASE("adding a constant does not change the result") {
        const auto f = test::random_field(Grid::cube(2, 16, 3.0), 8);
        auto shifted = f;
        for (auto& z : shifted.values) z += Complex(2.5, -1.0);
        const auto a = spectral::poisson_inverse_zero_mean(f, 0.3);
        const auto b = spectral::poisson_inverse_zero_mean(shifted, 0.3);
        CHECK(test::max_diff(a, b) < 1e-12);
    }
}

TEST_CASE("free propagator") {
    const Grid g = Grid::cube(2, 32, 6.0);
    const auto f = test::random_field(g, 9);
    CHECK(test::max_diff(spectral::free_propagator(f, 0.0), f) < 1e-14);
    const auto u = spectral::free_propagator(f, 0.37);
    CHECK(test::l2_norm(u) == doctest::Approx(test::l2_norm(f)).epsilon(1e-13));

    SUBCASE("commutes with the Helmholtz inverse") {
        const auto a = spectral::free_propagator(spectral::helmholtz_inverse(f, 0.4), 0.8);
        const auto b = spectral::helmholtz_inverse(spectral::free_propagator(f, 0.8), 0.4);
        CHECK(test::max_diff(a, b) < 1e-12);
    }
    SUBCASE("a plane wave only picks up the phase exp(-i k^2 t)") {
        const Grid ring = test::line(32, 2.0 * std::numbers::pi);
        const auto w = plane_wave(ring, {3, 0, 0});
        const auto out = spectral::free_propagator(w, 0.25);
        for (std::size_t i = 0; i < w.size(); ++i) CHECK(std::abs(out[i] - w[i] * std::polar(1.0, -9.0 * 0.25)) < 1e-13);
    }
    SUBCASE("Gaussian spreading at t = 1") {
        // i v_t + v_xx = 0 from exp(-x^2/2): |v|_inf = (1 + 4 t^2)^{-1/4}.
        const Grid big = test::line(4096, 400.0);
        const auto v = spectral::free_propagator(test::gaussian(big), 1.0);
        CHECK(std::abs(sup_abs(v) - std::pow(5.0, -0.25)) < 1e-6);
    }
}

TEST_CASE("gradient energy") {
    const Grid ring = test::line(64, 2.0 * std::numbers::pi);
    ComplexField c(ring);
    std::fill(c.values.begin(), c.values.end(), Complex(1.0, 1.0));
    CHECK(spectral::gradient_sq_integral(c) == doctest::Approx(0.0));
    CHECK(spectral::gradient_sq_integral(plane_wave(ring, {2, 0, 0})) == doctest::Approx(4.0 * ring.volume()).epsilon(1e-13));
    const Grid big = test::line(1024, 40.0);
    CHECK(std::abs(spectral::gradient_sq_integral(test::gaussian(big)) - std::sqrt(std::numbers::pi) / 2.0) < 1e-8);
}

TEST_CASE("spectral derivative of a smooth field") {
    const Grid g = test::line(256, 30.0);
    const auto f = test::gaussian(g);
    const auto df = spectral::derivative(f, 0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double x = g.coordinate(0, i);
        CHECK(std::abs(df[i] - (-x * std::exp(-x * x / 2.0))) < 1e-11);
    }
}

TEST_CASE("elliptic gain never exceeds max(1, alpha^-2)") {
    const std::vector<Grid> grids{test::line(8, 0.5), test::line(2048, 100.0), Grid::cube(2, 128, 2.0),
                                  Grid(3, {8, 16, 32}, {1.0, 5.0, 0.3})};
    for (double alpha : {0.05, 0.1, 0.5, 1.0, 3.0}) {
        const double bound = std::max(1.0, 1.0 / (alpha * alpha));
        for (const auto& g : grids) {
            for (double x : spectral::elliptic_gain_table(g, alpha)) REQUIRE(x <= bound);
            for (double m : spectral::helmholtz_multiplier(g, alpha)) REQUIRE((m > 0.0 && m <= 1.0));
        }
    }
}

TEST_CASE("tail fraction") {
    const Grid g = test::line(64, 2.0 * std::numbers::pi);
    CHECK(tail_fraction(ComplexField(g)) == 0.0);
    CHECK(tail_fraction(plane_wave(g, {2, 0, 0})) == doctest::Approx(0.0));
    CHECK(tail_fraction(plane_wave(g, {30, 0, 0})) == doctest::Approx(1.0));
    auto mix = plane_wave(g, {2, 0, 0});
    const auto hi = plane_wave(g, {-25, 0, 0});
    for (std::size_t i = 0; i < mix.size(); ++i) mix[i] += hi[i];
    CHECK(tail_fraction(mix) == doctest::Approx(0.5));
}
