#include <cmath>
#include <numbers>

#include "doctest.h"
#include "shnls/grid.hpp"
#include "shnls/kernels.hpp"
#include "shnls/threads.hpp"
#include "support.hpp"

using namespace shnls;

TEST_CASE("grid rejects bad shapes") {
    CHECK_THROWS_AS(Grid(1, {12, 1, 1}, {1.0, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(Grid(1, {4, 1, 1}, {1.0, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(Grid(2, {16, 16, 1}, {1.0, -1.0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(Grid(4, {16, 16, 1}, {1.0, 1.0, 1}), std::invalid_argument);
    CHECK_NOTHROW(Grid(3, {8, 16, 32}, {1.0, 2.0, 3.0}));
}

TEST_CASE("grid geometry") {
    const Grid g(2, {16, 32, 1}, {4.0, 8.0, 1.0});
    CHECK(g.size() == 512);
    CHECK(g.cell_volume() == doctest::Approx(0.25 * 0.25));
    CHECK(g.volume() == doctest::Approx(32.0));
    CHECK(g.coordinate(0, 0) == doctest::Approx(-2.0));
    CHECK(g.coordinate(0, 8) == doctest::Approx(0.0));
    const auto idx = g.unflatten(3 * 32 + 5);
    CHECK(idx[0] == 3);
    CHECK(idx[1] == 5);
}

TEST_CASE("wavenumbers are antisymmetric apart from Nyquist") {
    const Grid g = test::line(16, 2.0 * std::numbers::pi);
    const auto k = g.wavenumbers(0);
    CHECK(k[0] == 0.0);
    CHECK(k[1] == doctest::Approx(1.0));
    CHECK(k[8] == doctest::Approx(-8.0));
    for (std::size_t j = 1; j < 8; ++j) CHECK(k[j] == doctest::Approx(-k[16 - j]));
    CHECK(Grid::mode_index(15, 16) == -1);
}

TEST_CASE("non-finite samples are rejected") {
    ComplexField v(test::line(8, 1.0));
    CHECK(v.all_finite());
    v[3] = Complex(std::nan(""), 0.0);
    CHECK_FALSE(v.all_finite());
    CHECK_THROWS_AS(v.require_finite("here"), NonFiniteError);
}

TEST_CASE("parallel kernels agree with the serial reference") {
    const Grid g = Grid::cube(2, 128, 10.0);  // larger than one reduction block
    const auto v = test::random_field(g, 7);
    const auto ksq = g.wavenumber_sq_table();
    std::vector<double> w(v.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::abs(v[i]);

    for (int threads : {1, 2, 3}) {
        CAPTURE(threads);
        set_thread_count(threads);
        CHECK(kernels::parallel::sum_abs_sq(v.values) == doctest::Approx(kernels::serial::sum_abs_sq(v.values)).epsilon(1e-14));
        CHECK(kernels::parallel::weighted_sum_abs_sq(v.values, ksq) ==
              doctest::Approx(kernels::serial::weighted_sum_abs_sq(v.values, ksq)).epsilon(1e-14));
        CHECK(kernels::parallel::sum_product(w, ksq) == doctest::Approx(kernels::serial::sum_product(w, ksq)).epsilon(1e-14));
        CHECK(kernels::parallel::max_abs(v.values) == kernels::serial::max_abs(v.values));
        CHECK(kernels::parallel::max_value(w) == kernels::serial::max_value(w));
        CHECK(kernels::parallel::min_value(w) == kernels::serial::min_value(w));
        CHECK(kernels::parallel::max_abs_imag(v.values) == kernels::serial::max_abs_imag(v.values));
        CHECK(kernels::parallel::max_abs_real(v.values) == kernels::serial::max_abs_real(v.values));

        auto a = v.values;
        auto b = v.values;
        kernels::parallel::dispersive_phase(a, ksq, 0.3);
        kernels::serial::dispersive_phase(b, ksq, 0.3);
        CHECK(a == b);
        kernels::parallel::potential_phase(a, w, 0.1);
        kernels::serial::potential_phase(b, w, 0.1);
        CHECK(a == b);
        kernels::parallel::scale(a, 1.5);
        kernels::serial::scale(b, 1.5);
        CHECK(a == b);

        std::vector<double> pa(v.size()), pb(v.size());
        for (double p : {0.0, 1.0, 2.0, 3.0, 0.5}) {
            kernels::parallel::pow_abs(v.values, p, pa);
            kernels::serial::pow_abs(v.values, p, pb);
            CHECK(pa == pb);
        }
    }
    set_thread_count(0);
}

TEST_CASE("reductions do not depend on the thread count") {
    const Grid g = Grid::cube(2, 128, 10.0);
    const auto v = test::random_field(g, 11);
    set_thread_count(1);
    const double one = kernels::sum_abs_sq(v.values);
    set_thread_count(3);
    const double three = kernels::sum_abs_sq(v.values);
    set_thread_count(0);
    CHECK(one == three);
}

TEST_CASE("pow_abs matches the closed form and maps zero to zero") {
    std::vector<Complex> v{{3.0, 4.0}, {0.0, 0.0}, {0.0, -2.0}};
    std::vector<double> out(3);
    kernels::pow_abs(v, 3.0, out);
    CHECK(out[0] == doctest::Approx(125.0).epsilon(1e-14));
    CHECK(out[1] == 0.0);
    CHECK(out[2] == doctest::Approx(8.0).epsilon(1e-14));
    kernels::pow_abs(v, 0.0, out);
    CHECK(out[1] == 1.0);
}
