#include <cmath>
#include <numbers>

#include "doctest.h"
#include "shnls/diagnostics.hpp"
#include "shnls/spectral.hpp"
#include "shnls/stepper.hpp"
#include "support.hpp"

using namespace shnls;

namespace {

const EquationSpec kNls{EquationKind::NLS, 1.0, 0.0};

double max_energy_drift(const EquationSpec& spec, ComplexField v, double dt, double t_end) {
    const double h0 = hamiltonian(spec, v);
    double worst = 0.0;
    const long steps = std::lround(t_end / dt);
    for (long s = 0; s < steps; ++s) {
        strang_step_inplace(spec, v, dt);
        worst = std::max(worst, std::abs(hamiltonian(spec, v) - h0));
    }
    return worst;
}

}  // namespace

TEST_CASE("zero stays zero") {
    const ComplexField zero(Grid::cube(2, 16, 4.0));
    CHECK(strang_step({EquationKind::SH, 1.0, 0.2}, zero, 0.1).values == zero.values);
}

TEST_CASE("plane waves follow the exact dispersion relation") {
    const Grid ring(1, {64, 1, 1}, {2.0 * std::numbers::pi, 1, 1});
    const Grid torus = Grid::cube(2, 32, 2.0 * std::numbers::pi);
    for (const EquationSpec& s : {kNls, EquationSpec{EquationKind::NLS, 2.0, 0.0}, EquationSpec{EquationKind::SH, 1.0, 0.3},
                                  EquationSpec{EquationKind::SH, 1.5, 1.0}}) {
        for (const Grid& g : {ring, torus}) {
            const double A = 0.9;
            const std::array<double, 2> k{3.0, g.dim() == 2 ? -2.0 : 0.0};
            ComplexField v(g);
            for (std::size_t i = 0; i < v.size(); ++i) {
                const auto idx = g.unflatten(i);
                double phase = 0.0;
                for (int d = 0; d < g.dim(); ++d) phase += k[static_cast<std::size_t>(d)] * g.coordinate(d, idx[static_cast<std::size_t>(d)]);
                v[i] = A * std::polar(1.0, phase);
            }
            const double omega = k[0] * k[0] + k[1] * k[1] - std::pow(A, 2.0 * s.sigma);
            const double dt = 0.013;
            const auto out = strang_step(s, v, dt);
            for (std::size_t i = 0; i < v.size(); ++i) REQUIRE(std::abs(out[i] - v[i] * std::polar(1.0, -omega * dt)) < 1e-12);
        }
    }
}

TEST_CASE("soliton rotates in phase") {
    const Grid g = test::line(1024, 80.0);
    auto v = test::sech(g);
    const auto v0 = v;
    for (int s = 0; s < 1000; ++s) strang_step_inplace(kNls, v, 1e-3);
    auto exact = v0;
    for (auto& z : exact.values) z *= std::polar(1.0, 1.0);
    // The splitting error of this run is 1.2e-6 in absolute L2 (5.9e-7 relative to the norm 2).
    CHECK(test::l2_diff(v, exact) / test::l2_norm(exact) < 1e-6);
}

TEST_CASE("mass is conserved step by step") {
    const Grid plane = Grid::cube(2, 64, 12.0);
    const auto v0 = test::smooth_random_field(plane, 4);
    for (const EquationSpec& s : {kNls, EquationSpec{EquationKind::SH, 1.0, 0.2}, EquationSpec{EquationKind::SH, 2.0, 0.5},
                                  EquationSpec{EquationKind::SN, 1.0, 0.4}}) {
        auto v = v0;
        const double n0 = mass(v);
        double prev = n0;
        for (int step = 0; step < 100; ++step) {
            strang_step_inplace(s, v, 2e-3);
            const double n = mass(v);
            REQUIRE(std::abs(n - prev) / n0 <= 1e-12);
            prev = n;
        }
    }
}

TEST_CASE("linear flow is reversible") {
    const Grid g = Grid::cube(2, 32, 6.0);
    const auto v0 = test::random_field(g, 8);
    auto v = v0;
    spectral::free_propagate_inplace(v, 0.05);
    spectral::free_propagate_inplace(v, -0.05);
    CHECK(test::max_diff(v, v0) < 1e-12);
}

TEST_CASE("Strang step is symmetric") {
    // The adjoint of the step S(dt) is S(-dt)^{-1}; self-adjointness means S(-dt) S(dt) = I.
    const Grid g = Grid::cube(2, 32, 8.0);
    const auto v0 = test::smooth_random_field(g, 6);
    for (const EquationSpec& s : {kNls, EquationSpec{EquationKind::SH, 1.0, 0.3}, EquationSpec{EquationKind::SN, 1.0, 0.3}}) {
        auto v = strang_step(s, v0, 0.01);
        // Negative dt is rejected by strang_step, so compose the substeps directly.
        spectral::free_propagate_inplace(v, -0.005);
        nonlinear_substep_inplace(s, v, -0.01);
        spectral::free_propagate_inplace(v, -0.005);
        CHECK(test::max_diff(v, v0) < 1e-12);
    }
}

TEST_CASE("nonlinear substep keeps |v| pointwise") {
    const Grid g = Grid::cube(2, 32, 8.0);
    const auto v0 = test::smooth_random_field(g, 10);
    for (const EquationSpec& s : {kNls, EquationSpec{EquationKind::SH, 1.5, 0.3}, EquationSpec{EquationKind::SN, 1.0, 0.3}}) {
        auto v = v0;
        nonlinear_substep_inplace(s, v, 0.7);
        double worst = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) worst = std::max(worst, std::abs(std::abs(v[i]) - std::abs(v0[i])));
        CHECK(worst <= 1e-13);
    }
}

TEST_CASE("energy drift is second order in dt") {
    // A non-stationary 1D profile: sech data above the soliton amplitude breathes.
    const Grid g = test::line(1024, 80.0);
    const auto v0 = test::sech(g, 1.2);
    auto v = v0;
    for (auto& z : v.values) z *= 1.2;
    const double d1 = max_energy_drift(kNls, v, 1e-2, 1.0);
    const double d2 = max_energy_drift(kNls, v, 5e-3, 1.0);
    CHECK(d2 / d1 == doctest::Approx(0.25).epsilon(0.2));
}

TEST_CASE("adaptive step rule") {
    StepControl c;
    c.dt_min = 1e-6;
    c.dt_init = 1e-3;
    c.dt_max = 1e-2;
    c.safety = 0.05;
    const ComplexField zero(test::line(64, 10.0));
    const auto s0 = adapt_dt(kNls, zero, c);
    CHECK(s0.dt == c.dt_max);
    CHECK_FALSE(s0.floor_hit);

    const auto a = adapt_dt_from_max_potential(1000.0, c);
    const auto b = adapt_dt_from_max_potential(2000.0, c);
    CHECK(a.dt / b.dt >= 1.8);
    CHECK(a.dt / b.dt <= 2.2);

    const auto floor = adapt_dt_from_max_potential(1e6, c);
    CHECK(floor.dt == c.dt_min);
    CHECK(floor.floor_hit);

    const auto field = test::gaussian(test::line(64, 10.0), 3.0);
    CHECK(adapt_dt(kNls, field, c).dt == doctest::Approx(0.05 / (1.0 + 9.0)));
}

TEST_CASE("step control validation") {
    StepControl c;
    CHECK_NOTHROW(c.validate());
    c.dt_min = 1.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = StepControl{};
    c.safety = 0.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = StepControl{};
    c.t_end = -1.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("run loop") {
    const Grid g = test::line(256, 40.0);
    RunSettings settings;
    settings.control.adaptive = false;
    settings.control.dt_init = 1e-2;

    SUBCASE("t_end = 0 returns the initial field") {
        settings.control.t_end = 0.0;
        const auto v0 = test::sech(g);
        const auto r = run(kNls, v0, settings);
        CHECK(r.reason == Termination::Completed);
        CHECK(r.steps == 0);
        CHECK(r.field.values == v0.values);
        CHECK(r.series.size() == 1);
    }
    SUBCASE("lands exactly on t_end and records the final state") {
        settings.control.t_end = 0.255;
        settings.diagnostics_every = 10;
        const auto r = run(kNls, test::sech(g), settings);
        CHECK(r.reason == Termination::Completed);
        CHECK(r.t_final == 0.255);
        CHECK(r.steps == 26);
        CHECK(r.series.back().t == 0.255);
        CHECK(r.series.size() == 4);  // t = 0, 0.1, 0.2, 0.255
    }
    SUBCASE("observers fire on their cadence plus the initial and final states") {
        settings.control.t_end = 0.1;
        std::vector<long> seen;
        settings.observers.push_back(Observer{3, [&](const Observation& o) { seen.push_back(o.step); }});
        run(kNls, test::sech(g), settings);
        CHECK(seen == std::vector<long>{0, 3, 6, 9, 10});
    }
    SUBCASE("step budget") {
        settings.control.t_end = 1.0;
        settings.control.max_steps = 5;
        const auto r = run(kNls, test::sech(g), settings);
        CHECK(r.reason == Termination::StepBudget);
        CHECK(r.steps == 5);
    }
    SUBCASE("zero data completes with a flat series") {
        settings.control.t_end = 0.5;
        const auto r = run(kNls, ComplexField(g), settings);
        CHECK(r.reason == Termination::Completed);
        for (const auto& rec : r.series) {
            CHECK(rec.mass == 0.0);
            CHECK(rec.sup_abs == 0.0);
        }
    }
    SUBCASE("non-finite input is rejected") {
        auto bad = test::sech(g);
        bad[5] = Complex(INFINITY, 0.0);
        CHECK_THROWS_AS(run(kNls, bad, settings), NonFiniteError);
    }
}

TEST_CASE("monitor ends a collapsing run") {
    // Strongly supercritical 1D quintic-plus data collapses quickly.
    const Grid g = test::line(512, 20.0);
    RunSettings settings;
    settings.control.t_end = 2.0;
    settings.control.dt_min = 1e-9;
    settings.diagnostics_every = 5;
    const EquationSpec quintic{EquationKind::NLS, 3.0, 0.0};
    const auto r = run(quintic, test::gaussian(g, 2.0, 1.0), settings);
    CHECK(r.reason != Termination::Completed);
    REQUIRE(r.blowup_time.has_value());
    CHECK(*r.blowup_time < 2.0);
    CHECK(r.field.all_finite());
}
