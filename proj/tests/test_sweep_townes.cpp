// Full-resolution 2D sweeps from Townes data; slow (about two minutes on one core).

#include "doctest.h"
#include "shnls/harness.hpp"
#include "support.hpp"

using namespace shnls;
using namespace shnls::harness;

namespace {

SweepConfig townes_sweep(double power_multiple, std::vector<double> alphas, const std::filesystem::path& dir) {
    SweepConfig s;
    s.base.grid = Grid::cube(2, 256, 24.0);
    s.base.equation = {EquationKind::SH, 1.0, alphas.front()};
    s.base.initial.shape = TownesInit{power_multiple};
    s.base.step.t_end = 5.0;
    s.base.step.dt_min = 1e-7;
    s.base.step.dt_max = 1e-2;
    s.base.step.safety = 0.05;
    s.alphas = std::move(alphas);
    s.directory = dir;
    return s;
}

}  // namespace

TEST_CASE("supercritical data: every SH run completes and the peak grows as alpha shrinks") {
    const auto report = alpha_sweep(townes_sweep(1.2, {0.4, 0.2, 0.1}, test::scratch_dir("sweep_townes_12")));
    REQUIRE(report.entries.size() == 3);
    double prev = 0.0;
    for (const auto& e : report.entries) {
        CAPTURE(e.label);
        REQUIRE_FALSE(e.failed);
        CHECK(e.summary->reason == Termination::Completed);
        CHECK(e.summary->peak_sup_abs >= prev);
        prev = e.summary->peak_sup_abs;
    }
    CHECK(report.all_regularized_completed);
    CHECK(report.peak_sup_nondecreasing);
}

TEST_CASE("subcritical data: the NLS baseline disperses and completes") {
    auto s = townes_sweep(0.8, {0.4}, test::scratch_dir("sweep_townes_08"));
    s.include_nls_baseline = true;
    const auto report = alpha_sweep(s);
    REQUIRE(report.entries.size() == 2);
    const auto& nls = report.entries.back();
    CHECK(nls.kind == EquationKind::NLS);
    REQUIRE_FALSE(nls.failed);
    CHECK(nls.summary->reason == Termination::Completed);
    CHECK_FALSE(nls.summary->blowup_time.has_value());
}
