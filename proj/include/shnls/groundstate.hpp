#pragma once

// Radial ground states of  R'' + ((dim-1)/r) R' - R + R^{2 sigma + 1} = 0,  R'(0) = 0,  R -> 0,
// by shooting on R(0) and bisection. dim = 2, sigma = 1 is the Townes soliton; its L^2 mass is
// the critical power of the 2D cubic NLS.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "shnls/grid.hpp"

namespace shnls::groundstate {

enum class ShotOutcome { Overshoot, Undershoot, DecayProfile };

std::string to_string(ShotOutcome outcome);

struct ShootingOptions {
    double r_max = 25.0;
    /// |R| below this at r_max counts as a decayed profile.
    double decay_floor = 1e-10;
    /// Absolute and relative local error tolerance of the adaptive integrator.
    double ode_tolerance = 1e-12;
    /// Offset of the series start away from the r = 0 singularity.
    double start_offset = 1e-4;
    /// Spacing of the sampled profile.
    double sample_spacing = 1e-3;
};

struct ShotResult {
    ShotOutcome outcome = ShotOutcome::Undershoot;
    /// Radius where the integration stopped.
    double r_stop = 0.0;
};

/// Series start at r = h:  R(h) = R0 + h^2/(2 dim) (R0 - R0^{2 sigma + 1}),  R'(h) = (h/dim)(R0 - R0^{2 sigma + 1}).
std::pair<double, double> series_start(double sigma, int dim, double r0, double h);

/// Integrates outward from the series start. Overshoot: R crosses zero. Undershoot: R' turns
/// positive while R > 0, or r_max is reached with |R| above the decay floor.
/// Throws std::invalid_argument for R0 <= 0, sigma <= 0 or dim outside 1..3.
ShotResult shoot(double sigma, int dim, double r0, const ShootingOptions& options = {});

struct RadialProfile {
    double sigma = 1.0;
    int dim = 2;
    double R0 = 0.0;
    /// ang * integral R^2 r^{dim-1} dr with ang = 2, 2 pi, 4 pi for dim = 1, 2, 3.
    double power = 0.0;
    double tol = 0.0;
    double r_max = 0.0;
    /// Beyond r_cut the profile is the decaying solution of the linearized equation.
    double r_cut = 0.0;
    std::vector<double> r;
    std::vector<double> R;
    /// dR/dr at the same samples.
    std::vector<double> dR;

    /// Cubic interpolation in r; 0 beyond r_max.
    double operator()(double radius) const;
};

/// Bisects R0 on `bracket` to width <= tol and samples the profile on [0, r_max].
/// Throws std::invalid_argument if both bracket ends give the same outcome.
RadialProfile solve_ground_state(double sigma, int dim, std::pair<double, double> bracket, double tol = 1e-12,
                                 const ShootingOptions& options = {});

/// Critical power for the 2D cubic case, cached after the first call.
const RadialProfile& townes_profile();

/// Angular factor of the radial power integral.
double angular_factor(int dim);

/// Residual R'' + ((dim-1)/r) R' - R + R^{2 sigma + 1} by 4th-order central differences on the
/// sampled profile, maximized over [r_lo, r_hi] and over stencils that stay inside [0, r_cut].
double max_ode_residual(const RadialProfile& profile, double r_lo, double r_hi);

/// s * R(|x - center| / w) on the grid, centered at the box center, as a real field.
/// Throws std::invalid_argument unless w * r_max covers the inscribed radius min_d L_d / 2.
ComplexField deposit(const RadialProfile& profile, const Grid& grid, double amplitude_scale, double width_scale);

/// CSV with columns r,R.
void write_profile_csv(std::ostream& os, const RadialProfile& profile);
/// JSON sidecar: sigma, dim, R0, power, tol, r_max (plus r_cut).
std::string profile_sidecar_json(const RadialProfile& profile);

}  // namespace shnls::groundstate
