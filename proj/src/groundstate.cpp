#include "shnls/groundstate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <boost/numeric/odeint.hpp>
#include "json.hpp"

namespace shnls::groundstate {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::array<double, 2>;  // {R, R'}

struct RadialOde {
    double sigma;
    int dim;
    void operator()(const State& y, State& dydr, double r) const {
        const double R = y[0];
        dydr[0] = y[1];
        dydr[1] = -(dim - 1) / r * y[1] + R - std::pow(std::abs(R), 2.0 * sigma) * R;
    }
};

void check_arguments(double sigma, int dim, double r0) {
    if (!(r0 > 0.0)) throw std::invalid_argument("shoot: R0 must be > 0");
    if (!(sigma > 0.0)) throw std::invalid_argument("shoot: sigma must be > 0");
    if (dim < 1 || dim > 3) throw std::invalid_argument("shoot: dim must be 1, 2 or 3");
}

enum class Event { None, Overshoot, Undershoot };

Event classify(const State& y) {
    if (y[0] < 0.0) return Event::Overshoot;
    if (y[1] > 0.0) return Event::Undershoot;
    return Event::None;
}

// Samples of one shot on r_i = i * spacing, up to the first event or r_max.
struct Trajectory {
    ShotResult shot;
    std::vector<double> R;
    std::vector<double> dR;
};

struct StopIntegration {};

// Bisection shots only need the outcome, so they step freely.
Trajectory integrate_outcome(double sigma, int dim, double r0, const ShootingOptions& opt) {
    const RadialOde ode{sigma, dim};
    const double h = opt.start_offset;
    const auto [R_h, dR_h] = series_start(sigma, dim, r0, h);
    State y{R_h, dR_h};
    auto stepper = odeint::make_dense_output(opt.ode_tolerance, opt.ode_tolerance, odeint::runge_kutta_dopri5<State>());
    stepper.initialize(y, h, std::min(1e-3, opt.sample_spacing));
    Trajectory traj;
    while (true) {
        const auto [r_old, r_new] = stepper.do_step(ode);
        (void)r_old;
        const State& cur = stepper.current_state();
        const Event ev = classify(cur);
        if (ev != Event::None) {
            traj.shot.outcome = ev == Event::Overshoot ? ShotOutcome::Overshoot : ShotOutcome::Undershoot;
            traj.shot.r_stop = r_new;
            return traj;
        }
        if (r_new >= opt.r_max) {
            traj.shot.r_stop = r_new;
            traj.shot.outcome = std::abs(cur[0]) < opt.decay_floor ? ShotOutcome::DecayProfile : ShotOutcome::Undershoot;
            return traj;
        }
    }
}

// Sampled shot: the controlled stepper lands exactly on every sample radius, so the samples carry
// no interpolation error. Stops at the first sample that shows an event.
Trajectory integrate_sampled(double sigma, int dim, double r0, const ShootingOptions& opt) {
    const RadialOde ode{sigma, dim};
    const double h = opt.start_offset;
    const auto total = static_cast<std::size_t>(std::llround(opt.r_max / opt.sample_spacing)) + 1;

    Trajectory traj;
    traj.R.reserve(total);
    traj.dR.reserve(total);
    traj.R.push_back(r0);
    traj.dR.push_back(0.0);
    std::size_t first = 1;
    std::vector<double> radii{h};
    for (std::size_t i = first; i < total; ++i) {
        const double r = static_cast<double>(i) * opt.sample_spacing;
        if (r < h) {
            // Inside the series region: even expansion about r = 0.
            const auto [Rs, dRs] = series_start(sigma, dim, r0, r);
            traj.R.push_back(Rs);
            traj.dR.push_back(dRs);
        } else {
            radii.push_back(r);
        }
    }
    const auto [R_h, dR_h] = series_start(sigma, dim, r0, h);
    State y{R_h, dR_h};
    auto stepper = odeint::make_controlled(opt.ode_tolerance, opt.ode_tolerance, odeint::runge_kutta_dopri5<State>());
    bool skip_start = true;
    try {
        odeint::integrate_times(stepper, ode, y, radii.begin(), radii.end(), std::min(1e-4, opt.sample_spacing),
                                [&](const State& s, double r) {
                                    if (skip_start) {
                                        skip_start = false;
                                        return;
                                    }
                                    const Event ev = classify(s);
                                    if (ev != Event::None) {
                                        traj.shot.outcome =
                                            ev == Event::Overshoot ? ShotOutcome::Overshoot : ShotOutcome::Undershoot;
                                        traj.shot.r_stop = r;
                                        throw StopIntegration{};
                                    }
                                    traj.R.push_back(s[0]);
                                    traj.dR.push_back(s[1]);
                                });
        traj.shot.r_stop = opt.r_max;
        traj.shot.outcome = std::abs(y[0]) < opt.decay_floor ? ShotOutcome::DecayProfile : ShotOutcome::Undershoot;
    } catch (const StopIntegration&) {
    }
    return traj;
}

Trajectory integrate(double sigma, int dim, double r0, const ShootingOptions& opt, bool keep_samples) {
    check_arguments(sigma, dim, r0);
    return keep_samples ? integrate_sampled(sigma, dim, r0, opt) : integrate_outcome(sigma, dim, r0, opt);
}

// Decaying solution of the linearized equation R'' + ((dim-1)/r) R' - R = 0 and its derivative.
std::pair<double, double> linear_tail(int dim, double r) {
    switch (dim) {
        case 1: return {std::exp(-r), -std::exp(-r)};
        case 2: return {std::cyl_bessel_k(0.0, r), -std::cyl_bessel_k(1.0, r)};
        default: return {std::exp(-r) / r, -std::exp(-r) * (1.0 / r + 1.0 / (r * r))};
    }
}

double simpson_power(const std::vector<double>& r, const std::vector<double>& R, int dim) {
    const std::size_t n = R.size();
    auto f = [&](std::size_t i) { return R[i] * R[i] * std::pow(r[i], dim - 1); };
    if (n < 3) return 0.0;
    const double dr = r[1] - r[0];
    const std::size_t intervals = n - 1;
    const std::size_t even = intervals - intervals % 2;
    double s = f(0) + f(even);
    for (std::size_t i = 1; i < even; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i);
    double integral = s * dr / 3.0;
    if (even < intervals) integral += 0.5 * dr * (f(even) + f(intervals));
    return angular_factor(dim) * integral;
}

}  // namespace

std::string to_string(ShotOutcome outcome) {
    switch (outcome) {
        case ShotOutcome::Overshoot: return "overshoot";
        case ShotOutcome::Undershoot: return "undershoot";
        case ShotOutcome::DecayProfile: return "decay-profile";
    }
    return "?";
}

std::pair<double, double> series_start(double sigma, int dim, double r0, double h) {
    const double curvature = r0 - std::pow(r0, 2.0 * sigma + 1.0);
    return {r0 + h * h / (2.0 * dim) * curvature, h / dim * curvature};
}

ShotResult shoot(double sigma, int dim, double r0, const ShootingOptions& options) {
    return integrate(sigma, dim, r0, options, false).shot;
}

double angular_factor(int dim) {
    switch (dim) {
        case 1: return 2.0;
        case 2: return 2.0 * std::numbers::pi;
        case 3: return 4.0 * std::numbers::pi;
        default: throw std::invalid_argument("angular_factor: dim must be 1, 2 or 3");
    }
}

RadialProfile solve_ground_state(double sigma, int dim, std::pair<double, double> bracket, double tol,
                                 const ShootingOptions& options) {
    auto [lo, hi] = bracket;
    if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("solve_ground_state: bracket must satisfy 0 < lo < hi");
    if (!(tol > 0.0)) throw std::invalid_argument("solve_ground_state: tol must be > 0");
    const ShotOutcome out_lo = shoot(sigma, dim, lo, options).outcome;
    const ShotOutcome out_hi = shoot(sigma, dim, hi, options).outcome;
    if (out_lo == out_hi) {
        throw std::invalid_argument("solve_ground_state: invalid bracket, both ends give " + to_string(out_lo));
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const ShotOutcome o = shoot(sigma, dim, mid, options).outcome;
        if (o == ShotOutcome::DecayProfile) {
            lo = hi = mid;
            break;
        }
        (o == out_lo ? lo : hi) = mid;
    }

    RadialProfile p;
    p.sigma = sigma;
    p.dim = dim;
    p.R0 = 0.5 * (lo + hi);
    p.tol = tol;
    p.r_max = options.r_max;

    // The two bracket ends agree with the ground state until their shooting error grows; the
    // profile is their mean up to where they separate, then the linear decaying tail.
    const Trajectory a = integrate(sigma, dim, lo, options, true);
    const Trajectory b = integrate(sigma, dim, hi, options, true);
    const std::size_t common = std::min(a.R.size(), b.R.size());
    std::size_t cut = 0;
    for (std::size_t i = 0; i < common; ++i) {
        const double mean = 0.5 * (a.R[i] + b.R[i]);
        if (!(mean > 0.0) || std::abs(a.R[i] - b.R[i]) > 1e-3 * mean) break;
        cut = i;
    }
    if (cut < 4) throw std::runtime_error("solve_ground_state: shooting trajectories separated immediately");

    const auto total = static_cast<std::size_t>(std::llround(options.r_max / options.sample_spacing)) + 1;
    p.r.resize(total);
    p.R.resize(total);
    p.dR.resize(total);
    for (std::size_t i = 0; i < total; ++i) p.r[i] = static_cast<double>(i) * options.sample_spacing;
    for (std::size_t i = 0; i <= cut; ++i) {
        p.R[i] = 0.5 * (a.R[i] + b.R[i]);
        p.dR[i] = 0.5 * (a.dR[i] + b.dR[i]);
    }
    p.r_cut = p.r[cut];
    const double g_cut = linear_tail(dim, p.r_cut).first;
    const double scale = p.R[cut] / g_cut;
    for (std::size_t i = cut + 1; i < total; ++i) {
        const auto [g, dg] = linear_tail(dim, p.r[i]);
        p.R[i] = scale * g;
        p.dR[i] = scale * dg;
    }
    p.power = simpson_power(p.r, p.R, dim);
    return p;
}

const RadialProfile& townes_profile() {
    static const RadialProfile profile = solve_ground_state(1.0, 2, {1.0, 3.0}, 1e-12);
    return profile;
}

double RadialProfile::operator()(double radius) const {
    radius = std::abs(radius);
    if (r.size() < 4 || radius > r_max) return 0.0;
    const double dr = r[1] - r[0];
    const auto n = static_cast<long>(R.size());
    long i = static_cast<long>(std::floor(radius / dr));
    i = std::min(i, n - 2);
    const double s = radius / dr - static_cast<double>(i);
    // Four-point Lagrange cubic on i-1..i+2; R is even, so reflect indices below zero.
    auto at = [&](long j) {
        j = std::abs(j);
        return R[static_cast<std::size_t>(std::min(j, n - 1))];
    };
    const double f0 = at(i - 1), f1 = at(i), f2 = at(i + 1), f3 = at(i + 2);
    return -f0 * s * (s - 1.0) * (s - 2.0) / 6.0 + f1 * (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0 -
           f2 * (s + 1.0) * s * (s - 2.0) / 2.0 + f3 * (s + 1.0) * s * (s - 1.0) / 6.0;
}

double max_ode_residual(const RadialProfile& p, double r_lo, double r_hi) {
    if (p.r.size() < 5) return 0.0;
    const double dr = p.r[1] - p.r[0];
    double worst = 0.0;
    for (std::size_t i = 2; i + 2 < p.r.size(); ++i) {
        const double r = p.r[i];
        // Stencils reaching past r_cut would straddle the junction with the linear tail.
        if (r < r_lo || r > r_hi || p.r[i + 2] > p.r_cut) continue;
        // R'' from a 4th-order difference of the R' samples, and R' itself checked against R.
        const double d2 = (-p.dR[i + 2] + 8.0 * p.dR[i + 1] - 8.0 * p.dR[i - 1] + p.dR[i - 2]) / (12.0 * dr);
        const double d1 = (-p.R[i + 2] + 8.0 * p.R[i + 1] - 8.0 * p.R[i - 1] + p.R[i - 2]) / (12.0 * dr);
        const double R = p.R[i];
        const double res = d2 + (p.dim - 1) / r * p.dR[i] - R + std::pow(std::abs(R), 2.0 * p.sigma) * R;
        worst = std::max({worst, std::abs(res), std::abs(d1 - p.dR[i])});
    }
    return worst;
}

ComplexField deposit(const RadialProfile& profile, const Grid& grid, double amplitude_scale, double width_scale) {
    if (!(width_scale > 0.0)) throw std::invalid_argument("deposit: width scale must be > 0");
    double inscribed = grid.length(0);
    for (int d = 1; d < grid.dim(); ++d) inscribed = std::min(inscribed, grid.length(d));
    inscribed *= 0.5;
    if (profile.r_max * width_scale < inscribed) {
        throw std::invalid_argument("deposit: profile r_max " + std::to_string(profile.r_max) + " (scaled " +
                                    std::to_string(profile.r_max * width_scale) +
                                    ") does not cover the inscribed radius " + std::to_string(inscribed));
    }
    ComplexField out(grid);
    if (amplitude_scale == 0.0) return out;
    const auto rsq = grid.radius_sq_table();
    for (std::size_t i = 0; i < rsq.size(); ++i) {
        out.values[i] = Complex(amplitude_scale * profile(std::sqrt(rsq[i]) / width_scale), 0.0);
    }
    return out;
}

void write_profile_csv(std::ostream& os, const RadialProfile& profile) {
    os << "r,R\n";
    char buf[96];
    for (std::size_t i = 0; i < profile.r.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", profile.r[i], profile.R[i]);
        os << buf;
    }
}

std::string profile_sidecar_json(const RadialProfile& profile) {
    nlohmann::ordered_json j;
    j["sigma"] = profile.sigma;
    j["dim"] = profile.dim;
    j["R0"] = profile.R0;
    j["power"] = profile.power;
    j["tol"] = profile.tol;
    j["r_max"] = profile.r_max;
    j["r_cut"] = profile.r_cut;
    return j.dump(2);
}

}  // namespace shnls::groundstate
