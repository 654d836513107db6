#include "shnls/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "shnls/kernels.hpp"
#include "shnls/spectral.hpp"

namespace shnls {

void StepControl::validate() const {
    if (!(dt_min > 0.0) || !(dt_init > 0.0) || !(dt_max > 0.0)) throw std::invalid_argument("step control: dt values must be > 0");
    if (!(dt_min <= dt_init && dt_init <= dt_max)) throw std::invalid_argument("step control: need dt_min <= dt_init <= dt_max");
    if (!(safety > 0.0 && safety <= 1.0)) throw std::invalid_argument("step control: safety must be in (0,1]");
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("step control: t_end must be >= 0");
    if (max_steps <= 0) throw std::invalid_argument("step control: max_steps must be > 0");
}

std::string to_string(Termination reason) {
    switch (reason) {
        case Termination::Completed: return "completed";
        case Termination::BlowupDetected: return "blowup-detected";
        case Termination::DtFloor: return "dt-floor";
        case Termination::StepBudget: return "step-budget";
    }
    return "?";
}

AdaptedStep adapt_dt_from_max_potential(double max_potential, const StepControl& control) {
    const double raw = control.safety / (1.0 + std::max(0.0, max_potential));
    AdaptedStep s;
    s.floor_hit = raw < control.dt_min;
    s.dt = std::clamp(raw, control.dt_min, control.dt_max);
    return s;
}

AdaptedStep adapt_dt(const EquationSpec& spec, const ComplexField& v, const StepControl& control) {
    const RealField w = potential_values(spec, v);
    return adapt_dt_from_max_potential(w.empty() ? 0.0 : kernels::max_value(w), control);
}

void nonlinear_substep_inplace(const EquationSpec& spec, ComplexField& v, double dt) {
    const RealField w = potential_values(spec, v);
    kernels::potential_phase(v.values, w, dt);
}

void strang_step_inplace(const EquationSpec& spec, ComplexField& v, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("strang_step: dt must be > 0");
    v.require_finite("strang_step");
    const auto& ksq = spectral::wavenumber_sq(v.grid);

    spectral::to_spectral_inplace(v);
    kernels::dispersive_phase(v.values, ksq, 0.5 * dt);
    spectral::from_spectral_inplace(v);

    v.require_finite("strang_step (after linear half-step)");
    nonlinear_substep_inplace(spec, v, dt);

    spectral::to_spectral_inplace(v);
    kernels::dispersive_phase(v.values, ksq, 0.5 * dt);
    spectral::from_spectral_inplace(v);
    v.require_finite("strang_step");
}

ComplexField strang_step(const EquationSpec& spec, const ComplexField& v, double dt) {
    ComplexField out = v;
    strang_step_inplace(spec, out, dt);
    return out;
}

namespace {

void notify(const std::vector<Observer>& observers, const ComplexField& v, double t, long step, bool final) {
    for (const auto& obs : observers) {
        if (!obs.callback) continue;
        const bool due = step == 0 || final || (obs.every > 0 && step % obs.every == 0);
        if (due) obs.callback(Observation{v, t, step, final});
    }
}

}  // namespace

RunResult run(const EquationSpec& spec, const ComplexField& v0, const RunSettings& settings) {
    const StepControl& control = settings.control;
    spec.validate();
    control.validate();
    settings.policy.validate();
    if (settings.diagnostics_every <= 0) throw std::invalid_argument("run: diagnostics_every must be > 0");
    v0.require_finite("run");

    RunResult result;
    result.field = v0;
    ComplexField& v = result.field;
    double t = 0.0;
    long step = 0;

    auto next_dt = [&]() -> AdaptedStep {
        if (!control.adaptive) return AdaptedStep{control.dt_init, false};
        return adapt_dt(spec, v, control);
    };

    AdaptedStep planned = next_dt();
    result.series.push_back(measure(spec, v, t, planned.dt));
    BlowupVerdict verdict = blowup_check(result.series, settings.policy);
    notify(settings.observers, v, t, step, false);

    ComplexField last_finite = v;
    while (t < control.t_end) {
        if (step >= control.max_steps) {
            result.reason = Termination::StepBudget;
            result.detail = "step budget of " + std::to_string(control.max_steps) + " exhausted";
            break;
        }
        if (planned.floor_hit && verdict.latest_tripped) {
            result.reason = Termination::DtFloor;
            result.detail = "dt floor reached while the blow-up monitor was tripping";
            result.blowup_time = t;
            break;
        }

        double dt = planned.dt;
        const double remaining = control.t_end - t;
        const bool last = remaining <= dt * (1.0 + 1e-9);
        if (last) dt = remaining;

        last_finite = v;
        try {
            strang_step_inplace(spec, v, dt);
        } catch (const NonFiniteError& e) {
            v = last_finite;
            result.reason = Termination::BlowupDetected;
            result.detail = std::string("non-finite state: ") + e.what();
            result.blowup_time = t;
            break;
        }
        t = last ? control.t_end : t + dt;
        ++step;

        if (step % settings.diagnostics_every == 0 || last) {
            result.series.push_back(measure(spec, v, t, dt));
            verdict = blowup_check(result.series, settings.policy);
            if (verdict.triggered) {
                result.reason = Termination::BlowupDetected;
                result.detail = "blow-up monitor tripped (" + verdict.reason + ")";
                result.blowup_time = t;
                break;
            }
        }
        if (!last) notify(settings.observers, v, t, step, false);
        if (t < control.t_end) planned = next_dt();
    }

    if (result.series.back().t != t) {
        result.series.push_back(measure(spec, v, t, planned.dt));
    }
    result.t_final = t;
    result.steps = step;
    notify(settings.observers, v, t, step, true);
    return result;
}

}  // namespace shnls
