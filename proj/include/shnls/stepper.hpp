#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "shnls/diagnostics.hpp"
#include "shnls/grid.hpp"
#include "shnls/system.hpp"

namespace shnls {

struct StepControl {
    double dt_init = 1e-3;
    double dt_min = 1e-8;
    double dt_max = 1e-2;
    /// Safety constant c in dt = c / (1 + max W).
    double safety = 0.05;
    double t_end = 1.0;
    long max_steps = 10'000'000;
    /// false: every step uses dt_init (the last one is shortened to land on t_end).
    bool adaptive = true;

    void validate() const;
};

struct AdaptedStep {
    double dt = 0.0;
    /// The unclamped value fell below dt_min.
    bool floor_hit = false;
};

/// dt = clamp(c / (1 + max_x W(v)), dt_min, dt_max).
AdaptedStep adapt_dt(const EquationSpec& spec, const ComplexField& v, const StepControl& control);
/// Same rule from an already evaluated potential maximum.
AdaptedStep adapt_dt_from_max_potential(double max_potential, const StepControl& control);

/// One Strang step U(dt/2) N(dt) U(dt/2). N(dt) multiplies by exp(i W(v) dt) with W frozen at
/// substep entry; this is the exact nonlinear flow because W depends on |v| only and |v| is
/// invariant under it. Throws NonFiniteError if the result is not finite.
void strang_step_inplace(const EquationSpec& spec, ComplexField& v, double dt);
ComplexField strang_step(const EquationSpec& spec, const ComplexField& v, double dt);

/// Exact nonlinear substep alone: v * exp(i W(v) dt).
void nonlinear_substep_inplace(const EquationSpec& spec, ComplexField& v, double dt);

enum class Termination { Completed, BlowupDetected, DtFloor, StepBudget };

std::string to_string(Termination reason);

struct Observation {
    const ComplexField& field;
    double t;
    long step;
    bool final;
};

struct Observer {
    /// Invoked every `every` steps (every <= 0: only the initial and final states).
    long every = 0;
    std::function<void(const Observation&)> callback;
};

struct RunSettings {
    StepControl control;
    BlowupPolicy policy;
    /// Diagnostics (and blow-up checks) every this many steps; the initial and final states are
    /// always recorded.
    long diagnostics_every = 10;
    std::vector<Observer> observers;
};

struct RunResult {
    ComplexField field;
    Termination reason = Termination::Completed;
    std::string detail;
    double t_final = 0.0;
    long steps = 0;
    std::optional<double> blowup_time;
    std::vector<DiagnosticsRecord> series;
};

/// Integrates from v0 to control.t_end, or until the blow-up monitor fires, dt hits its floor
/// while the monitor is already tripping, or the step budget runs out. A non-finite state ends
/// the run as BlowupDetected and returns the last finite field.
RunResult run(const EquationSpec& spec, const ComplexField& v0, const RunSettings& settings);

}  // namespace shnls
