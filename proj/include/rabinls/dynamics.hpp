// dynamics.hpp — Strang-split time integration with exact substeps.

#pragma once

#include <vector>

#include "rabinls/coupling.hpp"
#include "rabinls/diagnostics.hpp"
#include "rabinls/field.hpp"

namespace rabinls {

struct IntegratorConfig {
    double dt_base = 1e-3;
    double t_end = 1.0;
    int snapshot_stride = 25;      // snapshots every stride * dt_base
    double lambda_cfl = 0.1;       // step rule dt = min(dt_base, lambda_cfl/|lambda|)
    double blowup_threshold = 20.0;  // ratio on the gradient L2 norm
};

void validate(const IntegratorConfig& cfg);

struct RunStatus {
    enum Kind { Completed, BlowupDetected } kind = Completed;
    double t_stop = 0.0;      // detection time when blown up
    bool nonfinite = false;   // detection was triggered by non-finite values
};

struct Trajectory {
    SystemSpec spec;
    std::vector<double> times;                   // snapshot times
    std::vector<TwoComponentField> snapshots;    // aligned with times
    std::vector<DiagnosticRecord> diagnostics;   // one per accepted step (plus t = 0)
    RunStatus status;
    double dt_used = 0.0;
    bool final_step_shortened = false;
};

// Exact flow of the pure-cubic subsystem: moduli are invariant, phases rotate
// by -(c_self |own|^2 + c_cross |other|^2) tau.
TwoComponentField nonlinear_phase_step(const TwoComponentField& F, const SystemSpec& spec,
                                       double tau);

// Pointwise 2x2 rotation (cos(lambda tau) psi1 - i sin(lambda tau) psi2,
//                         -i sin(lambda tau) psi1 + cos(lambda tau) psi2).
TwoComponentField rabi_step(const TwoComponentField& F, double lambda, double tau);

// Multiplies both components by exp(-i (gamma^2/2) |x|^2 tau).
TwoComponentField potential_phase_step(const TwoComponentField& F, double gamma, double tau);

// Second-order composition. The trap and cubic phases commute exactly and are
// fused; the Rabi rotation is its own central stage. Limit systems skip it.
//   kinetic(dt/2) o phase(dt/2) o rabi(dt) o phase(dt/2) o kinetic(dt/2)
TwoComponentField strang_step(const TwoComponentField& F, const SystemSpec& spec, double dt);

Trajectory evolve(const TwoComponentField& F0, const SystemSpec& spec,
                  const IntegratorConfig& cfg);

}  // namespace rabinls
