#include "rabinls/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rabinls/spectral.hpp"

namespace rabinls {

EffectiveCoefficients effective_coefficients(const CouplingMatrix& c) {
    EffectiveCoefficients e;
    e.chi = (c.b11 + 2.0 * c.b12 + c.b22) / 4.0;
    e.chi_tilde = (c.b11 + c.b22) / 2.0;
    return e;
}

void validate(const IntegratorConfig& cfg) {
    if (!(cfg.dt_base > 0.0)) throw std::invalid_argument("IntegratorConfig: dt_base must be positive");
    if (!(cfg.t_end > 0.0)) throw std::invalid_argument("IntegratorConfig: t_end must be positive");
    if (cfg.snapshot_stride < 1)
        throw std::invalid_argument("IntegratorConfig: snapshot_stride must be positive");
    if (!(cfg.lambda_cfl > 0.0))
        throw std::invalid_argument("IntegratorConfig: lambda_cfl must be positive");
    if (!(cfg.blowup_threshold > 0.0))
        throw std::invalid_argument("IntegratorConfig: blowup_threshold must be positive");
}

TwoComponentField nonlinear_phase_step(const TwoComponentField& F, const SystemSpec& spec,
                                       double tau) {
    double c_self1, c_cross1, c_self2, c_cross2;
    if (spec.kind == SystemKind::Original) {
        c_self1 = spec.coupling.b11;
        c_cross1 = spec.coupling.b12;
        c_self2 = spec.coupling.b22;
        c_cross2 = spec.coupling.b12;
    } else {
        c_self1 = c_self2 = spec.effective.chi;
        c_cross1 = c_cross2 = spec.effective.chi_tilde;
    }
    TwoComponentField out(F.grid());
    const std::size_t total = F.size();
    for (std::size_t i = 0; i < total; ++i) {
        const double a2 = std::norm(F.first.values[i]);
        const double b2 = std::norm(F.second.values[i]);
        out.first.values[i] =
            F.first.values[i] * std::polar(1.0, -(c_self1 * a2 + c_cross1 * b2) * tau);
        out.second.values[i] =
            F.second.values[i] * std::polar(1.0, -(c_self2 * b2 + c_cross2 * a2) * tau);
    }
    return out;
}

TwoComponentField rabi_step(const TwoComponentField& F, double lambda, double tau) {
    const double c = std::cos(lambda * tau);
    const double s = std::sin(lambda * tau);
    const Complex is{0.0, s};
    TwoComponentField out(F.grid());
    const std::size_t total = F.size();
    for (std::size_t i = 0; i < total; ++i) {
        const Complex a = F.first.values[i];
        const Complex b = F.second.values[i];
        out.first.values[i] = c * a - is * b;
        out.second.values[i] = -is * a + c * b;
    }
    return out;
}

TwoComponentField potential_phase_step(const TwoComponentField& F, double gamma, double tau) {
    const Grid& g = *F.grid();
    TwoComponentField out(F.grid());
    const std::size_t total = F.size();
    for (std::size_t i = 0; i < total; ++i) {
        const Complex phase = std::polar(1.0, -0.5 * gamma * gamma * g.radius_sq[i] * tau);
        out.first.values[i] = F.first.values[i] * phase;
        out.second.values[i] = F.second.values[i] * phase;
    }
    return out;
}

namespace {

// Trap + cubic phases commute exactly (both diagonal, modulus preserving),
// so one exponential covers both.
TwoComponentField phase_stage(const TwoComponentField& F, const SystemSpec& spec, double tau) {
    const bool original = spec.kind == SystemKind::Original;
    const double cs1 = original ? spec.coupling.b11 : spec.effective.chi;
    const double cc1 = original ? spec.coupling.b12 : spec.effective.chi_tilde;
    const double cs2 = original ? spec.coupling.b22 : spec.effective.chi;
    const double cc2 = original ? spec.coupling.b12 : spec.effective.chi_tilde;
    const Grid& g = *F.grid();
    const double vcoef = 0.5 * spec.gamma * spec.gamma;
    TwoComponentField out(F.grid());
    const std::size_t total = F.size();
    for (std::size_t i = 0; i < total; ++i) {
        const double a2 = std::norm(F.first.values[i]);
        const double b2 = std::norm(F.second.values[i]);
        const double v = vcoef * g.radius_sq[i];
        out.first.values[i] =
            F.first.values[i] * std::polar(1.0, -(v + cs1 * a2 + cc1 * b2) * tau);
        out.second.values[i] =
            F.second.values[i] * std::polar(1.0, -(v + cs2 * b2 + cc2 * a2) * tau);
    }
    return out;
}

TwoComponentField strang_step_with(const TwoComponentField& F, const SystemSpec& spec,
                                   double dt, const KineticPropagator& half) {
    TwoComponentField G(half.apply(F.first), half.apply(F.second));
    G = phase_stage(G, spec, 0.5 * dt);
    if (spec.kind == SystemKind::Original) G = rabi_step(G, spec.lambda, dt);
    G = phase_stage(G, spec, 0.5 * dt);
    return {half.apply(G.first), half.apply(G.second)};
}

}  // namespace

// dt < 0 runs the step backwards; every substep is exactly invertible.
TwoComponentField strang_step(const TwoComponentField& F, const SystemSpec& spec, double dt) {
    return strang_step_with(F, spec, dt, KineticPropagator(F.grid(), 0.5 * dt));
}

Trajectory evolve(const TwoComponentField& F0, const SystemSpec& spec,
                  const IntegratorConfig& cfg) {
    validate(cfg);

    const double dt_nominal =
        spec.kind == SystemKind::Original
            ? std::min(cfg.dt_base, cfg.lambda_cfl / std::max(1.0, std::abs(spec.lambda)))
            : cfg.dt_base;
    const double snap_interval = cfg.dt_base * cfg.snapshot_stride;

    Trajectory traj;
    traj.spec = spec;
    traj.times.push_back(0.0);
    traj.snapshots.push_back(F0);
    traj.diagnostics.push_back(record(F0, spec, 0.0));

    const double grad0 = traj.diagnostics.front().grad_l2;
    const double grad_limit = grad0 > 0.0
                                  ? cfg.blowup_threshold * grad0
                                  : std::numeric_limits<double>::infinity();

    // Snapshot boundaries; each interval is subdivided into equal steps of
    // size <= dt_nominal so that runs with different dt land on identical
    // snapshot times.
    std::vector<double> boundaries;
    for (int k = 1; k * snap_interval < cfg.t_end - 1e-12 * cfg.t_end; ++k)
        boundaries.push_back(k * snap_interval);
    boundaries.push_back(cfg.t_end);
    if (boundaries.size() >= 2) {
        const double last = boundaries[boundaries.size() - 1] - boundaries[boundaries.size() - 2];
        traj.final_step_shortened = last < snap_interval * (1.0 - 1e-12);
    } else {
        traj.final_step_shortened = cfg.t_end < snap_interval * (1.0 - 1e-12);
    }

    TwoComponentField F = F0;
    double t_prev = 0.0;
    bool first_interval = true;
    for (double t_next : boundaries) {
        const double interval = t_next - t_prev;
        const int m = std::max(1, static_cast<int>(std::ceil(interval / dt_nominal - 1e-9)));
        const double dt = interval / m;
        if (first_interval) {
            traj.dt_used = dt;
            first_interval = false;
        }
        const KineticPropagator half(F.grid(), 0.5 * dt);
        for (int s = 1; s <= m; ++s) {
            F = strang_step_with(F, spec, dt, half);
            const double t = (s == m) ? t_next : t_prev + s * dt;
            DiagnosticRecord rec = record(F, spec, t);
            traj.diagnostics.push_back(rec);
            const bool finite = std::isfinite(rec.grad_l2) && std::isfinite(rec.mass) &&
                                all_finite(F);
            if (!finite || rec.grad_l2 >= grad_limit) {
                traj.status.kind = RunStatus::BlowupDetected;
                traj.status.t_stop = t;
                traj.status.nonfinite = !finite;
                traj.times.push_back(t);
                traj.snapshots.push_back(F);
                return traj;
            }
        }
        traj.times.push_back(t_next);
        traj.snapshots.push_back(F);
        t_prev = t_next;
    }
    traj.status.kind = RunStatus::Completed;
    traj.status.t_stop = cfg.t_end;
    return traj;
}

}  // namespace rabinls
