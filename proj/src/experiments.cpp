#include "rabinls/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <iostream>
#include <stdexcept>
#include <thread>

#include "rabinls/norms.hpp"
#include "rabinls/spectral.hpp"

namespace rabinls {

GridPtr make_scenario_grid(const Scenario& s) {
    return make_grid(s.dim, s.points_per_dim, s.half_width);
}

namespace {

ScalarField sample_component(const Scenario& s, const GaussianComponent& comp,
                             const GridPtr& grid) {
    if (s.datum == DatumKind::GroundState) {
        const double norm_const = std::pow(s.gamma / M_PI, 0.25 * grid->dim);
        return sample_field(grid, [&](const Point& p) {
            double r2 = 0.0;
            for (int a = 0; a < grid->dim; ++a) r2 += p[a] * p[a];
            return Complex(comp.amplitude * norm_const * std::exp(-0.5 * s.gamma * r2), 0.0);
        });
    }
    return sample_field(grid, [&](const Point& p) {
        double r2 = 0.0, phase = 0.0;
        for (int a = 0; a < grid->dim; ++a) {
            const double d = p[a] - comp.center[a];
            r2 += d * d;
            phase += comp.phase_ramp[a] * p[a];
        }
        const double amp = comp.amplitude * std::exp(-0.5 * r2 / (comp.width * comp.width));
        return std::polar(amp, phase);
    });
}

}  // namespace

TwoComponentField make_initial_datum(const Scenario& s, const GridPtr& grid) {
    return {sample_component(s, s.comp1, grid), sample_component(s, s.comp2, grid)};
}

Scenario standard_cubic_scenario() {
    Scenario s;
    s.dim = 1;
    s.points_per_dim = 512;
    s.half_width = 10.0;
    s.coupling = {1.0, 0.5, 2.0};
    s.gamma = 1.0;
    s.datum = DatumKind::Gaussian;
    s.comp1 = {std::pow(1.0 / M_PI, 0.25), 1.0, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}};
    s.comp2 = {0.5 * std::pow(1.0 / M_PI, 0.25), 1.0, {1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}};
    s.t_end = 1.0;
    s.integrator.dt_base = 1e-3;
    s.integrator.t_end = 1.0;
    s.integrator.snapshot_stride = 25;
    return s;
}

Trajectory run_limit_reference(const Scenario& s) {
    const GridPtr grid = make_scenario_grid(s);
    const TwoComponentField psi0 = make_initial_datum(s, grid);
    const SystemSpec limit = limit_of(s.coupling, s.gamma);

    // advisory only: the run proceeds either way and collapse is caught below
    const Verdict advisory = gwp_limit(s.coupling);
    if (advisory.outcome != Outcome::GlobalGuaranteed)
        std::clog << "[limit] global existence not guaranteed by the coefficient signs; "
                     "proceeding\n";

    IntegratorConfig cfg = s.integrator;
    cfg.t_end = s.t_end;
    Trajectory traj = evolve(hadamard_mix(psi0), limit, cfg);
    if (traj.status.kind == RunStatus::BlowupDetected)
        throw std::runtime_error(
            "run_limit_reference: the limit system collapsed at t = " +
            std::to_string(traj.status.t_stop) +
            " < t_end; the comparison horizon must stay below the limit "
            "system's existence time");
    return traj;
}

namespace {

// L^r norm from a precomputed pointwise squared modulus.
double lr_from_modulus_sq(const GridPtr& grid, const std::vector<double>& msq, double r) {
    if (std::isinf(r)) {
        double m = 0.0;
        for (double v : msq) m = std::max(m, v);
        return std::sqrt(m);
    }
    double sum = 0.0;
    for (double v : msq) sum += std::pow(v, 0.5 * r);
    return std::pow(std::pow(grid->spacing, grid->dim) * sum, 1.0 / r);
}

struct SnapshotErrorNorms {
    double sigma = 0.0;
    double l2_value = 0.0, l2_grad = 0.0, l2_xw = 0.0;
    double l4_value = 0.0, l4_grad = 0.0, l4_xw = 0.0;
};

SnapshotErrorNorms profile_error_norms(const TwoComponentField& psi,
                                       const TwoComponentField& profile) {
    const GridPtr& grid = psi.grid();
    const Grid& g = *grid;
    const std::size_t total = psi.size();

    TwoComponentField diff(grid);
    for (std::size_t i = 0; i < total; ++i) {
        diff.first.values[i] = psi.first.values[i] - profile.first.values[i];
        diff.second.values[i] = psi.second.values[i] - profile.second.values[i];
    }

    std::vector<double> msq_value(total), msq_grad(total, 0.0), msq_xw(total);
    auto d1 = spectral_gradient(diff.first);
    auto d2 = spectral_gradient(diff.second);
    for (std::size_t i = 0; i < total; ++i) {
        const double v = std::norm(diff.first.values[i]) + std::norm(diff.second.values[i]);
        msq_value[i] = v;
        for (int a = 0; a < g.dim; ++a)
            msq_grad[i] += std::norm(d1[a].values[i]) + std::norm(d2[a].values[i]);
        msq_xw[i] = g.radius_sq[i] * v;
    }

    SnapshotErrorNorms out;
    out.l2_value = lr_from_modulus_sq(grid, msq_value, 2.0);
    out.l2_grad = lr_from_modulus_sq(grid, msq_grad, 2.0);
    out.l2_xw = lr_from_modulus_sq(grid, msq_xw, 2.0);
    out.l4_value = lr_from_modulus_sq(grid, msq_value, 4.0);
    out.l4_grad = lr_from_modulus_sq(grid, msq_grad, 4.0);
    out.l4_xw = lr_from_modulus_sq(grid, msq_xw, 4.0);
    out.sigma = out.l2_value + out.l2_grad + out.l2_xw;
    return out;
}

SweepResult sweep_single(const Scenario& s, double lambda, const Trajectory& reference) {
    const GridPtr grid = reference.snapshots.front().grid();
    const TwoComponentField psi0 = make_initial_datum(s, grid);
    IntegratorConfig cfg = s.integrator;
    cfg.t_end = s.t_end;
    const SystemSpec orig = original_system(s.coupling, lambda, s.gamma);
    Trajectory traj = evolve(psi0, orig, cfg);

    SweepResult res;
    res.lambda = lambda;
    res.original_status = traj.status;
    res.limit_status = reference.status;
    const double grad0 = traj.diagnostics.front().grad_l2;
    res.original_grad_ratio =
        grad0 > 0.0 ? traj.diagnostics.back().grad_l2 / grad0 : 0.0;

    const double q_l4 = 8.0 / grid->dim;
    const double inf = std::numeric_limits<double>::infinity();
    MixedNormAccumulator acc_l2_value(inf, 2.0), acc_l2_grad(inf, 2.0), acc_l2_xw(inf, 2.0);
    MixedNormAccumulator acc_l4_value(q_l4, 4.0), acc_l4_grad(q_l4, 4.0), acc_l4_xw(q_l4, 4.0);

    // Shared snapshot prefix: the solver pins both runs to identical
    // boundary times; a collapsed run contributes only what it reached.
    std::size_t shared = std::min(traj.times.size(), reference.times.size());
    double sup_sigma = 0.0;
    std::size_t used = 0;
    for (std::size_t k = 0; k < shared; ++k) {
        if (std::abs(traj.times[k] - reference.times[k]) > 1e-12) break;
        const double t = traj.times[k];
        const TwoComponentField profile = asymptotic_profile(reference.snapshots[k], lambda, t);
        const SnapshotErrorNorms e = profile_error_norms(traj.snapshots[k], profile);
        sup_sigma = std::max(sup_sigma, e.sigma);
        acc_l2_value.add(t, e.l2_value);
        acc_l2_grad.add(t, e.l2_grad);
        acc_l2_xw.add(t, e.l2_xw);
        acc_l4_value.add(t, e.l4_value);
        acc_l4_grad.add(t, e.l4_grad);
        acc_l4_xw.add(t, e.l4_xw);
        ++used;
    }
    res.err_sup_sigma = sup_sigma;
    if (used >= 2) {
        res.err_linf_l2 = {mixed_norm(acc_l2_value), mixed_norm(acc_l2_grad),
                           mixed_norm(acc_l2_xw)};
        res.err_q_l4 = {mixed_norm(acc_l4_value), mixed_norm(acc_l4_grad),
                        mixed_norm(acc_l4_xw)};
    }
    return res;
}

}  // namespace

std::vector<SweepResult> run_lambda_sweep(const Scenario& s, const std::vector<double>& lambdas,
                                          int jobs) {
    if (lambdas.empty()) throw std::invalid_argument("run_lambda_sweep: empty lambda list");
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (lambdas[i] == 0.0)
            throw std::invalid_argument("run_lambda_sweep: lambda values must be nonzero");
        if (i > 0 && std::abs(lambdas[i]) <= std::abs(lambdas[i - 1]))
            throw std::invalid_argument(
                "run_lambda_sweep: lambda values must be increasing in modulus");
    }

    const Trajectory reference = run_limit_reference(s);

    if (jobs <= 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        jobs = static_cast<int>(std::max(1u, hw));
    }
    jobs = std::min<int>(jobs, static_cast<int>(lambdas.size()));

    std::vector<SweepResult> results(lambdas.size());
    if (jobs == 1) {
        for (std::size_t i = 0; i < lambdas.size(); ++i)
            results[i] = sweep_single(s, lambdas[i], reference);
        return results;
    }
    std::vector<std::future<SweepResult>> futures;
    futures.reserve(lambdas.size());
    for (double lambda : lambdas)
        futures.push_back(std::async(std::launch::async, [&, lambda] {
            return sweep_single(s, lambda, reference);
        }));
    for (std::size_t i = 0; i < futures.size(); ++i) results[i] = futures[i].get();
    return results;
}

double fit_rate(const std::vector<SweepResult>& results) {
    std::vector<double> lx, ly;
    for (const auto& r : results) {
        if (r.original_status.kind != RunStatus::Completed) continue;
        if (r.limit_status.kind != RunStatus::Completed) continue;
        if (!(r.err_sup_sigma > 0.0)) continue;
        lx.push_back(std::log(std::abs(r.lambda)));
        ly.push_back(std::log(r.err_sup_sigma));
    }
    const std::size_t n = lx.size();
    if (n < 3) throw std::invalid_argument("fit_rate: need at least 3 usable sweep points");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<std::pair<double, double>> dt_self_convergence(const Scenario& s,
                                                           const std::vector<double>& dts) {
    if (dts.empty()) throw std::invalid_argument("dt_self_convergence: empty dt list");
    for (std::size_t i = 0; i < dts.size(); ++i) {
        if (!(dts[i] > 0.0)) throw std::invalid_argument("dt_self_convergence: dt must be positive");
        const double ratio = s.t_end / dts[i];
        if (std::abs(ratio - std::round(ratio)) > 1e-9)
            throw std::invalid_argument("dt_self_convergence: each dt must divide t_end");
        if (i > 0 && dts[i] >= dts[i - 1])
            throw std::invalid_argument("dt_self_convergence: dts must be decreasing");
    }

    const GridPtr grid = make_scenario_grid(s);
    const TwoComponentField psi0 = make_initial_datum(s, grid);
    const SystemSpec orig = original_system(s.coupling, s.lambda, s.gamma);

    auto final_state = [&](double dt) {
        IntegratorConfig cfg = s.integrator;
        cfg.dt_base = dt;
        cfg.t_end = s.t_end;
        cfg.snapshot_stride = static_cast<int>(std::round(s.t_end / dt));
        Trajectory traj = evolve(psi0, orig, cfg);
        if (traj.status.kind != RunStatus::Completed)
            throw std::runtime_error("dt_self_convergence: run collapsed before t_end");
        return traj.snapshots.back();
    };

    const bool linear = s.coupling.b11 == 0.0 && s.coupling.b12 == 0.0 && s.coupling.b22 == 0.0;
    const bool oracle = linear && s.datum == DatumKind::GroundState;

    TwoComponentField reference(grid);
    if (oracle) {
        // ground-state components pick up the phase e^{-i N gamma t / 2}
        // under the trap flow; the coupling rotation commutes with it
        TwoComponentField scaled = psi0;
        const Complex phase = std::polar(1.0, -0.5 * grid->dim * s.gamma * s.t_end);
        for (auto& v : scaled.first.values) v *= phase;
        for (auto& v : scaled.second.values) v *= phase;
        reference = rabi_step(scaled, s.lambda, s.t_end);
    } else {
        reference = final_state(dts.back());
    }

    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 0; i < dts.size(); ++i) {
        if (!oracle && i + 1 == dts.size()) {
            out.emplace_back(dts[i], 0.0);
            break;
        }
        const TwoComponentField F = final_state(dts[i]);
        TwoComponentField diff(grid);
        for (std::size_t j = 0; j < diff.size(); ++j) {
            diff.first.values[j] = F.first.values[j] - reference.first.values[j];
            diff.second.values[j] = F.second.values[j] - reference.second.values[j];
        }
        out.emplace_back(dts[i], sigma_norm(diff).sigma);
    }
    return out;
}

Scenario appendix_example_scenario(double mass_scale, double beta) {
    if (!(mass_scale > 0.0)) throw std::invalid_argument("appendix: mass_scale must be positive");
    if (!(beta > 0.0)) throw std::invalid_argument("appendix: beta must be positive");
    Scenario s;
    s.dim = 2;
    s.points_per_dim = 256;
    s.half_width = 8.0;
    s.coupling = {-beta, 0.0, beta};
    s.gamma = 1.0;
    s.datum = DatumKind::GroundState;
    s.comp1.amplitude = std::sqrt(mass_scale);
    s.comp2.amplitude = std::sqrt(0.5 * mass_scale);
    s.t_end = 1.0;
    s.integrator.dt_base = 5e-4;
    s.integrator.t_end = 1.0;
    s.integrator.snapshot_stride = 100;
    return s;
}

AppendixReport appendix_scenario(double lambda, double mass_scale) {
    if (lambda < 0.0) throw std::invalid_argument("appendix_scenario: lambda must be >= 0");
    const Scenario s = appendix_example_scenario(mass_scale);

    AppendixReport rep;
    rep.lambda = lambda;
    rep.mass_scale = mass_scale;
    rep.beta = 1.0;
    rep.effective = effective_coefficients(s.coupling);

    const GridPtr grid = make_scenario_grid(s);
    const TwoComponentField psi0 = make_initial_datum(s, grid);
    const DataFunctionals d = data_functionals(psi0, s.coupling, s.gamma, lambda);
    rep.gwp = gwp_original(s.coupling, s.dim, lambda, s.gamma, d, GNConstants{});
    rep.blowup = blowup_original(s.coupling, s.dim, lambda, s.gamma, d);
    rep.limit_gwp = gwp_limit(s.coupling);

    if (lambda == 0.0) {
        IntegratorConfig cfg = s.integrator;
        cfg.t_end = s.t_end;
        Trajectory traj = evolve(psi0, original_system(s.coupling, 0.0, s.gamma), cfg);
        rep.status = traj.status;
        const double grad0 = traj.diagnostics.front().grad_l2;
        rep.grad_ratio_final = grad0 > 0.0 ? traj.diagnostics.back().grad_l2 / grad0 : 0.0;
        return rep;
    }

    const auto results = run_lambda_sweep(s, {lambda}, 1);
    rep.status = results.front().original_status;
    rep.grad_ratio_final = results.front().original_grad_ratio;
    if (rep.status.kind == RunStatus::Completed)
        rep.err_sup_sigma = results.front().err_sup_sigma;
    return rep;
}

}  // namespace rabinls
