// experiments.hpp — orchestrated studies: the large-coupling sweep, rate
// fitting, step-size self-convergence, and the focusing/defocusing example.

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "rabinls/criteria.hpp"
#include "rabinls/dynamics.hpp"
#include "rabinls/transforms.hpp"

namespace rabinls {

enum class DatumKind { Gaussian, GroundState };

// One component of the analytic initial-datum family:
//   amplitude * exp(-|x - center|^2 / (2 width^2)) * exp(i phase_ramp . x).
// For GroundState data only the amplitude is used; the shape is the trap
// ground state (gamma/pi)^{N/4} exp(-gamma |x|^2 / 2).
struct GaussianComponent {
    double amplitude = 1.0;
    double width = 1.0;
    std::array<double, 3> center{0.0, 0.0, 0.0};
    std::array<double, 3> phase_ramp{0.0, 0.0, 0.0};
};

struct Scenario {
    int dim = 1;
    int points_per_dim = 512;
    double half_width = 10.0;
    CouplingMatrix coupling;
    double lambda = 0.0;  // single-run coupling strength; sweeps override it
    double gamma = 1.0;
    DatumKind datum = DatumKind::GroundState;
    GaussianComponent comp1;
    GaussianComponent comp2;
    double t_end = 1.0;
    IntegratorConfig integrator;
};

GridPtr make_scenario_grid(const Scenario& s);
TwoComponentField make_initial_datum(const Scenario& s, const GridPtr& grid);

// Reference configuration used by the convergence studies: N = 1, gamma = 1,
// couplings (1, 0.5, 2), Gaussian data, T = 1 on a 512-point box of
// half-width 10. Splitting and truncation errors sit well below the smallest
// sweep error at these settings.
Scenario standard_cubic_scenario();

struct SweepErrors {
    double value = 0.0;
    double gradient = 0.0;
    double xweight = 0.0;
};

struct SweepResult {
    double lambda = 0.0;
    double err_sup_sigma = 0.0;
    SweepErrors err_linf_l2;  // mixed norm with (q, r) = (infinity, 2)
    SweepErrors err_q_l4;     // mixed norm with (q, r) = (8/N, 4)
    RunStatus original_status;
    RunStatus limit_status;
    double original_grad_ratio = 0.0;  // final over initial gradient norm
};

// Evolves the averaged limit system from the mixed initial datum
// (psi1 + psi2, psi1 - psi2)/sqrt2. Throws if the reference itself collapses
// before t_end (no comparison horizon exists in that case).
Trajectory run_limit_reference(const Scenario& s);

// For each lambda, evolves the coupled system, assembles the asymptotic
// profile from the shared limit reference at matching snapshot times, and
// measures the profile error in the sup-Sigma norm and in the
// (infinity, 2) and (8/N, 4) mixed norms. Collapse of an individual run is
// recorded in its status, not fatal.
std::vector<SweepResult> run_lambda_sweep(const Scenario& s, const std::vector<double>& lambdas,
                                          int jobs = 0);

// Least-squares slope of log(err_sup_sigma) against log|lambda| over results
// with Completed status and positive error; needs at least 3 usable points.
double fit_rate(const std::vector<SweepResult>& results);

// Sigma-error at t_end for each step size, against the analytic flow when
// the scenario is linear with ground-state data, otherwise against the
// finest-dt run (whose own entry is 0).
std::vector<std::pair<double, double>> dt_self_convergence(const Scenario& s,
                                                           const std::vector<double>& dts);

// Focusing/defocusing pair with zero cross coupling in two dimensions:
// couplings (-beta, 0, beta). The first component carries mass mass_scale
// (in units of the unit-mass trap ground state), the second mass_scale/2.
struct AppendixReport {
    double lambda = 0.0;
    double mass_scale = 0.0;
    double beta = 1.0;
    EffectiveCoefficients effective;
    Verdict gwp;
    Verdict blowup;
    Verdict limit_gwp;
    RunStatus status;
    double grad_ratio_final = 0.0;
    std::optional<double> err_sup_sigma;  // vs the linear limit, completed runs
};

Scenario appendix_example_scenario(double mass_scale, double beta = 1.0);
AppendixReport appendix_scenario(double lambda, double mass_scale);

}  // namespace rabinls
