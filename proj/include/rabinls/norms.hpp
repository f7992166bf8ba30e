// norms.hpp — spatial norms of the two-component state and discrete-in-time
// mixed norms.

#pragma once

#include <vector>

#include "rabinls/field.hpp"
#include "rabinls/spectral.hpp"

namespace rabinls {

// Snapshot of the norms used by the energy-space diagnostics.
// sigma = h1 + xweight_l2 with h1 = l2 + grad_l2 (sum convention).
struct NormRecord {
    double time = 0.0;
    double l2 = 0.0;
    double h1 = 0.0;
    double sigma = 0.0;
    double grad_l2 = 0.0;
    double xweight_l2 = 0.0;
    double l4 = 0.0;
};

// (integral |F|^r)^(1/r) with |F|^2 = |f1|^2 + |f2|^2 pointwise; r may be
// infinity (max over grid points). Rejects r < 1.
double lr_norm(const TwoComponentField& F, double r);

NormRecord sigma_norm(const TwoComponentField& F, double time = 0.0);

// Per-axis real momentum density Im(psi1* d_a psi1 + psi2* d_a psi2).
std::vector<ScalarField> current_density(const TwoComponentField& F);

// Accumulates spatial-norm samples ||F(t_i)||_{L^r} for the time-Lebesgue
// norm (integral ||.||^q dt)^(1/q); q may be infinity.
struct MixedNormAccumulator {
    double exponent_time;   // q
    double exponent_space;  // r
    std::vector<double> sample_times;
    std::vector<double> sample_values;

    MixedNormAccumulator(double q, double r);
    void add(double time, double value);
};

// Composite trapezoid in time (max over samples for q = infinity).
// Requires at least two samples.
double mixed_norm(const MixedNormAccumulator& acc);

}  // namespace rabinls
