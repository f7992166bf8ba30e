// transforms.hpp — the rotating-frame change of variables, the asymptotic
// profile, the split nonlinearity of the transformed system, and a PDE
// residual checker.

#pragma once

#include <utility>
#include <vector>

#include "rabinls/coupling.hpp"
#include "rabinls/dynamics.hpp"
#include "rabinls/field.hpp"

namespace rabinls {

// Constant 2x2 matrix acting pointwise on the component pair. Houses the
// symmetric mixing matrix and the coupling rotation.
struct TwoByTwoUnitary {
    Complex a11, a12, a21, a22;

    TwoComponentField apply(const TwoComponentField& F) const;
    // max entrywise deviation of U U* from the identity
    double unitarity_defect() const;
};

// (1/sqrt2) [[1, 1], [1, -1]]
TwoByTwoUnitary mixing_matrix();
// [[cos(lambda t), -i sin(lambda t)], [-i sin(lambda t), cos(lambda t)]]
TwoByTwoUnitary coupling_rotation(double lambda, double t);

// Pointwise ((psi1+psi2)/sqrt2, (psi1-psi2)/sqrt2); involutive and unitary.
TwoComponentField hadamard_mix(const TwoComponentField& F);

// Rotating-frame variable Phi(t) = V Omega(-t) Psi(t).
TwoComponentField to_transformed(const TwoComponentField& Psi, double lambda, double t);

// Inverse map Psi(t) = Omega(t) V Phi(t).
TwoComponentField from_transformed(const TwoComponentField& Phi, double lambda, double t);

// Profile ((e^{-i lambda t} u1 + e^{i lambda t} u2)/sqrt2,
//          (e^{-i lambda t} u1 - e^{i lambda t} u2)/sqrt2) that the coupled
// solution approaches for large |lambda|.
TwoComponentField asymptotic_profile(const TwoComponentField& U, double lambda, double t);

// Cubic term of the original system, componentwise
// (b_jj |own|^2 + b_jk |other|^2) psi_j.
TwoComponentField cubic_term_original(const TwoComponentField& F, const CouplingMatrix& c);

// Resonant (time-averaged) part of the transformed nonlinearity:
// (chi |phi_j|^2 + chi_tilde |phi_k|^2) phi_j.
TwoComponentField cubic_term_averaged(const TwoComponentField& Phi, const EffectiveCoefficients& e);
TwoComponentField cubic_term_averaged(const TwoComponentField& Phi, const CouplingMatrix& c);

// Oscillatory remainder of the transformed nonlinearity, carrying the
// e^{+-2i lambda t} and e^{+-4i lambda t} coefficients.
TwoComponentField cubic_term_oscillatory(const TwoComponentField& Phi, const CouplingMatrix& c,
                                         double lambda, double t);

enum class ResidualSystem { Original, Transformed, Limit };

// L2 norm of i (central time difference) - RHS at each interior snapshot.
// Transformed mode maps the stored (Original) snapshots into the rotating
// frame first. Requires >= 3 uniformly spaced snapshots.
std::vector<std::pair<double, double>> pde_residual(const Trajectory& traj,
                                                    ResidualSystem system, double lambda);

}  // namespace rabinls
