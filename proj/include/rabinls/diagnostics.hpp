// diagnostics.hpp — conserved and monitored functionals along a run.

#pragma once

#include <optional>

#include "rabinls/coupling.hpp"
#include "rabinls/field.hpp"

namespace rabinls {

struct DiagnosticRecord {
    double time = 0.0;
    double mass = 0.0;
    double mass1 = 0.0;
    double mass2 = 0.0;
    double energy = 0.0;
    double grad_l2 = 0.0;
    double xweight_l2 = 0.0;
    double virial = 0.0;       // integral |x|^2 |Psi|^2
    double virial_rate = 0.0;  // 2 integral x . J
    double coupling_overlap = 0.0;  // integral Re(psi1* psi2)
    std::optional<double> modified_energy;  // Original systems only
};

// E = integral( 1/2|grad Psi|^2 + (gamma^2/2)|x|^2|Psi|^2
//              + 1/2 (b11|psi1|^4 + 2 b12 |psi1|^2|psi2|^2 + b22|psi2|^4)
//              + 2 lambda Re(psi1* psi2) ).
double energy_original(const TwoComponentField& F, const CouplingMatrix& c,
                       double gamma, double lambda);

// E = integral( 1/2|grad U|^2 + (gamma^2/2)|x|^2|U|^2
//              + (chi/2)(|u1|^4 + |u2|^4) + chi_tilde |u1|^2|u2|^2 ).
double energy_limit(const TwoComponentField& U, const EffectiveCoefficients& e,
                    double gamma);

double virial(const TwoComponentField& F);
double virial_rate(const TwoComponentField& F);
// I'' = integral( 2|grad Psi|^2 + N Psi* B Psi - 2 gamma^2 |x|^2 |Psi|^2 )
// with N the grid dimension.
double virial_accel(const TwoComponentField& F, const CouplingMatrix& c, double gamma);

// Trigonometrically weighted energy used by the finite-time collapse
// argument; non-increasing on [0, pi/(2 gamma)] for negative-definite
// coefficient patterns.
double modified_energy(const TwoComponentField& F, const CouplingMatrix& c,
                       double gamma, double lambda, double t);

DiagnosticRecord record(const TwoComponentField& F, const SystemSpec& spec, double t);

}  // namespace rabinls
