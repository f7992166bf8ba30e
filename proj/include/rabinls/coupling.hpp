// coupling.hpp — interaction coefficients and the system descriptor.

#pragma once

#include <stdexcept>

namespace rabinls {

// Cubic interaction coefficients (self 1, cross, self 2). The cross
// coefficient is symmetric, so only one is stored.
struct CouplingMatrix {
    double b11 = 0.0;
    double b12 = 0.0;
    double b22 = 0.0;
};

// Coefficients of the large-coupling effective system:
// chi = (b11 + 2 b12 + b22)/4 multiplies |u_j|^2 u_j,
// chi_tilde = (b11 + b22)/2 multiplies |u_k|^2 u_j.
struct EffectiveCoefficients {
    double chi = 0.0;
    double chi_tilde = 0.0;
};

EffectiveCoefficients effective_coefficients(const CouplingMatrix& c);

enum class SystemKind { Original, Limit };

// Which flow to integrate: the Rabi-coupled pair (Original, carries lambda)
// or its averaged limit (Limit, no lambda).
struct SystemSpec {
    SystemKind kind = SystemKind::Original;
    CouplingMatrix coupling;        // Original
    EffectiveCoefficients effective;  // Limit
    double lambda = 0.0;            // Original only
    double gamma = 1.0;             // trap frequency
};

// gamma = 0 (no trap) is allowed at this level; the existence and collapse
// predicates require a genuine trap and check gamma > 0 themselves.
inline SystemSpec original_system(const CouplingMatrix& c, double lambda, double gamma) {
    if (gamma < 0.0) throw std::invalid_argument("original_system: gamma must be nonnegative");
    SystemSpec s;
    s.kind = SystemKind::Original;
    s.coupling = c;
    s.effective = effective_coefficients(c);
    s.lambda = lambda;
    s.gamma = gamma;
    return s;
}

inline SystemSpec limit_system(const EffectiveCoefficients& e, double gamma) {
    if (gamma < 0.0) throw std::invalid_argument("limit_system: gamma must be nonnegative");
    SystemSpec s;
    s.kind = SystemKind::Limit;
    s.effective = e;
    s.gamma = gamma;
    return s;
}

inline SystemSpec limit_of(const CouplingMatrix& c, double gamma) {
    SystemSpec s = limit_system(effective_coefficients(c), gamma);
    s.coupling = c;
    return s;
}

}  // namespace rabinls
