// criteria.hpp — sufficient-condition predicates for global existence and
// finite-time collapse, plus admissible-pair arithmetic.

#pragma once

#include <optional>
#include <string>

#include "rabinls/coupling.hpp"
#include "rabinls/field.hpp"

namespace rabinls {

// Initial-data functionals the predicates consume.
struct DataFunctionals {
    double mass0 = 0.0;        // M(0)
    double energy0 = 0.0;      // E(0)
    double virial0 = 0.0;      // I(0)
    double virial_rate0 = 0.0; // I'(0)
    double grad0_sq = 0.0;     // |grad Psi(0)|_{L2}^2
};

DataFunctionals data_functionals(const TwoComponentField& F, const CouplingMatrix& c,
                                 double gamma, double lambda);

enum class Outcome { GlobalGuaranteed, BlowupPredicted, Inconclusive };

struct Verdict {
    Outcome outcome = Outcome::Inconclusive;
    std::string triggered_condition;  // e.g. "GWP-case-1", "BU-(iii)", "none"
    std::optional<double> certified_time_bound;
};

// Constants of the Gagliardo-Nirenberg-type bounds behind cases 3 and 4.
// Their numeric values are a user input; verdicts that use them are
// conditional on the supplied values.
struct GNConstants {
    double c2 = 1.0;
    double c3 = 1.0;
};

// max{2(-b11)^+, 2(-b22)^+, (-b12)^+}
double beta_defect(const CouplingMatrix& c);

// Global-existence cases, evaluated in order 1 -> 4; first match wins.
Verdict gwp_original(const CouplingMatrix& c, int N, double lambda, double gamma,
                     const DataFunctionals& d, const GNConstants& k);

// Finite-time collapse conditions (i) -> (iii); requires N >= 2.
Verdict blowup_original(const CouplingMatrix& c, int N, double lambda, double gamma,
                        const DataFunctionals& d);

// Global existence of the limit system from the coefficient signs alone.
Verdict gwp_limit(const CouplingMatrix& c);

// Solves 1/q = (N/2)(1/2 - 1/r); r = 2 gives q = infinity. Rejects r outside
// the admissible range for the given dimension.
double admissible_q(double r, int N);

}  // namespace rabinls
