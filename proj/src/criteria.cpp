#include "rabinls/criteria.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "rabinls/diagnostics.hpp"

namespace rabinls {

DataFunctionals data_functionals(const TwoComponentField& F, const CouplingMatrix& c,
                                 double gamma, double lambda) {
    SystemSpec spec = original_system(c, lambda, gamma);
    DiagnosticRecord rec = record(F, spec, 0.0);
    DataFunctionals d;
    d.mass0 = rec.mass;
    d.energy0 = rec.energy;
    d.virial0 = rec.virial;
    d.virial_rate0 = rec.virial_rate;
    d.grad0_sq = rec.grad_l2 * rec.grad_l2;
    return d;
}

double beta_defect(const CouplingMatrix& c) {
    const auto pos = [](double v) { return v > 0.0 ? v : 0.0; };
    return std::max({2.0 * pos(-c.b11), 2.0 * pos(-c.b22), pos(-c.b12)});
}

Verdict gwp_original(const CouplingMatrix& c, int N, double lambda, double /*gamma*/,
                     const DataFunctionals& d, const GNConstants& k) {
    if (N < 1 || N > 3) throw std::invalid_argument("gwp_original: N must be 1, 2 or 3");
    if (!(k.c2 > 0.0) || !(k.c3 > 0.0))
        throw std::invalid_argument("gwp_original: GN constants must be positive");

    Verdict v;
    const bool all_nonneg = c.b11 >= 0.0 && c.b22 >= 0.0 && c.b12 >= 0.0;
    const bool pos_definite_neg_cross =
        c.b12 * c.b12 < c.b11 * c.b22 && c.b11 >= 0.0 && c.b12 < 0.0;
    if (all_nonneg || pos_definite_neg_cross) {
        v.outcome = Outcome::GlobalGuaranteed;
        v.triggered_condition = "GWP-case-1";
        return v;
    }
    if (N == 1) {
        v.outcome = Outcome::GlobalGuaranteed;
        v.triggered_condition = "GWP-case-2";
        return v;
    }
    const bool any_negative = std::min({c.b11, c.b22, c.b12}) < 0.0;
    const double beta = beta_defect(c);
    // any_negative implies beta > 0, so the divisions below are safe; the
    // beta == 0 situation is already absorbed by case 1.
    if (N == 2 && any_negative && d.mass0 < 2.0 / (k.c2 * beta)) {
        v.outcome = Outcome::GlobalGuaranteed;
        v.triggered_condition = "GWP-case-3";
        return v;
    }
    if (N == 3 && any_negative) {
        const double e_plus = d.energy0 + std::abs(lambda) * d.mass0;
        if (d.grad0_sq <= 2.0 * e_plus &&
            d.mass0 * e_plus < 8.0 / (27.0 * k.c3 * k.c3 * beta * beta)) {
            v.outcome = Outcome::GlobalGuaranteed;
            v.triggered_condition = "GWP-case-4";
            return v;
        }
    }
    v.outcome = Outcome::Inconclusive;
    v.triggered_condition = "none";
    return v;
}

Verdict blowup_original(const CouplingMatrix& c, int N, double lambda, double gamma,
                        const DataFunctionals& d) {
    if (N < 2 || N > 3)
        throw std::invalid_argument("blowup_original: requires N >= 2 (and N <= 3)");
    if (!(gamma > 0.0)) throw std::invalid_argument("blowup_original: gamma must be positive");

    Verdict v;
    const bool negative_definite =
        (c.b12 * c.b12 - c.b11 * c.b22 < 0.0 && c.b11 < 0.0 && c.b12 >= 0.0) ||
        (c.b11 < 0.0 && c.b12 < 0.0 && c.b22 < 0.0);
    const double half_trap_virial = 0.5 * gamma * gamma * d.virial0;

    if (negative_definite &&
        d.energy0 + 0.5 * std::abs(lambda) * d.mass0 < half_trap_virial) {
        v.outcome = Outcome::BlowupPredicted;
        v.triggered_condition = "BU-(i)";
        v.certified_time_bound = M_PI / (2.0 * gamma);
        return v;
    }

    const bool any_negative = std::min({c.b11, c.b22, c.b12}) < 0.0;
    const double scaled = 2.0 * N / (N + 2.0) *
                          (d.energy0 + std::abs(lambda) * d.mass0);
    if (any_negative && scaled < half_trap_virial) {
        v.outcome = Outcome::BlowupPredicted;
        v.triggered_condition = "BU-(ii)";
        return v;
    }
    if (any_negative && d.virial_rate0 < 0.0 &&
        scaled < -(gamma / std::sqrt(2.0 + N)) * d.virial_rate0) {
        v.outcome = Outcome::BlowupPredicted;
        v.triggered_condition = "BU-(iii)";
        return v;
    }
    v.outcome = Outcome::Inconclusive;
    v.triggered_condition = "none";
    return v;
}

Verdict gwp_limit(const CouplingMatrix& c) {
    Verdict v;
    const double trace = c.b11 + c.b22;
    const double quad = c.b11 + 2.0 * c.b12 + c.b22;
    if (trace >= 0.0 && quad >= 0.0) {
        v.outcome = Outcome::GlobalGuaranteed;
        v.triggered_condition = "limit-case-1";
        return v;
    }
    if (trace < 0.0 && 1.5 * std::abs(trace) < c.b12) {
        v.outcome = Outcome::GlobalGuaranteed;
        v.triggered_condition = "limit-case-2";
        return v;
    }
    v.outcome = Outcome::Inconclusive;
    v.triggered_condition = "none";
    return v;
}

double admissible_q(double r, int N) {
    if (N < 1 || N > 3) throw std::invalid_argument("admissible_q: N must be 1, 2 or 3");
    const bool r_inf = std::isinf(r);
    if (r_inf) {
        if (N != 1) throw std::invalid_argument("admissible_q: r = infinity only admissible for N = 1");
    } else {
        if (r < 2.0) throw std::invalid_argument("admissible_q: r must satisfy r >= 2");
        if (N == 2 && !(r < std::numeric_limits<double>::infinity()))
            throw std::invalid_argument("admissible_q: r must be finite for N = 2");
        if (N == 3 && r > 6.0)
            throw std::invalid_argument("admissible_q: r must satisfy r <= 6 for N = 3");
    }
    const double inv_r = r_inf ? 0.0 : 1.0 / r;
    const double rhs = 0.5 * N * (0.5 - inv_r);
    if (rhs == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / rhs;
}

}  // namespace rabinls
