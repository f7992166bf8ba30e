#include "rabinls/diagnostics.hpp"

#include <array>
#include <cmath>

#include "rabinls/spectral.hpp"

namespace rabinls {

namespace {

// Everything the functionals need, gathered in one sweep over the grid
// (gradients cost four transforms; the rest is pointwise).
struct Functionals {
    double mass1 = 0.0, mass2 = 0.0;
    double gradsq = 0.0;            // |grad psi1|^2 + |grad psi2|^2 integrated
    double xweightsq = 0.0;         // integral |x|^2 |Psi|^2
    double quartic11 = 0.0, quartic12 = 0.0, quartic22 = 0.0;
    double overlap = 0.0;           // integral Re(psi1* psi2)
    double x_dot_J = 0.0;           // integral x . J
};

Functionals gather(const TwoComponentField& F) {
    const Grid& g = *F.grid();
    const std::size_t total = F.size();
    const double hpow = std::pow(g.spacing, g.dim);

    auto g1 = spectral_gradient(F.first);
    auto g2 = spectral_gradient(F.second);

    // coordinate of the point along each axis, walked without index math
    const int n = g.points_per_dim;
    std::array<int, 3> ix{0, 0, 0};
    auto advance = [&] {
        for (int a = g.dim - 1; a >= 0; --a) {
            if (++ix[a] < n) break;
            ix[a] = 0;
        }
    };

    Functionals out;
    for (std::size_t i = 0; i < total; ++i, advance()) {
        const Complex a = F.first.values[i];
        const Complex b = F.second.values[i];
        const double a2 = std::norm(a);
        const double b2 = std::norm(b);
        out.mass1 += a2;
        out.mass2 += b2;
        out.quartic11 += a2 * a2;
        out.quartic12 += a2 * b2;
        out.quartic22 += b2 * b2;
        out.overlap += std::real(std::conj(a) * b);
        for (int ax = 0; ax < g.dim; ++ax) {
            const double x = g.axis_coordinates[ix[ax]];
            const double Ja = std::imag(std::conj(a) * g1[ax].values[i]) +
                              std::imag(std::conj(b) * g2[ax].values[i]);
            out.x_dot_J += x * Ja;
            out.gradsq += std::norm(g1[ax].values[i]) + std::norm(g2[ax].values[i]);
        }
        out.xweightsq += g.radius_sq[i] * (a2 + b2);
    }
    out.mass1 *= hpow;
    out.mass2 *= hpow;
    out.gradsq *= hpow;
    out.xweightsq *= hpow;
    out.quartic11 *= hpow;
    out.quartic12 *= hpow;
    out.quartic22 *= hpow;
    out.overlap *= hpow;
    out.x_dot_J *= hpow;
    return out;
}

double quartic_original(const Functionals& f, const CouplingMatrix& c) {
    return c.b11 * f.quartic11 + 2.0 * c.b12 * f.quartic12 + c.b22 * f.quartic22;
}

double modified_energy_from(const Functionals& f, const CouplingMatrix& c,
                            double gamma, double lambda, double t) {
    const double ct = std::cos(gamma * t);
    const double st = std::sin(gamma * t);
    const double quart = quartic_original(f, c);
    return ct * ct * (0.5 * f.gradsq + 0.5 * quart + 2.0 * lambda * f.overlap) +
           st * st * 0.5 * gamma * gamma * f.xweightsq +
           0.5 * gamma * std::sin(2.0 * gamma * t) * f.x_dot_J +
           std::abs(lambda) * 0.5 * std::cos(2.0 * gamma * t) * (f.mass1 + f.mass2);
}

}  // namespace

double energy_original(const TwoComponentField& F, const CouplingMatrix& c,
                       double gamma, double lambda) {
    const Functionals f = gather(F);
    return 0.5 * f.gradsq + 0.5 * gamma * gamma * f.xweightsq +
           0.5 * quartic_original(f, c) + 2.0 * lambda * f.overlap;
}

double energy_limit(const TwoComponentField& U, const EffectiveCoefficients& e,
                    double gamma) {
    const Functionals f = gather(U);
    return 0.5 * f.gradsq + 0.5 * gamma * gamma * f.xweightsq +
           0.5 * e.chi * (f.quartic11 + f.quartic22) + e.chi_tilde * f.quartic12;
}

double virial(const TwoComponentField& F) { return gather(F).xweightsq; }

double virial_rate(const TwoComponentField& F) { return 2.0 * gather(F).x_dot_J; }

double virial_accel(const TwoComponentField& F, const CouplingMatrix& c, double gamma) {
    const Functionals f = gather(F);
    const int N = F.grid()->dim;
    return 2.0 * f.gradsq + N * quartic_original(f, c) -
           2.0 * gamma * gamma * f.xweightsq;
}

double modified_energy(const TwoComponentField& F, const CouplingMatrix& c,
                       double gamma, double lambda, double t) {
    return modified_energy_from(gather(F), c, gamma, lambda, t);
}

DiagnosticRecord record(const TwoComponentField& F, const SystemSpec& spec, double t) {
    const Functionals f = gather(F);
    DiagnosticRecord rec;
    rec.time = t;
    rec.mass1 = f.mass1;
    rec.mass2 = f.mass2;
    rec.mass = f.mass1 + f.mass2;
    rec.grad_l2 = std::sqrt(f.gradsq);
    rec.xweight_l2 = std::sqrt(f.xweightsq);
    rec.virial = f.xweightsq;
    rec.virial_rate = 2.0 * f.x_dot_J;
    rec.coupling_overlap = f.overlap;
    if (spec.kind == SystemKind::Original) {
        rec.energy = 0.5 * f.gradsq + 0.5 * spec.gamma * spec.gamma * f.xweightsq +
                     0.5 * quartic_original(f, spec.coupling) +
                     2.0 * spec.lambda * f.overlap;
        rec.modified_energy =
            modified_energy_from(f, spec.coupling, spec.gamma, spec.lambda, t);
    } else {
        rec.energy = 0.5 * f.gradsq + 0.5 * spec.gamma * spec.gamma * f.xweightsq +
                     0.5 * spec.effective.chi * (f.quartic11 + f.quartic22) +
                     spec.effective.chi_tilde * f.quartic12;
    }
    return rec;
}

}  // namespace rabinls
