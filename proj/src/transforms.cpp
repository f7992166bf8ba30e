#include "rabinls/transforms.hpp"

#include <cmath>
#include <stdexcept>

#include "rabinls/spectral.hpp"

namespace rabinls {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

TwoComponentField TwoByTwoUnitary::apply(const TwoComponentField& F) const {
    TwoComponentField out(F.grid());
    const std::size_t total = F.size();
    for (std::size_t i = 0; i < total; ++i) {
        const Complex a = F.first.values[i];
        const Complex b = F.second.values[i];
        out.first.values[i] = a11 * a + a12 * b;
        out.second.values[i] = a21 * a + a22 * b;
    }
    return out;
}

double TwoByTwoUnitary::unitarity_defect() const {
    const Complex d11 = a11 * std::conj(a11) + a12 * std::conj(a12) - 1.0;
    const Complex d12 = a11 * std::conj(a21) + a12 * std::conj(a22);
    const Complex d21 = a21 * std::conj(a11) + a22 * std::conj(a12);
    const Complex d22 = a21 * std::conj(a21) + a22 * std::conj(a22) - 1.0;
    return std::max({std::abs(d11), std::abs(d12), std::abs(d21), std::abs(d22)});
}

TwoByTwoUnitary mixing_matrix() {
    return {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
}

TwoByTwoUnitary coupling_rotation(double lambda, double t) {
    const double c = std::cos(lambda * t);
    const Complex is{0.0, std::sin(lambda * t)};
    return {c, -is, -is, c};
}

TwoComponentField hadamard_mix(const TwoComponentField& F) {
    TwoComponentField out(F.grid());
    const std::size_t total = F.size();
    for (std::size_t i = 0; i < total; ++i) {
        const Complex a = F.first.values[i];
        const Complex b = F.second.values[i];
        out.first.values[i] = (a + b) * kInvSqrt2;
        out.second.values[i] = (a - b) * kInvSqrt2;
    }
    return out;
}

TwoComponentField to_transformed(const TwoComponentField& Psi, double lambda, double t) {
    return hadamard_mix(rabi_step(Psi, lambda, -t));
}

TwoComponentField from_transformed(const TwoComponentField& Phi, double lambda, double t) {
    return rabi_step(hadamard_mix(Phi), lambda, t);
}

TwoComponentField asymptotic_profile(const TwoComponentField& U, double lambda, double t) {
    const Complex em = std::polar(1.0, -lambda * t);
    const Complex ep = std::polar(1.0, lambda * t);
    TwoComponentField out(U.grid());
    const std::size_t total = U.size();
    for (std::size_t i = 0; i < total; ++i) {
        const Complex a = em * U.first.values[i];
        const Complex b = ep * U.second.values[i];
        out.first.values[i] = (a + b) * kInvSqrt2;
        out.second.values[i] = (a - b) * kInvSqrt2;
    }
    return out;
}

TwoComponentField cubic_term_original(const TwoComponentField& F, const CouplingMatrix& c) {
    TwoComponentField out(F.grid());
    const std::size_t total = F.size();
    for (std::size_t i = 0; i < total; ++i) {
        const Complex a = F.first.values[i];
        const Complex b = F.second.values[i];
        const double a2 = std::norm(a);
        const double b2 = std::norm(b);
        out.first.values[i] = (c.b11 * a2 + c.b12 * b2) * a;
        out.second.values[i] = (c.b22 * b2 + c.b12 * a2) * b;
    }
    return out;
}

TwoComponentField cubic_term_averaged(const TwoComponentField& Phi,
                                      const EffectiveCoefficients& e) {
    TwoComponentField out(Phi.grid());
    const std::size_t total = Phi.size();
    for (std::size_t i = 0; i < total; ++i) {
        const Complex a = Phi.first.values[i];
        const Complex b = Phi.second.values[i];
        const double a2 = std::norm(a);
        const double b2 = std::norm(b);
        out.first.values[i] = (e.chi * a2 + e.chi_tilde * b2) * a;
        out.second.values[i] = (e.chi * b2 + e.chi_tilde * a2) * b;
    }
    return out;
}

TwoComponentField cubic_term_averaged(const TwoComponentField& Phi, const CouplingMatrix& c) {
    return cubic_term_averaged(Phi, effective_coefficients(c));
}

TwoComponentField cubic_term_oscillatory(const TwoComponentField& Phi, const CouplingMatrix& c,
                                         double lambda, double t) {
    const double diff = 0.25 * (c.b11 - c.b22);
    const double anti = 0.25 * (c.b11 - 2.0 * c.b12 + c.b22);
    const Complex e2 = std::polar(1.0, 2.0 * lambda * t);
    const Complex e2m = std::conj(e2);
    const Complex e4 = std::polar(1.0, 4.0 * lambda * t);
    const Complex e4m = std::conj(e4);

    TwoComponentField out(Phi.grid());
    const std::size_t total = Phi.size();
    for (std::size_t i = 0; i < total; ++i) {
        const Complex a = Phi.first.values[i];
        const Complex b = Phi.second.values[i];
        const double a2 = std::norm(a);
        const double b2 = std::norm(b);
        const Complex mix = e2m * a * std::conj(b) + e2 * std::conj(a) * b;
        out.first.values[i] = diff * (mix * a + e2 * (a2 + b2) * b) + anti * e4 * std::conj(a) * b * b;
        out.second.values[i] = diff * (e2m * (a2 + b2) * a + mix * b) + anti * e4m * a * std::conj(b) * a;
    }
    return out;
}

std::vector<std::pair<double, double>> pde_residual(const Trajectory& traj,
                                                    ResidualSystem system, double lambda) {
    const auto& times = traj.times;
    const auto& snaps = traj.snapshots;
    if (times.size() < 3)
        throw std::invalid_argument("pde_residual: need at least 3 snapshots");
    const double dt = times[1] - times[0];
    for (std::size_t k = 1; k + 1 < times.size(); ++k) {
        const double step = times[k + 1] - times[k];
        if (std::abs(step - dt) > 1e-9 * std::max(1.0, std::abs(dt)))
            throw std::invalid_argument("pde_residual: snapshot spacing must be uniform");
    }

    std::vector<TwoComponentField> fields;
    if (system == ResidualSystem::Transformed) {
        fields.reserve(snaps.size());
        for (std::size_t k = 0; k < snaps.size(); ++k)
            fields.push_back(to_transformed(snaps[k], lambda, times[k]));
    }
    const auto& states = (system == ResidualSystem::Transformed) ? fields : snaps;

    const GridPtr& grid = snaps.front().grid();
    const Grid& g = *grid;
    const double hpow = std::pow(g.spacing, g.dim);
    const double gamma = traj.spec.gamma;

    auto laplacian = [](const ScalarField& f) {
        // -|xi|^2 multiplier; assembled from the exact squared wavenumbers
        auto spectrum = forward_fft(f);
        const Grid& gg = *f.grid;
        for (std::size_t i = 0; i < spectrum.size(); ++i) {
            double xi2 = 0.0;
            for (int a = 0; a < gg.dim; ++a) {
                const double xi = gg.wavenumbers[gg.axis_index(i, a)];
                xi2 += xi * xi;
            }
            spectrum[i] *= -xi2;
        }
        return inverse_fft(f.grid, spectrum);
    };

    std::vector<std::pair<double, double>> out;
    for (std::size_t k = 1; k + 1 < states.size(); ++k) {
        const double t = times[k];
        const TwoComponentField& F = states[k];

        TwoComponentField nonlin(grid);
        switch (system) {
            case ResidualSystem::Original:
                nonlin = cubic_term_original(F, traj.spec.coupling);
                break;
            case ResidualSystem::Transformed: {
                TwoComponentField avg = cubic_term_averaged(F, traj.spec.coupling);
                TwoComponentField osc = cubic_term_oscillatory(F, traj.spec.coupling, lambda, t);
                for (std::size_t i = 0; i < avg.size(); ++i) {
                    nonlin.first.values[i] = avg.first.values[i] + osc.first.values[i];
                    nonlin.second.values[i] = avg.second.values[i] + osc.second.values[i];
                }
                break;
            }
            case ResidualSystem::Limit:
                nonlin = cubic_term_averaged(F, traj.spec.effective);
                break;
        }

        ScalarField lap1 = laplacian(F.first);
        ScalarField lap2 = laplacian(F.second);

        double residsq = 0.0;
        const std::size_t total = F.size();
        for (std::size_t i = 0; i < total; ++i) {
            const double vtrap = 0.5 * gamma * gamma * g.radius_sq[i];

            Complex rhs1 = -0.5 * lap1.values[i] + vtrap * F.first.values[i] + nonlin.first.values[i];
            Complex rhs2 = -0.5 * lap2.values[i] + vtrap * F.second.values[i] + nonlin.second.values[i];
            if (system == ResidualSystem::Original) {
                rhs1 += lambda * F.second.values[i];
                rhs2 += lambda * F.first.values[i];
            }

            const Complex dudt1 = Complex(0.0, 1.0) *
                (states[k + 1].first.values[i] - states[k - 1].first.values[i]) / (2.0 * dt);
            const Complex dudt2 = Complex(0.0, 1.0) *
                (states[k + 1].second.values[i] - states[k - 1].second.values[i]) / (2.0 * dt);

            residsq += std::norm(dudt1 - rhs1) + std::norm(dudt2 - rhs2);
        }
        out.emplace_back(t, std::sqrt(hpow * residsq));
    }
    return out;
}

}  // namespace rabinls
