#include "rabinls/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rabinls {

double lr_norm(const TwoComponentField& F, double r) {
    if (r < 1.0) throw std::invalid_argument("lr_norm: exponent must satisfy r >= 1");
    const std::size_t total = F.size();
    if (std::isinf(r)) {
        double m = 0.0;
        for (std::size_t i = 0; i < total; ++i) {
            const double a2 = std::norm(F.first.values[i]) + std::norm(F.second.values[i]);
            m = std::max(m, a2);
        }
        return std::sqrt(m);
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < total; ++i) {
        const double a2 = std::norm(F.first.values[i]) + std::norm(F.second.values[i]);
        sum += std::pow(a2, 0.5 * r);
    }
    const double hpow = std::pow(F.grid()->spacing, F.grid()->dim);
    return std::pow(hpow * sum, 1.0 / r);
}

NormRecord sigma_norm(const TwoComponentField& F, double time) {
    const Grid& g = *F.grid();
    const std::size_t total = F.size();
    const double hpow = std::pow(g.spacing, g.dim);

    double l2sq = 0.0, xwsq = 0.0, l4sum = 0.0;
    for (std::size_t i = 0; i < total; ++i) {
        const double a2 = std::norm(F.first.values[i]) + std::norm(F.second.values[i]);
        l2sq += a2;
        xwsq += g.radius_sq[i] * a2;
        l4sum += a2 * a2;
    }

    double gradsq = 0.0;
    for (const ScalarField* comp : {&F.first, &F.second}) {
        auto grad = spectral_gradient(*comp);
        for (const auto& d : grad)
            for (const auto& v : d.values) gradsq += std::norm(v);
    }

    NormRecord rec;
    rec.time = time;
    rec.l2 = std::sqrt(hpow * l2sq);
    rec.grad_l2 = std::sqrt(hpow * gradsq);
    rec.xweight_l2 = std::sqrt(hpow * xwsq);
    rec.h1 = rec.l2 + rec.grad_l2;
    rec.sigma = rec.h1 + rec.xweight_l2;
    rec.l4 = std::pow(hpow * l4sum, 0.25);
    return rec;
}

std::vector<ScalarField> current_density(const TwoComponentField& F) {
    const GridPtr& grid = F.grid();
    auto g1 = spectral_gradient(F.first);
    auto g2 = spectral_gradient(F.second);
    std::vector<ScalarField> J;
    J.reserve(grid->dim);
    for (int a = 0; a < grid->dim; ++a) {
        ScalarField Ja(grid);
        for (std::size_t i = 0; i < Ja.values.size(); ++i) {
            const double v = std::imag(std::conj(F.first.values[i]) * g1[a].values[i]) +
                             std::imag(std::conj(F.second.values[i]) * g2[a].values[i]);
            Ja.values[i] = v;
        }
        J.push_back(std::move(Ja));
    }
    return J;
}

MixedNormAccumulator::MixedNormAccumulator(double q, double r)
    : exponent_time(q), exponent_space(r) {
    if (q < 1.0) throw std::invalid_argument("MixedNormAccumulator: q must satisfy q >= 1");
    if (r < 1.0) throw std::invalid_argument("MixedNormAccumulator: r must satisfy r >= 1");
}

void MixedNormAccumulator::add(double time, double value) {
    if (!sample_times.empty() && time <= sample_times.back())
        throw std::invalid_argument("MixedNormAccumulator: sample times must be strictly increasing");
    if (value < 0.0)
        throw std::invalid_argument("MixedNormAccumulator: norm samples must be nonnegative");
    sample_times.push_back(time);
    sample_values.push_back(value);
}

double mixed_norm(const MixedNormAccumulator& acc) {
    const std::size_t n = acc.sample_times.size();
    if (n < 2) throw std::invalid_argument("mixed_norm: need at least 2 samples");
    if (std::isinf(acc.exponent_time))
        return *std::max_element(acc.sample_values.begin(), acc.sample_values.end());
    const double q = acc.exponent_time;
    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double dt = acc.sample_times[i + 1] - acc.sample_times[i];
        integral += 0.5 * dt * (std::pow(acc.sample_values[i], q) +
                                std::pow(acc.sample_values[i + 1], q));
    }
    return std::pow(integral, 1.0 / q);
}

}  // namespace rabinls
