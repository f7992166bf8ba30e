// Rotating-frame algebra: the mixing matrix, the change of variables, the
// asymptotic profile, the split nonlinearity, and the residual checker.

#include <doctest.h>

#include <cmath>
#include <random>

#include "rabinls/diagnostics.hpp"
#include "rabinls/experiments.hpp"
#include "rabinls/transforms.hpp"
#include "test_common.hpp"

using namespace rabinls;
using testutil::difference;
using testutil::max_pointwise_diff;
using testutil::rel_l2_diff;

TEST_CASE("constant unitaries are unitary and match the pointwise operations") {
    CHECK(mixing_matrix().unitarity_defect() <= 1e-14);
    for (double lt : {0.0, 0.3, 1.7, 12.9})
        CHECK(coupling_rotation(lt, 1.0).unitarity_defect() <= 1e-14);

    const GridPtr g = make_grid(1, 64, 5.0);
    std::mt19937 rng(50);
    const auto F = testutil::random_field(g, rng);
    CHECK(rel_l2_diff(mixing_matrix().apply(F), hadamard_mix(F)) <= 1e-15);
    CHECK(rel_l2_diff(coupling_rotation(4.0, 0.7).apply(F), rabi_step(F, 4.0, 0.7)) <= 1e-15);
}

TEST_CASE("hadamard_mix is an involution and preserves mass") {
    const GridPtr g = make_grid(1, 64, 5.0);
    std::mt19937 rng(51);
    const auto F = testutil::random_field(g, rng);
    CHECK(rel_l2_diff(hadamard_mix(hadamard_mix(F)), F) <= 1e-15);

    double m0 = 0.0, m1 = 0.0;
    const auto M = hadamard_mix(F);
    for (std::size_t i = 0; i < F.size(); ++i) {
        m0 += std::norm(F.first.values[i]) + std::norm(F.second.values[i]);
        m1 += std::norm(M.first.values[i]) + std::norm(M.second.values[i]);
    }
    CHECK(std::abs(m1 - m0) / m0 <= 1e-14);

    // equal components collapse onto the first output channel
    const ScalarField gs = testutil::ground_state(g, 1.0);
    const auto mixed = hadamard_mix(TwoComponentField(gs, gs));
    double maxerr = 0.0;
    for (std::size_t i = 0; i < gs.values.size(); ++i) {
        maxerr = std::max(maxerr,
                          std::abs(mixed.first.values[i] - std::sqrt(2.0) * gs.values[i]));
        maxerr = std::max(maxerr, std::abs(mixed.second.values[i]));
    }
    CHECK(maxerr <= 1e-14);
}

TEST_CASE("to_transformed at t = 0 is the plain mixing") {
    const GridPtr g = make_grid(1, 64, 5.0);
    std::mt19937 rng(52);
    const auto F = testutil::random_field(g, rng);
    CHECK(rel_l2_diff(to_transformed(F, 7.0, 0.0), hadamard_mix(F)) <= 1e-15);
}

TEST_CASE("rotating-frame round trip and sigma-norm invariance") {
    const GridPtr g = make_grid(1, 128, 8.0);
    std::mt19937 rng(53);
    const auto F = testutil::random_field(g, rng);
    const double lambda = 13.0, t = 0.61;
    const auto Phi = to_transformed(F, lambda, t);
    CHECK(rel_l2_diff(from_transformed(Phi, lambda, t), F) <= 1e-13);

    // a spatially constant unitary commutes with both the gradient and |x|
    const NormRecord a = sigma_norm(F);
    const NormRecord b = sigma_norm(Phi);
    CHECK(std::abs(a.sigma - b.sigma) / a.sigma <= 1e-12);
    CHECK(std::abs(a.grad_l2 - b.grad_l2) / a.grad_l2 <= 1e-12);
    CHECK(std::abs(a.xweight_l2 - b.xweight_l2) / a.xweight_l2 <= 1e-12);
}

TEST_CASE("asymptotic_profile identities") {
    const GridPtr g = make_grid(1, 64, 5.0);
    std::mt19937 rng(54);
    const auto U = testutil::random_field(g, rng);
    const double lambda = 9.0, t = 0.44;

    // t = 0 reduces to the mixing; applied after hadamard_mix it restores the datum
    CHECK(rel_l2_diff(asymptotic_profile(U, lambda, 0.0), hadamard_mix(U)) <= 1e-15);
    CHECK(rel_l2_diff(asymptotic_profile(hadamard_mix(U), lambda, 0.0), U) <= 1e-15);

    // the profile is the rotated mixing
    CHECK(rel_l2_diff(asymptotic_profile(U, lambda, t),
                      rabi_step(hadamard_mix(U), lambda, t)) <= 1e-14);

    // pointwise total modulus is preserved
    const auto P = asymptotic_profile(U, lambda, t);
    double maxerr = 0.0;
    for (std::size_t i = 0; i < U.size(); ++i) {
        const double a = std::norm(U.first.values[i]) + std::norm(U.second.values[i]);
        const double b = std::norm(P.first.values[i]) + std::norm(P.second.values[i]);
        maxerr = std::max(maxerr, std::abs(a - b));
    }
    CHECK(maxerr <= 1e-13);
}

TEST_CASE("cubic_term_averaged special cases and matrix form") {
    const GridPtr g = make_grid(1, 64, 5.0);
    std::mt19937 rng(55);

    // single-component input: cross terms vanish
    const CouplingMatrix c{1.3, -0.4, 2.1};
    const EffectiveCoefficients e = effective_coefficients(c);
    TwoComponentField single(g);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (auto& v : single.first.values) v = Complex(dist(rng), dist(rng));
    const auto out = cubic_term_averaged(single, c);
    double maxerr = 0.0;
    for (std::size_t i = 0; i < single.size(); ++i) {
        const Complex expected = e.chi * std::norm(single.first.values[i]) * single.first.values[i];
        maxerr = std::max(maxerr, std::abs(out.first.values[i] - expected));
        maxerr = std::max(maxerr, std::abs(out.second.values[i]));
    }
    CHECK(maxerr <= 1e-14);

    // focusing/defocusing pair with zero cross coupling: both coefficients
    // vanish and the averaged term is identically zero
    const auto F = testutil::random_field(g, rng);
    const auto zero = cubic_term_averaged(F, CouplingMatrix{-2.0, 0.0, 2.0});
    CHECK(max_pointwise_diff(zero, TwoComponentField(g)) == 0.0);

    // independent evaluation through the explicit 2x2 matrix form
    const auto G = testutil::random_field(g, rng);
    const auto fast = cubic_term_averaged(G, c);
    maxerr = 0.0;
    const double quad = c.b11 + 2.0 * c.b12 + c.b22;
    const double trace2 = 2.0 * (c.b11 + c.b22);
    for (std::size_t i = 0; i < G.size(); ++i) {
        const Complex p1 = G.first.values[i], p2 = G.second.values[i];
        const Complex m11 = 0.25 * quad * std::norm(p1);
        const Complex m12 = 0.25 * trace2 * p1 * std::conj(p2);
        const Complex m21 = 0.25 * trace2 * std::conj(p1) * p2;
        const Complex m22 = 0.25 * quad * std::norm(p2);
        maxerr = std::max(maxerr, std::abs(fast.first.values[i] - (m11 * p1 + m12 * p2)));
        maxerr = std::max(maxerr, std::abs(fast.second.values[i] - (m21 * p1 + m22 * p2)));
    }
    CHECK(maxerr <= 1e-14);
}

TEST_CASE("cubic_term_oscillatory vanishes for equal couplings") {
    const GridPtr g = make_grid(1, 64, 5.0);
    std::mt19937 rng(56);
    const auto F = testutil::random_field(g, rng);
    const auto out = cubic_term_oscillatory(F, CouplingMatrix{1.4, 1.4, 1.4}, 7.0, 0.3);
    CHECK(max_pointwise_diff(out, TwoComponentField(g)) == 0.0);
}

TEST_CASE("conjugated cubic term splits into averaged plus oscillatory parts") {
    const GridPtr g = make_grid(1, 64, 5.0);
    const CouplingMatrix c{1.3, -0.4, 2.1};
    std::mt19937 rng(57);
    double maxerr = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto Phi = testutil::random_field(g, rng);
        const double lambda = 1.0 + 0.37 * trial;
        const double t = 0.05 * (trial + 1);
        const auto Psi = from_transformed(Phi, lambda, t);
        const auto conjugated = to_transformed(cubic_term_original(Psi, c), lambda, t);
        const auto avg = cubic_term_averaged(Phi, c);
        const auto osc = cubic_term_oscillatory(Phi, c, lambda, t);
        for (std::size_t i = 0; i < Phi.size(); ++i) {
            maxerr = std::max(maxerr, std::abs(conjugated.first.values[i] - avg.first.values[i] -
                                               osc.first.values[i]));
            maxerr = std::max(maxerr, std::abs(conjugated.second.values[i] -
                                               avg.second.values[i] - osc.second.values[i]));
        }
    }
    CHECK(maxerr <= 1e-12);
}

TEST_CASE("oscillatory term averages out over one full period") {
    const GridPtr g = make_grid(1, 64, 5.0);
    const CouplingMatrix c{1.3, -0.4, 2.1};
    std::mt19937 rng(58);
    const auto Phi = testutil::random_field(g, rng);
    const double lambda = 6.0;
    const double period = M_PI / lambda;  // period of e^{2 i lambda t}
    const int samples = 16;

    TwoComponentField mean(g);
    double max_inst = 0.0;
    // equispaced average over a full period: exact for the +-1 and +-2
    // harmonics present in the coefficients
    for (int j = 0; j < samples; ++j) {
        const auto term = cubic_term_oscillatory(Phi, c, lambda, period * j / samples);
        for (std::size_t i = 0; i < mean.size(); ++i) {
            mean.first.values[i] += term.first.values[i] / double(samples);
            mean.second.values[i] += term.second.values[i] / double(samples);
            max_inst = std::max({max_inst, std::abs(term.first.values[i]),
                                 std::abs(term.second.values[i])});
        }
    }
    CHECK(max_pointwise_diff(mean, TwoComponentField(g)) <= 1e-10 * max_inst);
}

TEST_CASE("pde_residual of the zero trajectory vanishes") {
    const GridPtr g = make_grid(1, 64, 5.0);
    Trajectory traj;
    traj.spec = original_system({1.0, 0.5, 2.0}, 3.0, 1.0);
    for (int k = 0; k < 4; ++k) {
        traj.times.push_back(0.1 * k);
        traj.snapshots.emplace_back(g);
    }
    for (const auto& [t, r] : pde_residual(traj, ResidualSystem::Original, 3.0))
        CHECK(r == 0.0);
}

TEST_CASE("pde_residual rejects short or non-uniform snapshot sets") {
    const GridPtr g = make_grid(1, 64, 5.0);
    Trajectory traj;
    traj.spec = original_system({0, 0, 0}, 0.0, 1.0);
    traj.times = {0.0, 0.1};
    traj.snapshots = {TwoComponentField(g), TwoComponentField(g)};
    CHECK_THROWS_AS(pde_residual(traj, ResidualSystem::Original, 0.0), std::invalid_argument);
    traj.times = {0.0, 0.1, 0.3};
    traj.snapshots.emplace_back(g);
    CHECK_THROWS_AS(pde_residual(traj, ResidualSystem::Original, 0.0), std::invalid_argument);
}

TEST_CASE("pde_residual on the analytic linear flow is pure time-difference error") {
    // sample the exact solution; the only residual left is the second-order
    // central-difference truncation, which drops fourfold per halving
    const GridPtr g = make_grid(1, 256, 10.0);
    const double gamma = 1.0, lambda = 2.0;
    const ScalarField gs = testutil::ground_state(g, gamma);
    const TwoComponentField psi0(gs, ScalarField(g));

    auto exact_traj = [&](double dt_snap, int count) {
        Trajectory traj;
        traj.spec = original_system({0.0, 0.0, 0.0}, lambda, gamma);
        for (int k = 0; k < count; ++k) {
            const double t = k * dt_snap;
            TwoComponentField state = psi0;
            const Complex phase = std::polar(1.0, -0.5 * g->dim * gamma * t);
            for (auto& v : state.first.values) v *= phase;
            for (auto& v : state.second.values) v *= phase;
            traj.times.push_back(t);
            traj.snapshots.push_back(rabi_step(state, lambda, t));
        }
        return traj;
    };

    auto max_resid = [&](double dt_snap) {
        const auto res = pde_residual(exact_traj(dt_snap, 9), ResidualSystem::Original, lambda);
        double m = 0.0;
        for (const auto& [t, r] : res) m = std::max(m, r);
        return m;
    };
    const double coarse = max_resid(0.04);
    const double fine = max_resid(0.02);
    CHECK(coarse <= 1e-2);
    CHECK(coarse / fine >= 3.0);
    CHECK(coarse / fine <= 5.0);
}

TEST_CASE("computed trajectories satisfy their equations at the snapshots") {
    Scenario s = standard_cubic_scenario();
    s.lambda = 3.0;
    s.t_end = 0.5;
    s.integrator.t_end = 0.5;
    s.integrator.dt_base = 1e-3;
    s.integrator.snapshot_stride = 20;
    const GridPtr g = make_scenario_grid(s);
    const TwoComponentField psi0 = make_initial_datum(s, g);

    const Trajectory orig = evolve(psi0, original_system(s.coupling, s.lambda, s.gamma),
                                   s.integrator);
    for (const auto& [t, r] : pde_residual(orig, ResidualSystem::Original, s.lambda))
        CHECK(r <= 5e-2);
    for (const auto& [t, r] : pde_residual(orig, ResidualSystem::Transformed, s.lambda))
        CHECK(r <= 5e-2);

    const Trajectory lim = evolve(hadamard_mix(psi0), limit_of(s.coupling, s.gamma), s.integrator);
    for (const auto& [t, r] : pde_residual(lim, ResidualSystem::Limit, 0.0))
        CHECK(r <= 5e-2);
}

TEST_CASE("cubic terms obey the precomputed growth bounds") {
    // ratios on pointwise values with moduli <= 1; the brute-force sample
    // maximum sits near 1.0 * max coupling, asserted against 16x of it
    const GridPtr g = make_grid(1, 8, 4.0);
    const CouplingMatrix c{1.0, 0.5, 2.0};
    const double max_beta = 2.0;
    std::mt19937 rng(59);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::uniform_real_distribution<double> udist(0.0, 1.0);

    auto bounded_pair = [&]() {
        TwoComponentField F(g);
        for (std::size_t i = 0; i < F.size(); ++i) {
            Complex a(dist(rng), dist(rng)), b(dist(rng), dist(rng));
            const double m = std::sqrt(std::norm(a) + std::norm(b));
            if (m > 1.0) {
                const double s = udist(rng) / m;
                a *= s;
                b *= s;
            }
            F.first.values[i] = a;
            F.second.values[i] = b;
        }
        return F;
    };

    double lip_avg = 0.0, lip_osc = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto F1 = bounded_pair();
        const auto F2 = bounded_pair();
        const auto A1 = cubic_term_averaged(F1, c);
        const auto A2 = cubic_term_averaged(F2, c);
        const auto R1 = cubic_term_oscillatory(F1, c, 3.0, 0.1 * trial);
        for (std::size_t i = 0; i < F1.size(); ++i) {
            const double n1sq = std::norm(F1.first.values[i]) + std::norm(F1.second.values[i]);
            const double n2sq = std::norm(F2.first.values[i]) + std::norm(F2.second.values[i]);
            const double dnorm = std::sqrt(std::norm(F1.first.values[i] - F2.first.values[i]) +
                                           std::norm(F1.second.values[i] - F2.second.values[i]));
            const double anorm = std::sqrt(std::norm(A1.first.values[i] - A2.first.values[i]) +
                                           std::norm(A1.second.values[i] - A2.second.values[i]));
            if ((n1sq + n2sq) * dnorm > 1e-12)
                lip_avg = std::max(lip_avg, anorm / ((n1sq + n2sq) * dnorm));
            const double rnorm = std::sqrt(std::norm(R1.first.values[i]) +
                                           std::norm(R1.second.values[i]));
            if (n1sq > 1e-9) lip_osc = std::max(lip_osc, rnorm / (n1sq * std::sqrt(n1sq)));
        }
    }
    CHECK(lip_avg > 0.0);
    CHECK(lip_osc > 0.0);
    CHECK(lip_avg <= 4.0 * max_beta * 4.0);
    CHECK(lip_osc <= 4.0 * max_beta * 4.0);
}
