#include "rabinls/verify.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "rabinls/diagnostics.hpp"
#include "rabinls/dynamics.hpp"
#include "rabinls/experiments.hpp"
#include "rabinls/io.hpp"
#include "rabinls/norms.hpp"
#include "rabinls/spectral.hpp"
#include "rabinls/transforms.hpp"

namespace rabinls {

namespace {

TwoComponentField random_field(const GridPtr& grid, std::mt19937& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    TwoComponentField F(grid);
    for (auto& v : F.first.values) v = scale * Complex(dist(rng), dist(rng));
    for (auto& v : F.second.values) v = scale * Complex(dist(rng), dist(rng));
    return F;
}

double rel_l2_diff(const TwoComponentField& A, const TwoComponentField& B) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < A.size(); ++i) {
        num += std::norm(A.first.values[i] - B.first.values[i]) +
               std::norm(A.second.values[i] - B.second.values[i]);
        den += std::norm(A.first.values[i]) + std::norm(A.second.values[i]);
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

struct Check {
    std::string name;
    std::function<std::pair<bool, std::string>()> run;
};

std::string fmt(double v) {
    std::ostringstream ss;
    ss << v;
    return ss.str();
}

}  // namespace

std::vector<CheckResult> run_verification_suite() {
    std::vector<Check> checks;
    std::mt19937 rng(0x5eed);

    checks.push_back({"fft round trip", [&] {
        const GridPtr grid = make_grid(1, 256, 10.0);
        std::mt19937 r(1);
        const TwoComponentField F = random_field(grid, r);
        TwoComponentField G(grid);
        G.first = inverse_fft(grid, forward_fft(F.first));
        G.second = inverse_fft(grid, forward_fft(F.second));
        const double err = rel_l2_diff(F, G);
        return std::make_pair(err <= 1e-13, "rel error " + fmt(err));
    }});

    checks.push_back({"parseval", [&] {
        const GridPtr grid = make_grid(1, 256, 10.0);
        std::mt19937 r(2);
        const TwoComponentField F = random_field(grid, r);
        const auto spec = forward_fft(F.first);
        double space = 0.0, freq = 0.0;
        for (const auto& v : F.first.values) space += std::norm(v);
        for (const auto& v : spec) freq += std::norm(v);
        freq /= static_cast<double>(spec.size());
        const double err = std::abs(space - freq) / space;
        return std::make_pair(err <= 1e-12, "rel error " + fmt(err));
    }});

    checks.push_back({"kinetic semigroup and unitarity", [&] {
        const GridPtr grid = make_grid(1, 256, 10.0);
        std::mt19937 r(3);
        const TwoComponentField F = random_field(grid, r);
        ScalarField a = apply_kinetic(apply_kinetic(F.first, 0.3), 0.45);
        ScalarField b = apply_kinetic(F.first, 0.75);
        double num = 0.0, den = 0.0, n0 = 0.0;
        for (std::size_t i = 0; i < a.values.size(); ++i) {
            num += std::norm(a.values[i] - b.values[i]);
            den += std::norm(b.values[i]);
            n0 += std::norm(F.first.values[i]);
        }
        const double err = std::sqrt(num / den);
        const double unit = std::abs(std::sqrt(den) - std::sqrt(n0)) / std::sqrt(n0);
        return std::make_pair(err <= 1e-13 && unit <= 1e-13,
                              "semigroup " + fmt(err) + ", norm drift " + fmt(unit));
    }});

    checks.push_back({"gaussian spectral gradient", [&] {
        const GridPtr grid = make_grid(1, 256, 10.0);
        ScalarField f = sample_field(grid, [](const Point& p) {
            return Complex(std::exp(-0.5 * p[0] * p[0]), 0.0);
        });
        const auto grad = spectral_gradient(f);
        double maxerr = 0.0;
        for (std::size_t i = 0; i < f.values.size(); ++i) {
            const double x = grid->coordinate(grid->axis_index(i, 0));
            maxerr = std::max(maxerr,
                              std::abs(grad[0].values[i] - Complex(-x * std::exp(-0.5 * x * x))));
        }
        return std::make_pair(maxerr <= 1e-10, "max error " + fmt(maxerr));
    }});

    checks.push_back({"exact linear flow", [&] {
        const GridPtr grid = make_grid(1, 256, 10.0);
        const double gamma = 1.0, lambda = 2.0, T = 1.0;
        ScalarField g = sample_field(grid, [&](const Point& p) {
            return Complex(std::pow(gamma / M_PI, 0.25) * std::exp(-0.5 * gamma * p[0] * p[0]), 0.0);
        });
        TwoComponentField psi0(g, g);
        IntegratorConfig cfg;
        cfg.dt_base = 1e-3;
        cfg.t_end = T;
        cfg.snapshot_stride = 1000;
        Trajectory traj = evolve(psi0, original_system({0, 0, 0}, lambda, gamma), cfg);
        TwoComponentField exact = psi0;
        const Complex phase = std::polar(1.0, -0.5 * grid->dim * gamma * T);
        for (auto& v : exact.first.values) v *= phase;
        for (auto& v : exact.second.values) v *= phase;
        exact = rabi_step(exact, lambda, T);
        TwoComponentField diff(grid);
        const auto& F = traj.snapshots.back();
        for (std::size_t i = 0; i < diff.size(); ++i) {
            diff.first.values[i] = F.first.values[i] - exact.first.values[i];
            diff.second.values[i] = F.second.values[i] - exact.second.values[i];
        }
        const double err = sigma_norm(diff).sigma;
        return std::make_pair(err <= 1e-6, "sigma error " + fmt(err));
    }});

    checks.push_back({"mass conservation", [&] {
        Scenario s = standard_cubic_scenario();
        s.lambda = 3.0;
        const GridPtr grid = make_scenario_grid(s);
        Trajectory traj = evolve(make_initial_datum(s, grid),
                                 original_system(s.coupling, s.lambda, s.gamma), s.integrator);
        const double m0 = traj.diagnostics.front().mass;
        double drift = 0.0;
        for (const auto& r : traj.diagnostics) drift = std::max(drift, std::abs(r.mass - m0));
        const double rel = drift / m0;
        return std::make_pair(rel <= 1e-11, "relative drift " + fmt(rel));
    }});

    checks.push_back({"limit component masses", [&] {
        Scenario s = standard_cubic_scenario();
        const GridPtr grid = make_scenario_grid(s);
        Trajectory traj = evolve(hadamard_mix(make_initial_datum(s, grid)),
                                 limit_of(s.coupling, s.gamma), s.integrator);
        const double m1 = traj.diagnostics.front().mass1;
        const double m2 = traj.diagnostics.front().mass2;
        double drift = 0.0;
        for (const auto& r : traj.diagnostics) {
            drift = std::max(drift, std::abs(r.mass1 - m1) / m1);
            drift = std::max(drift, std::abs(r.mass2 - m2) / m2);
        }
        return std::make_pair(drift <= 1e-11, "relative drift " + fmt(drift));
    }});

    checks.push_back({"coupling rotation group law", [&] {
        const GridPtr grid = make_grid(1, 64, 4.0);
        std::mt19937 r(4);
        const TwoComponentField F = random_field(grid, r);
        const double lambda = 7.3;
        const TwoComponentField a = rabi_step(rabi_step(F, lambda, 0.21), lambda, 0.34);
        const TwoComponentField b = rabi_step(F, lambda, 0.55);
        const double err = rel_l2_diff(a, b);
        return std::make_pair(err <= 1e-13, "rel error " + fmt(err));
    }});

    checks.push_back({"rotating-frame round trip", [&] {
        const GridPtr grid = make_grid(1, 64, 4.0);
        std::mt19937 r(5);
        const TwoComponentField F = random_field(grid, r);
        const double lambda = 11.0, t = 0.77;
        const TwoComponentField back = from_transformed(to_transformed(F, lambda, t), lambda, t);
        const double err = rel_l2_diff(F, back);
        const TwoComponentField prof = asymptotic_profile(F, lambda, t);
        const TwoComponentField prof2 = rabi_step(hadamard_mix(F), lambda, t);
        const double err2 = rel_l2_diff(prof, prof2);
        return std::make_pair(err <= 1e-13 && err2 <= 1e-13,
                              "round trip " + fmt(err) + ", profile identity " + fmt(err2));
    }});

    checks.push_back({"split nonlinearity identity", [&] {
        const GridPtr grid = make_grid(1, 64, 4.0);
        const CouplingMatrix c{1.3, -0.4, 2.1};
        double maxerr = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const TwoComponentField Phi = random_field(grid, rng);
            const double lambda = 3.0 + trial, t = 0.13 * (trial + 1);
            const TwoComponentField Psi = from_transformed(Phi, lambda, t);
            const TwoComponentField conj =
                to_transformed(cubic_term_original(Psi, c), lambda, t);
            const TwoComponentField avg = cubic_term_averaged(Phi, c);
            const TwoComponentField osc = cubic_term_oscillatory(Phi, c, lambda, t);
            for (std::size_t i = 0; i < Phi.size(); ++i) {
                maxerr = std::max(maxerr, std::abs(conj.first.values[i] - avg.first.values[i] -
                                                   osc.first.values[i]));
                maxerr = std::max(maxerr, std::abs(conj.second.values[i] - avg.second.values[i] -
                                                   osc.second.values[i]));
            }
        }
        return std::make_pair(maxerr <= 1e-12, "max pointwise error " + fmt(maxerr));
    }});

    checks.push_back({"virial rate consistency", [&] {
        Scenario s = standard_cubic_scenario();
        s.lambda = 3.0;
        s.comp1.phase_ramp = {0.7, 0.0, 0.0};
        s.t_end = 0.5;
        s.integrator.t_end = 0.5;
        const GridPtr grid = make_scenario_grid(s);
        Trajectory traj = evolve(make_initial_datum(s, grid),
                                 original_system(s.coupling, s.lambda, s.gamma), s.integrator);
        const auto& d = traj.diagnostics;
        const double dt = d[1].time - d[0].time;
        double maxerr = 0.0;
        for (std::size_t k = 1; k + 1 < d.size(); ++k) {
            const double fd = (d[k + 1].virial - d[k - 1].virial) / (2.0 * dt);
            maxerr = std::max(maxerr, std::abs(fd - d[k].virial_rate));
        }
        return std::make_pair(maxerr <= 1e-5, "max |d/dt I - 2 int x.J| = " + fmt(maxerr));
    }});

    checks.push_back({"uncertainty inequality", [&] {
        Scenario s = standard_cubic_scenario();
        s.lambda = 3.0;
        const GridPtr grid = make_scenario_grid(s);
        Trajectory traj = evolve(make_initial_datum(s, grid),
                                 original_system(s.coupling, s.lambda, s.gamma), s.integrator);
        bool ok = true;
        double worst = 0.0;
        for (const auto& r : traj.diagnostics) {
            const double bound = (2.0 / grid->dim) * r.xweight_l2 * r.grad_l2;
            worst = std::max(worst, r.mass / bound);
            if (r.mass > bound * (1.0 + 1e-9)) ok = false;
        }
        return std::make_pair(ok, "max mass/bound ratio " + fmt(worst));
    }});

    std::vector<CheckResult> results;
    for (auto& c : checks) {
        CheckResult res;
        res.name = c.name;
        try {
            auto [ok, detail] = c.run();
            res.passed = ok;
            res.detail = detail;
        } catch (const std::exception& e) {
            res.passed = false;
            res.detail = std::string("exception: ") + e.what();
        }
        results.push_back(std::move(res));
    }
    return results;
}

}  // namespace rabinls
