#include "rabinls/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "rabinls/io.hpp"
#include "rabinls/verify.hpp"

namespace rabinls {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitVerifyFailed = 3;

RunConfig load_or_default(const std::string& config_path) {
    if (config_path.empty()) return parse_config("");
    return load_config_file(config_path);
}

std::filesystem::path output_dir(const RunConfig& cfg) {
    std::filesystem::path dir(cfg.output_directory);
    std::filesystem::create_directories(dir);
    return dir;
}

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::GlobalGuaranteed: return "GlobalGuaranteed";
        case Outcome::BlowupPredicted: return "BlowupPredicted";
        default: return "Inconclusive";
    }
}

void print_verdict(const std::string& label, const Verdict& v) {
    std::cout << label << ": " << outcome_name(v.outcome)
              << " (condition: " << v.triggered_condition;
    if (v.certified_time_bound)
        std::cout << ", time bound " << format_double(*v.certified_time_bound);
    std::cout << ")\n";
}

int run_simulate(const std::string& config_path) {
    const RunConfig cfg = load_or_default(config_path);
    const Scenario& s = cfg.scenario;
    const GridPtr grid = make_scenario_grid(s);
    const TwoComponentField psi0 = make_initial_datum(s, grid);

    Trajectory traj;
    if (cfg.system == SystemKind::Original) {
        traj = evolve(psi0, original_system(s.coupling, s.lambda, s.gamma), s.integrator);
    } else {
        traj = evolve(hadamard_mix(psi0), limit_of(s.coupling, s.gamma), s.integrator);
    }

    const auto dir = output_dir(cfg);
    write_diagnostics_csv(traj, (dir / "diagnostics.csv").string());
    write_snapshot(traj.snapshots.back(), (dir / "final_state.rnls").string());

    std::cout << "system: " << (cfg.system == SystemKind::Original ? "original" : "limit")
              << ", dt = " << format_double(traj.dt_used)
              << ", steps = " << (traj.diagnostics.size() - 1) << "\n";
    if (traj.status.kind == RunStatus::BlowupDetected) {
        std::cout << "status: blow-up detected at t = " << format_double(traj.status.t_stop)
                  << (traj.status.nonfinite ? " (non-finite values)" : "") << "\n";
    } else {
        std::cout << "status: completed to t = " << format_double(s.t_end) << "\n";
    }
    const auto& last = traj.diagnostics.back();
    std::cout << "final mass = " << format_double(last.mass)
              << ", energy = " << format_double(last.energy)
              << ", grad L2 = " << format_double(last.grad_l2) << "\n"
              << "wrote " << (dir / "diagnostics.csv").string() << " and "
              << (dir / "final_state.rnls").string() << "\n";
    return kExitOk;
}

int run_sweep(const std::string& config_path, int jobs) {
    const RunConfig cfg = load_or_default(config_path);
    if (cfg.lambdas.empty())
        throw ConfigError("sweep: config must provide [physics] lambdas = v1,v2,...");

    const auto results = run_lambda_sweep(cfg.scenario, cfg.lambdas, jobs);
    const auto dir = output_dir(cfg);
    write_sweep_csv(results, (dir / "sweep.csv").string());

    std::cout << "lambda     err_sup_sigma    status\n";
    for (const auto& r : results) {
        std::string status = "completed";
        if (r.original_status.kind == RunStatus::BlowupDetected) status = "original_blowup";
        std::cout << format_double(r.lambda) << "  " << format_double(r.err_sup_sigma)
                  << "  " << status << "\n";
    }
    try {
        const double rate = fit_rate(results);
        std::cout << "fitted log-log rate: " << format_double(rate) << "\n";
    } catch (const std::invalid_argument& e) {
        std::cout << "rate fit unavailable: " << e.what() << "\n";
    }
    std::cout << "wrote " << (dir / "sweep.csv").string() << "\n";
    return kExitOk;
}

int run_check_criteria(const std::string& config_path) {
    const RunConfig cfg = load_or_default(config_path);
    const Scenario& s = cfg.scenario;
    const GridPtr grid = make_scenario_grid(s);
    const TwoComponentField psi0 = make_initial_datum(s, grid);
    const DataFunctionals d = data_functionals(psi0, s.coupling, s.gamma, s.lambda);

    std::cout << "data functionals: M(0) = " << format_double(d.mass0)
              << ", E(0) = " << format_double(d.energy0)
              << ", I(0) = " << format_double(d.virial0)
              << ", I'(0) = " << format_double(d.virial_rate0)
              << ", |grad|^2 = " << format_double(d.grad0_sq) << "\n";
    print_verdict("global existence (coupled)",
                  gwp_original(s.coupling, s.dim, s.lambda, s.gamma, d, cfg.gn));
    if (s.dim >= 2)
        print_verdict("finite-time collapse (coupled)",
                      blowup_original(s.coupling, s.dim, s.lambda, s.gamma, d));
    else
        std::cout << "finite-time collapse (coupled): not applicable for dim = 1\n";
    print_verdict("global existence (limit)", gwp_limit(s.coupling));
    std::cout << "note: cases 3 and 4 depend on the configured constants gn_c2 = "
              << format_double(cfg.gn.c2) << ", gn_c3 = " << format_double(cfg.gn.c3) << "\n";
    return kExitOk;
}

int run_verify() {
    const auto results = run_verification_suite();
    int failures = 0;
    for (const auto& r : results) {
        std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << " — " << r.detail << "\n";
        if (!r.passed) ++failures;
    }
    std::cout << (failures == 0 ? "all checks passed\n"
                                : std::to_string(failures) + " check(s) failed\n");
    return failures == 0 ? kExitOk : kExitVerifyFailed;
}

int run_appendix(double lambda, double mass_scale) {
    const AppendixReport rep = appendix_scenario(lambda, mass_scale);
    std::cout << "couplings (-1, 0, 1), lambda = " << format_double(rep.lambda)
              << ", first-component mass = " << format_double(rep.mass_scale) << "\n"
              << "effective coefficients: chi = " << format_double(rep.effective.chi)
              << ", chi_tilde = " << format_double(rep.effective.chi_tilde) << "\n";
    print_verdict("global existence (coupled)", rep.gwp);
    print_verdict("finite-time collapse (coupled)", rep.blowup);
    print_verdict("global existence (limit)", rep.limit_gwp);
    if (rep.status.kind == RunStatus::BlowupDetected) {
        std::cout << "run: blow-up detected at t = " << format_double(rep.status.t_stop) << "\n";
    } else {
        std::cout << "run: completed, final/initial gradient ratio = "
                  << format_double(rep.grad_ratio_final) << "\n";
    }
    if (rep.err_sup_sigma)
        std::cout << "sup-sigma error against the linear limit profile: "
                  << format_double(*rep.err_sup_sigma) << "\n";
    return kExitOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Spectral solver for the Rabi-coupled two-component "
                 "nonlinear Schrodinger system and its large-coupling limit"};
    app.require_subcommand(1);

    std::string config_path;
    int jobs = 0;
    double appendix_lambda = 0.0;
    double appendix_mass = 11.0;

    auto* sim = app.add_subcommand("simulate", "integrate one system at one coupling strength");
    sim->add_option("-c,--config", config_path, "configuration file");

    auto* sweep = app.add_subcommand("sweep", "coupling-strength convergence study with rate fit");
    sweep->add_option("-c,--config", config_path, "configuration file");
    sweep->add_option("-j,--jobs", jobs, "parallel runs (default: hardware)");

    auto* crit = app.add_subcommand("check-criteria", "existence/collapse verdicts, no time stepping");
    crit->add_option("-c,--config", config_path, "configuration file");

    app.add_subcommand("verify", "run the built-in invariant suite");

    auto* appx = app.add_subcommand("appendix", "focusing/defocusing example in two dimensions");
    appx->add_option("--lambda", appendix_lambda, "coupling strength (>= 0)");
    appx->add_option("--mass-scale", appendix_mass, "first-component mass");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (sim->parsed()) return run_simulate(config_path);
        if (sweep->parsed()) return run_sweep(config_path, jobs);
        if (crit->parsed()) return run_check_criteria(config_path);
        if (app.get_subcommand("verify")->parsed()) return run_verify();
        if (appx->parsed()) return run_appendix(appendix_lambda, appendix_mass);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitValidation;
}

}  // namespace rabinls
