// io.hpp — configuration text, CSV output, and binary field snapshots.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "rabinls/criteria.hpp"
#include "rabinls/experiments.hpp"
#include "rabinls/norms.hpp"

namespace rabinls {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Everything a run needs, resolved from the key-value configuration text.
struct RunConfig {
    Scenario scenario;
    SystemKind system = SystemKind::Original;  // simulate target
    std::vector<double> lambdas;               // sweep list
    GNConstants gn;
    double mass_scale = 11.0;                  // appendix example
    std::string output_directory = ".";
};

// Sections: [grid], [physics], [integrator], [experiment], [output].
// Unknown sections or keys are errors; every value is validated against the
// owning module's preconditions before any computation starts.
RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);
std::string serialize_config(const RunConfig& cfg);

// Doubles are printed with 17 significant digits (lossless round trip).
std::string format_double(double v);

// Columns: time,mass,mass1,mass2,energy,grad_l2,xweight_l2,virial,
// virial_rate,coupling_overlap,modified_energy. The last column is empty for
// limit-system runs.
void write_diagnostics_csv(const Trajectory& traj, const std::string& path);
std::vector<DiagnosticRecord> read_diagnostics_csv(const std::string& path);

// Columns: lambda,err_sup_sigma,err_Linf_L2,err_q8N_L4_value,
// err_q8N_L4_grad,err_q8N_L4_xw,status.
void write_sweep_csv(const std::vector<SweepResult>& results, const std::string& path);

// Columns: time,l2,h1,sigma,grad_l2,xweight_l2,l4.
void write_norm_records_csv(const std::vector<NormRecord>& records, const std::string& path);

// Binary snapshot: 16-byte magic ("RABINLS1" zero padded), little-endian
// u32 dim, u32 points_per_dim, f64 half_width, then each component as
// interleaved (re, im) f64 pairs in row-major order.
void write_snapshot(const TwoComponentField& field, const std::string& path);
TwoComponentField read_snapshot(const std::string& path);

}  // namespace rabinls
