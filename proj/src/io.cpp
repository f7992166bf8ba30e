#include "rabinls/io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

namespace rabinls {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double_value(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "': expected a number, got '" + value + "'");
    }
}

int parse_int_value(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return static_cast<int>(v);
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "': expected an integer, got '" + value + "'");
    }
}

std::vector<double> parse_list_value(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty())
            throw ConfigError("config: key '" + key + "': empty entry in list '" + value + "'");
        out.push_back(parse_double_value(key, item));
    }
    if (out.empty()) throw ConfigError("config: key '" + key + "': empty list");
    return out;
}

std::array<double, 3> parse_vec_value(const std::string& key, const std::string& value) {
    const std::vector<double> items = parse_list_value(key, value);
    if (items.size() > 3)
        throw ConfigError("config: key '" + key + "': at most 3 coordinates allowed");
    std::array<double, 3> out{0.0, 0.0, 0.0};
    std::copy(items.begin(), items.end(), out.begin());
    return out;
}

RunConfig default_config() {
    RunConfig cfg;
    cfg.scenario = standard_cubic_scenario();
    cfg.scenario.lambda = 3.0;
    return cfg;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg = default_config();

    std::istringstream in(text);
    std::string line, section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": malformed section header '" + line + "'");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "grid" && section != "physics" && section != "integrator" &&
                section != "experiment" && section != "output")
                throw ConfigError("config: unknown section '" + section + "'");
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        if (section.empty())
            throw ConfigError("config: key '" + key + "' appears before any section header");

        Scenario& s = cfg.scenario;
        bool known = true;
        if (section == "grid") {
            if (key == "dim") s.dim = parse_int_value(key, value);
            else if (key == "points_per_dim") s.points_per_dim = parse_int_value(key, value);
            else if (key == "half_width") s.half_width = parse_double_value(key, value);
            else known = false;
        } else if (section == "physics") {
            if (key == "beta11") s.coupling.b11 = parse_double_value(key, value);
            else if (key == "beta12") s.coupling.b12 = parse_double_value(key, value);
            else if (key == "beta22") s.coupling.b22 = parse_double_value(key, value);
            else if (key == "gamma") s.gamma = parse_double_value(key, value);
            else if (key == "lambda") s.lambda = parse_double_value(key, value);
            else if (key == "lambdas") cfg.lambdas = parse_list_value(key, value);
            else if (key == "gn_c2") cfg.gn.c2 = parse_double_value(key, value);
            else if (key == "gn_c3") cfg.gn.c3 = parse_double_value(key, value);
            else if (key == "system") {
                if (value == "original") cfg.system = SystemKind::Original;
                else if (value == "limit") cfg.system = SystemKind::Limit;
                else throw ConfigError("config: key 'system': expected 'original' or 'limit', got '" +
                                       value + "'");
            } else known = false;
        } else if (section == "integrator") {
            if (key == "dt_base") s.integrator.dt_base = parse_double_value(key, value);
            else if (key == "t_end") { s.t_end = parse_double_value(key, value);
                                       s.integrator.t_end = s.t_end; }
            else if (key == "snapshot_stride") s.integrator.snapshot_stride = parse_int_value(key, value);
            else if (key == "lambda_cfl") s.integrator.lambda_cfl = parse_double_value(key, value);
            else if (key == "blowup_threshold") s.integrator.blowup_threshold = parse_double_value(key, value);
            else known = false;
        } else if (section == "experiment") {
            if (key == "datum") {
                if (value == "gaussian") s.datum = DatumKind::Gaussian;
                else if (value == "ground_state") s.datum = DatumKind::GroundState;
                else throw ConfigError(
                    "config: key 'datum': expected 'gaussian' or 'ground_state', got '" + value + "'");
            }
            else if (key == "amplitude1") s.comp1.amplitude = parse_double_value(key, value);
            else if (key == "amplitude2") s.comp2.amplitude = parse_double_value(key, value);
            else if (key == "width1") s.comp1.width = parse_double_value(key, value);
            else if (key == "width2") s.comp2.width = parse_double_value(key, value);
            else if (key == "center1") s.comp1.center = parse_vec_value(key, value);
            else if (key == "center2") s.comp2.center = parse_vec_value(key, value);
            else if (key == "phase_ramp1") s.comp1.phase_ramp = parse_vec_value(key, value);
            else if (key == "phase_ramp2") s.comp2.phase_ramp = parse_vec_value(key, value);
            else if (key == "mass_scale") cfg.mass_scale = parse_double_value(key, value);
            else known = false;
        } else if (section == "output") {
            if (key == "directory") cfg.output_directory = value;
            else known = false;
        }
        if (!known)
            throw ConfigError("config: unknown key '" + key + "' in section [" + section + "]");
    }

    // Validate against the owning modules' preconditions before any run.
    try {
        make_grid(cfg.scenario.dim, cfg.scenario.points_per_dim, cfg.scenario.half_width);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: [grid] invalid: ") + e.what());
    }
    try {
        validate(cfg.scenario.integrator);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: [integrator] invalid: ") + e.what());
    }
    if (!(cfg.scenario.gamma > 0.0)) throw ConfigError("config: key 'gamma' must be positive");
    if (!(cfg.scenario.t_end > 0.0)) throw ConfigError("config: key 't_end' must be positive");
    if (!(cfg.gn.c2 > 0.0)) throw ConfigError("config: key 'gn_c2' must be positive");
    if (!(cfg.gn.c3 > 0.0)) throw ConfigError("config: key 'gn_c3' must be positive");
    if (!(cfg.mass_scale > 0.0)) throw ConfigError("config: key 'mass_scale' must be positive");
    if (!(cfg.scenario.comp1.width > 0.0)) throw ConfigError("config: key 'width1' must be positive");
    if (!(cfg.scenario.comp2.width > 0.0)) throw ConfigError("config: key 'width2' must be positive");
    if (cfg.scenario.comp1.amplitude == 0.0 && cfg.scenario.comp2.amplitude == 0.0)
        throw ConfigError("config: the initial datum vanishes; set amplitude1 or amplitude2");
    for (std::size_t i = 0; i < cfg.lambdas.size(); ++i) {
        if (cfg.lambdas[i] == 0.0)
            throw ConfigError("config: key 'lambdas': entries must be nonzero");
        if (i > 0 && std::abs(cfg.lambdas[i]) <= std::abs(cfg.lambdas[i - 1]))
            throw ConfigError("config: key 'lambdas': entries must increase in modulus");
    }
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& cfg) {
    const Scenario& s = cfg.scenario;
    std::ostringstream out;
    out << "[grid]\n"
        << "dim = " << s.dim << "\n"
        << "points_per_dim = " << s.points_per_dim << "\n"
        << "half_width = " << format_double(s.half_width) << "\n\n";
    out << "[physics]\n"
        << "beta11 = " << format_double(s.coupling.b11) << "\n"
        << "beta12 = " << format_double(s.coupling.b12) << "\n"
        << "beta22 = " << format_double(s.coupling.b22) << "\n"
        << "gamma = " << format_double(s.gamma) << "\n"
        << "lambda = " << format_double(s.lambda) << "\n";
    if (!cfg.lambdas.empty()) {
        out << "lambdas = ";
        for (std::size_t i = 0; i < cfg.lambdas.size(); ++i)
            out << (i ? "," : "") << format_double(cfg.lambdas[i]);
        out << "\n";
    }
    out << "gn_c2 = " << format_double(cfg.gn.c2) << "\n"
        << "gn_c3 = " << format_double(cfg.gn.c3) << "\n"
        << "system = " << (cfg.system == SystemKind::Original ? "original" : "limit") << "\n\n";
    out << "[integrator]\n"
        << "dt_base = " << format_double(s.integrator.dt_base) << "\n"
        << "t_end = " << format_double(s.t_end) << "\n"
        << "snapshot_stride = " << s.integrator.snapshot_stride << "\n"
        << "lambda_cfl = " << format_double(s.integrator.lambda_cfl) << "\n"
        << "blowup_threshold = " << format_double(s.integrator.blowup_threshold) << "\n\n";
    const auto vec = [](const std::array<double, 3>& v) {
        return format_double(v[0]) + "," + format_double(v[1]) + "," + format_double(v[2]);
    };
    out << "[experiment]\n"
        << "datum = " << (s.datum == DatumKind::Gaussian ? "gaussian" : "ground_state") << "\n"
        << "amplitude1 = " << format_double(s.comp1.amplitude) << "\n"
        << "width1 = " << format_double(s.comp1.width) << "\n"
        << "center1 = " << vec(s.comp1.center) << "\n"
        << "phase_ramp1 = " << vec(s.comp1.phase_ramp) << "\n"
        << "amplitude2 = " << format_double(s.comp2.amplitude) << "\n"
        << "width2 = " << format_double(s.comp2.width) << "\n"
        << "center2 = " << vec(s.comp2.center) << "\n"
        << "phase_ramp2 = " << vec(s.comp2.phase_ramp) << "\n"
        << "mass_scale = " << format_double(cfg.mass_scale) << "\n\n";
    out << "[output]\n"
        << "directory = " << cfg.output_directory << "\n";
    return out.str();
}

// ---------------------------------------------------------------- CSV

namespace {

constexpr const char* kDiagnosticsHeader =
    "time,mass,mass1,mass2,energy,grad_l2,xweight_l2,virial,virial_rate,"
    "coupling_overlap,modified_energy";

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    return out;
}

}  // namespace

void write_diagnostics_csv(const Trajectory& traj, const std::string& path) {
    std::ofstream out = open_out(path);
    out << kDiagnosticsHeader << "\n";
    for (const auto& r : traj.diagnostics) {
        out << format_double(r.time) << ',' << format_double(r.mass) << ','
            << format_double(r.mass1) << ',' << format_double(r.mass2) << ','
            << format_double(r.energy) << ',' << format_double(r.grad_l2) << ','
            << format_double(r.xweight_l2) << ',' << format_double(r.virial) << ','
            << format_double(r.virial_rate) << ',' << format_double(r.coupling_overlap) << ',';
        if (r.modified_energy) out << format_double(*r.modified_energy);
        out << "\n";
    }
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::vector<DiagnosticRecord> read_diagnostics_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("'" + path + "': empty file");
    if (trim(line) != kDiagnosticsHeader)
        throw std::runtime_error("'" + path + "': unexpected diagnostics header");
    std::vector<DiagnosticRecord> out;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (line.back() == ',') cells.push_back("");
        if (cells.size() != 11)
            throw std::runtime_error("'" + path + "': expected 11 columns, got " +
                                     std::to_string(cells.size()));
        DiagnosticRecord r;
        r.time = std::stod(cells[0]);
        r.mass = std::stod(cells[1]);
        r.mass1 = std::stod(cells[2]);
        r.mass2 = std::stod(cells[3]);
        r.energy = std::stod(cells[4]);
        r.grad_l2 = std::stod(cells[5]);
        r.xweight_l2 = std::stod(cells[6]);
        r.virial = std::stod(cells[7]);
        r.virial_rate = std::stod(cells[8]);
        r.coupling_overlap = std::stod(cells[9]);
        if (!cells[10].empty()) r.modified_energy = std::stod(cells[10]);
        out.push_back(r);
    }
    return out;
}

void write_sweep_csv(const std::vector<SweepResult>& results, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "lambda,err_sup_sigma,err_Linf_L2,err_q8N_L4_value,err_q8N_L4_grad,"
           "err_q8N_L4_xw,status\n";
    for (const auto& r : results) {
        std::string status = "completed";
        if (r.original_status.kind == RunStatus::BlowupDetected)
            status = "original_blowup";
        else if (r.limit_status.kind == RunStatus::BlowupDetected)
            status = "limit_blowup";
        out << format_double(r.lambda) << ',' << format_double(r.err_sup_sigma) << ','
            << format_double(r.err_linf_l2.value) << ',' << format_double(r.err_q_l4.value)
            << ',' << format_double(r.err_q_l4.gradient) << ','
            << format_double(r.err_q_l4.xweight) << ',' << status << "\n";
    }
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

void write_norm_records_csv(const std::vector<NormRecord>& records, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "time,l2,h1,sigma,grad_l2,xweight_l2,l4\n";
    for (const auto& r : records) {
        out << format_double(r.time) << ',' << format_double(r.l2) << ','
            << format_double(r.h1) << ',' << format_double(r.sigma) << ','
            << format_double(r.grad_l2) << ',' << format_double(r.xweight_l2) << ','
            << format_double(r.l4) << "\n";
    }
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

// ---------------------------------------------------------------- snapshots

namespace {

constexpr char kMagic[16] = {'R', 'A', 'B', 'I', 'N', 'L', 'S', '1',
                             0, 0, 0, 0, 0, 0, 0, 0};

void put_u32_le(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64_le(std::string& out, double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

std::uint32_t get_u32_le(const unsigned char* p) {
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

double get_f64_le(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
    return std::bit_cast<double>(v);
}

}  // namespace

void write_snapshot(const TwoComponentField& field, const std::string& path) {
    const Grid& g = *field.grid();
    std::string buf;
    buf.reserve(32 + 32 * field.size());
    buf.append(kMagic, 16);
    put_u32_le(buf, static_cast<std::uint32_t>(g.dim));
    put_u32_le(buf, static_cast<std::uint32_t>(g.points_per_dim));
    put_f64_le(buf, g.half_width);
    for (const ScalarField* comp : {&field.first, &field.second})
        for (const Complex& v : comp->values) {
            put_f64_le(buf, v.real());
            put_f64_le(buf, v.imag());
        }
    std::ofstream out = open_out(path);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

TwoComponentField read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (buf.size() < 32)
        throw std::runtime_error("'" + path + "': truncated snapshot (header incomplete)");
    if (std::memcmp(buf.data(), kMagic, 16) != 0)
        throw std::runtime_error("'" + path + "': not a field snapshot (bad magic)");

    const auto* p = reinterpret_cast<const unsigned char*>(buf.data()) + 16;
    const std::uint32_t dim = get_u32_le(p);
    const std::uint32_t n = get_u32_le(p + 4);
    const double half_width = get_f64_le(p + 8);

    GridPtr grid;
    try {
        grid = make_grid(static_cast<int>(dim), static_cast<int>(n), half_width);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error("'" + path + "': invalid snapshot header: " + e.what());
    }
    const std::size_t total = grid->total_points();
    const std::size_t expected = 32 + 2 * (2 * 8 * total);
    if (buf.size() != expected)
        throw std::runtime_error("'" + path + "': truncated snapshot: expected " +
                                 std::to_string(expected) + " bytes, got " +
                                 std::to_string(buf.size()));

    TwoComponentField field(grid);
    const unsigned char* q = reinterpret_cast<const unsigned char*>(buf.data()) + 32;
    for (ScalarField* comp : {&field.first, &field.second})
        for (std::size_t i = 0; i < total; ++i) {
            const double re = get_f64_le(q);
            const double im = get_f64_le(q + 8);
            comp->values[i] = Complex(re, im);
            q += 16;
        }
    return field;
}

}  // namespace rabinls
