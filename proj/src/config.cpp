#include "slitflow/config.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "slitflow/csv.hpp"

namespace slitflow {

std::string mode_name(RunMode mode) {
    switch (mode) {
        case RunMode::ProbeMap: return "probe-map";
        case RunMode::Field: return "field";
        case RunMode::Advect: return "advect";
        case RunMode::SweepEps: return "sweep-eps";
        case RunMode::Check: return "check";
    }
    return "?";
}

std::optional<RunMode> mode_from_name(const std::string& name) {
    if (name == "probe-map") return RunMode::ProbeMap;
    if (name == "field") return RunMode::Field;
    if (name == "advect") return RunMode::Advect;
    if (name == "sweep-eps") return RunMode::SweepEps;
    if (name == "check") return RunMode::Check;
    return std::nullopt;
}

bool RunConfig::operator==(const RunConfig& other) const {
    return mode == other.mode && epsilon == other.epsilon && gamma == other.gamma &&
           eta == other.eta && vorticity_preset == other.vorticity_preset &&
           grid_origin_x == other.grid_origin_x && grid_origin_y == other.grid_origin_y &&
           grid_h == other.grid_h && grid_nx == other.grid_nx && grid_ny == other.grid_ny &&
           dt == other.dt && t_final == other.t_final && blob_delta == other.blob_delta &&
           output_dir == other.output_dir && seed == other.seed &&
           snap_cadence == other.snap_cadence;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

double parse_number(int line, const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        fail(line, "key '" + key + "': malformed number '" + value + "'");
    }
    if (used != value.size() || !std::isfinite(v)) {
        fail(line, "key '" + key + "': malformed number '" + value + "'");
    }
    return v;
}

long long parse_integer(int line, const std::string& key, const std::string& value) {
    const double v = parse_number(line, key, value);
    if (v != std::floor(v)) fail(line, "key '" + key + "': expected an integer, got '" + value + "'");
    return static_cast<long long>(v);
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    bool saw_mode = false;
    std::map<std::string, int> seen;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(lineno, "expected 'key = value', got '" + trim(raw) + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(lineno, "empty key");
        if (value.empty()) fail(lineno, "key '" + key + "': empty value");
        if (seen.count(key)) {
            fail(lineno, "key '" + key + "' already set on line " + std::to_string(seen[key]));
        }
        seen[key] = lineno;

        if (key == "mode") {
            const auto m = mode_from_name(value);
            if (!m) fail(lineno, "unknown mode '" + value + "'");
            cfg.mode = *m;
            saw_mode = true;
        } else if (key == "epsilon") {
            cfg.epsilon = parse_number(lineno, key, value);
            if (cfg.epsilon < 0.0) {
                fail(lineno, "key 'epsilon': must be >= 0 (0 selects the limit model)");
            }
        } else if (key == "gamma") {
            cfg.gamma = parse_number(lineno, key, value);
        } else if (key == "eta") {
            cfg.eta = parse_number(lineno, key, value);
            if (cfg.eta < 0.0) fail(lineno, "key 'eta': must be >= 0");
        } else if (key == "vorticity_preset") {
            if (value != "gaussian" && value != "dipole" && value != "zero" && value != "tracer") {
                fail(lineno, "key 'vorticity_preset': unknown preset '" + value + "'");
            }
            cfg.vorticity_preset = value;
        } else if (key == "grid_origin_x") {
            cfg.grid_origin_x = parse_number(lineno, key, value);
        } else if (key == "grid_origin_y") {
            cfg.grid_origin_y = parse_number(lineno, key, value);
        } else if (key == "grid_h") {
            cfg.grid_h = parse_number(lineno, key, value);
            if (!(cfg.grid_h > 0.0)) fail(lineno, "key 'grid_h': must be > 0");
        } else if (key == "grid_nx") {
            const long long v = parse_integer(lineno, key, value);
            if (v < 1) fail(lineno, "key 'grid_nx': must be >= 1");
            cfg.grid_nx = static_cast<int>(v);
        } else if (key == "grid_ny") {
            const long long v = parse_integer(lineno, key, value);
            if (v < 1) fail(lineno, "key 'grid_ny': must be >= 1");
            cfg.grid_ny = static_cast<int>(v);
        } else if (key == "dt") {
            cfg.dt = parse_number(lineno, key, value);
            if (!(cfg.dt > 0.0)) fail(lineno, "key 'dt': must be > 0");
        } else if (key == "t_final") {
            cfg.t_final = parse_number(lineno, key, value);
            if (!(cfg.t_final > 0.0)) fail(lineno, "key 't_final': must be > 0");
        } else if (key == "blob_delta") {
            if (value == "auto") {
                cfg.blob_delta = std::nullopt;
            } else {
                const double v = parse_number(lineno, key, value);
                if (v < 0.0) fail(lineno, "key 'blob_delta': must be >= 0 or 'auto'");
                cfg.blob_delta = v;
            }
        } else if (key == "output_dir") {
            cfg.output_dir = value;
        } else if (key == "seed") {
            const long long v = parse_integer(lineno, key, value);
            if (v < 0) fail(lineno, "key 'seed': must be >= 0");
            cfg.seed = static_cast<unsigned long long>(v);
        } else if (key == "snap_cadence") {
            const long long v = parse_integer(lineno, key, value);
            if (v < 0) fail(lineno, "key 'snap_cadence': must be >= 0");
            cfg.snap_cadence = static_cast<unsigned long long>(v);
        } else {
            fail(lineno, "unknown key '" + key + "'");
        }
    }
    if (!saw_mode) throw ConfigError("config: required key 'mode' is missing");
    return cfg;
}

std::string format_config(const RunConfig& c) {
    std::ostringstream out;
    out << "mode = " << mode_name(c.mode) << "\n";
    out << "epsilon = " << format_double(c.epsilon) << "\n";
    out << "gamma = " << format_double(c.gamma) << "\n";
    out << "eta = " << format_double(c.eta) << "\n";
    out << "vorticity_preset = " << c.vorticity_preset << "\n";
    out << "grid_origin_x = " << format_double(c.grid_origin_x) << "\n";
    out << "grid_origin_y = " << format_double(c.grid_origin_y) << "\n";
    out << "grid_h = " << format_double(c.grid_h) << "\n";
    out << "grid_nx = " << c.grid_nx << "\n";
    out << "grid_ny = " << c.grid_ny << "\n";
    out << "dt = " << format_double(c.dt) << "\n";
    out << "t_final = " << format_double(c.t_final) << "\n";
    out << "blob_delta = " << (c.blob_delta ? format_double(*c.blob_delta) : std::string("auto"))
        << "\n";
    out << "output_dir = " << c.output_dir << "\n";
    out << "seed = " << c.seed << "\n";
    out << "snap_cadence = " << c.snap_cadence << "\n";
    return out.str();
}

}  // namespace slitflow
