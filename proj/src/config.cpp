#include "leray/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace leray {

RunConfig RunConfig::defaults() {
    RunConfig cfg;
    cfg.scheme.grid = GridSpec::make(32, M_PI);
    return cfg;
}

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return x;
    } catch (const std::exception&) {
        fail(ErrorKind::config, "config: bad number for " + key + ": '" + value + "'");
    }
}

long parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long x = std::stol(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return x;
    } catch (const std::exception&) {
        fail(ErrorKind::config, "config: bad integer for " + key + ": '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "on") return true;
    if (value == "false" || value == "0" || value == "off") return false;
    fail(ErrorKind::config, "config: bad boolean for " + key + ": '" + value + "'");
}

void assign(RunConfig& cfg, const std::string& section, const std::string& key,
            const std::string& value) {
    const std::string full = section + "." + key;
    if (section == "grid") {
        // grid changes go through GridSpec::make for validation
        int n = cfg.scheme.grid.n;
        double L = cfg.scheme.grid.half_width;
        if (key == "n")
            n = static_cast<int>(parse_int(full, value));
        else if (key == "L" || key == "half_width")
            L = parse_double(full, value);
        else
            fail(ErrorKind::config, "config: unknown key " + full);
        try {
            cfg.scheme.grid = GridSpec::make(n, L);
        } catch (const SolverError& e) {
            fail(ErrorKind::config, std::string("config: ") + e.what());
        }
    } else if (section == "scheme") {
        if (key == "nu")
            cfg.scheme.heat.nu = parse_double(full, value);
        else if (key == "m")
            cfg.scheme.m = static_cast<int>(parse_int(full, value));
        else if (key == "M")
            cfg.scheme.M = static_cast<int>(parse_int(full, value));
        else if (key == "tol")
            cfg.scheme.tol = parse_double(full, value);
        else if (key == "max_subiter")
            cfg.scheme.max_subiter = static_cast<int>(parse_int(full, value));
        else if (key == "dealias")
            cfg.scheme.dealias = parse_bool(full, value);
        else if (key == "c_n")
            cfg.scheme.c_n = parse_double(full, value);
        else if (key == "policy") {
            if (value == "theorem")
                cfg.scheme.policy = StepPolicy::theorem;
            else if (value == "fixed")
                cfg.scheme.policy = StepPolicy::fixed;
            else if (value == "adaptive")
                cfg.scheme.policy = StepPolicy::adaptive;
            else
                fail(ErrorKind::config, "config: unknown policy '" + value + "'");
        } else if (key == "rho")
            cfg.scheme.rho_fixed = parse_double(full, value);
        else if (key == "substep") {
            if (value == "star")
                cfg.scheme.kind = SubstepKind::star;
            else if (value == "nonstar")
                cfg.scheme.kind = SubstepKind::nonstar;
            else
                fail(ErrorKind::config, "config: unknown substep '" + value + "'");
        } else
            fail(ErrorKind::config, "config: unknown key " + full);
    } else if (section == "control") {
        if (key == "mode") {
            if (value == "none")
                cfg.scheme.control.kind = ControlKind::none;
            else if (value == "simple")
                cfg.scheme.control.kind = ControlKind::simple;
            else if (value == "neg_first_increment")
                cfg.scheme.control.kind = ControlKind::neg_first_increment;
            else if (value == "consumption")
                cfg.scheme.control.kind = ControlKind::consumption;
            else if (value == "foresight")
                cfg.scheme.control.kind = ControlKind::foresight;
            else
                fail(ErrorKind::config, "config: unknown control mode '" + value + "'");
        } else if (key == "C")
            cfg.scheme.control.C = parse_double(full, value);
        else if (key == "eps")
            cfg.scheme.control.eps = parse_double(full, value);
        else if (key == "c_kp")
            cfg.scheme.c_kp = parse_double(full, value);
        else
            fail(ErrorKind::config, "config: unknown key " + full);
    } else if (section == "run") {
        if (key == "preset")
            cfg.preset = preset_from_name(value);
        else if (key == "steps")
            cfg.n_steps = static_cast<int>(parse_int(full, value));
        else if (key == "out")
            cfg.out_dir = value;
        else if (key == "checkpoint_cadence")
            cfg.checkpoint_cadence = static_cast<int>(parse_int(full, value));
        else if (key == "seed")
            cfg.seed = static_cast<std::uint64_t>(parse_int(full, value));
        else if (key == "perturb")
            cfg.perturb = parse_double(full, value);
        else
            fail(ErrorKind::config, "config: unknown key " + full);
    } else {
        fail(ErrorKind::config, "config: unknown section [" + section + "]");
    }
}

}  // namespace

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::config, "config: cannot open " + path);
    RunConfig cfg = RunConfig::defaults();
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                fail(ErrorKind::config,
                     "config: bad section header at line " + std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(ErrorKind::config,
                 "config: expected key = value at line " + std::to_string(lineno));
        if (section.empty())
            fail(ErrorKind::config,
                 "config: key outside a [section] at line " + std::to_string(lineno));
        assign(cfg, section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        fail(ErrorKind::config, "override must be section.key=value: " + assignment);
    const std::string path = trim(assignment.substr(0, eq));
    const std::string value = trim(assignment.substr(eq + 1));
    const auto dot = path.find('.');
    if (dot == std::string::npos)
        fail(ErrorKind::config, "override must be section.key=value: " + assignment);
    assign(cfg, path.substr(0, dot), path.substr(dot + 1), value);
}

}  // namespace leray
