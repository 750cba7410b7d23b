#include "stokesopt/config.hpp"

#include <fstream>
#include <stdexcept>

namespace stokesopt {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    throw ConfigError("config key '" + key + "': expected a boolean, got '" + value + "'");
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': expected a number, got '" + value + "'");
    }
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': expected an integer, got '" + value + "'");
    }
}

}  // namespace

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string entry = trim(line);
        if (entry.empty()) continue;
        const auto eq = entry.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config file '" + path + "' line " + std::to_string(line_no) +
                              ": expected key=value");
        const std::string key = trim(entry.substr(0, eq));
        const std::string value = trim(entry.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config file '" + path + "' line " + std::to_string(line_no) +
                              ": empty key");
        kv[key] = value;
    }
    return kv;
}

void apply_config(const std::map<std::string, std::string>& kv, RunSetup& setup) {
    RunConfig& c = setup.config;
    for (const auto& [key, value] : kv) {
        if (key == "case") setup.case_name = value;
        else if (key == "nx") setup.nx = parse_int(key, value);
        else if (key == "ny") setup.ny = parse_int(key, value);
        else if (key == "outer") c.outer = parse_int(key, value);
        else if (key == "inner") c.inner = parse_int(key, value);
        else if (key == "eps") c.eps = parse_double(key, value);
        else if (key == "eta") c.eta = parse_double(key, value);
        else if (key == "dt") c.dt = parse_double(key, value);
        else if (key == "stab") c.stab = parse_double(key, value);
        else if (key == "alpha0") c.alpha0 = parse_double(key, value);
        else if (key == "beta") c.beta = parse_double(key, value);
        else if (key == "beta0") c.beta0 = parse_double(key, value);
        else if (key == "lambda0") c.lambda0 = parse_double(key, value);
        else if (key == "linear_tol") c.linear_tol = parse_double(key, value);
        else if (key == "energy_slack") c.energy_slack = parse_double(key, value);
        else if (key == "stop_tol") c.stop_tol = parse_double(key, value);
        else if (key == "stop_patience") c.stop_patience = parse_int(key, value);
        else if (key == "quadrature_degree") c.quadrature_degree = parse_int(key, value);
        else if (key == "lambda_frozen_per_outer") c.lambda_frozen_per_outer = parse_bool(key, value);
        else if (key == "allow_unstable") c.allow_unstable = parse_bool(key, value);
        else if (key == "seed") c.seed = static_cast<unsigned>(parse_int(key, value));
        else if (key == "vtk_every") c.vtk_every = parse_int(key, value);
        else if (key == "out_dir") c.out_dir = value;
        else throw ConfigError("unknown config key '" + key + "'");
    }
}

}  // namespace stokesopt
