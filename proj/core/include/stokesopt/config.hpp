#ifndef STOKESOPT_CONFIG_HPP
#define STOKESOPT_CONFIG_HPP

#include <map>
#include <string>

#include "stokesopt/optimizer.hpp"

namespace stokesopt {

// Flat key=value file; '#' starts a comment, blank lines are skipped.
std::map<std::string, std::string> parse_config_file(const std::string& path);

// Applies recognized keys onto the run configuration (and the case name /
// mesh resolution, which travel alongside it). Unknown keys are an error.
struct RunSetup {
    std::string case_name;
    int nx = -1;  // -1 keeps the case default
    int ny = -1;
    RunConfig config;
};

void apply_config(const std::map<std::string, std::string>& kv, RunSetup& setup);

}  // namespace stokesopt

#endif
