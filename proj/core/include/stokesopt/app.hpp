#ifndef STOKESOPT_APP_HPP
#define STOKESOPT_APP_HPP

#include <string>
#include <vector>

namespace stokesopt {

// Command line entry point; takes the arguments after the program name and
// returns the process exit status.
int cli_run(const std::vector<std::string>& args);

}  // namespace stokesopt

#endif
