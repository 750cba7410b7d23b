#include <string>
#include <vector>

#include "stokesopt/app.hpp"

int main(int argc, char** argv) {
    return stokesopt::cli_run(std::vector<std::string>(argv + 1, argv + argc));
}
