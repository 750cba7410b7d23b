#include "stokesopt/fields.hpp"

#include <algorithm>
#include <stdexcept>

namespace stokesopt {

double min_value(const std::vector<double>& v) {
    if (v.empty()) throw std::invalid_argument("min_value: empty field");
    return *std::min_element(v.begin(), v.end());
}

double max_value(const std::vector<double>& v) {
    if (v.empty()) throw std::invalid_argument("max_value: empty field");
    return *std::max_element(v.begin(), v.end());
}

}  // namespace stokesopt
