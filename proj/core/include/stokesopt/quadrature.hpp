#ifndef STOKESOPT_QUADRATURE_HPP
#define STOKESOPT_QUADRATURE_HPP

#include <vector>

#include "stokesopt/mesh.hpp"

namespace stokesopt {

// Quadrature on the reference triangle (0,0), (1,0), (0,1). Weights sum to
// the reference area 1/2 and the rule integrates polynomials of total degree
// <= `degree` exactly.
struct QuadratureRule {
    std::vector<Vec2> points;
    std::vector<double> weights;
    int degree = 0;

    int size() const { return static_cast<int>(points.size()); }

    // Collapsed-square Gauss-Legendre rule of the requested degree. All
    // weights are positive.
    static QuadratureRule triangle(int degree);
};

}  // namespace stokesopt

#endif
