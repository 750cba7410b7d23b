#ifndef STOKESOPT_FIELDS_HPP
#define STOKESOPT_FIELDS_HPP

#include <vector>

namespace stokesopt {

// Nodal coefficients of a piecewise-linear scalar field, one per mesh vertex.
struct ScalarFieldP1 {
    std::vector<double> values;

    ScalarFieldP1() = default;
    explicit ScalarFieldP1(int n, double v = 0.0) : values(static_cast<size_t>(n), v) {}

    int size() const { return static_cast<int>(values.size()); }
    double& operator[](int i) { return values[static_cast<size_t>(i)]; }
    double operator[](int i) const { return values[static_cast<size_t>(i)]; }
};

// Piecewise-linear pressure, one coefficient per mesh vertex.
struct ScalarPressureP1 {
    std::vector<double> values;

    ScalarPressureP1() = default;
    explicit ScalarPressureP1(int n, double v = 0.0) : values(static_cast<size_t>(n), v) {}

    int size() const { return static_cast<int>(values.size()); }
    double& operator[](int i) { return values[static_cast<size_t>(i)]; }
    double operator[](int i) const { return values[static_cast<size_t>(i)]; }
};

// Quadratic vector field (velocity). Scalar P2 dofs are mesh vertices
// followed by edge midpoints; the x component over all dofs is stored first,
// then the y component.
struct VectorFieldP2 {
    int dofs_per_component = 0;
    std::vector<double> values;

    VectorFieldP2() = default;
    explicit VectorFieldP2(int n) : dofs_per_component(n), values(static_cast<size_t>(2) * n, 0.0) {}

    int size() const { return static_cast<int>(values.size()); }
    double& x(int i) { return values[static_cast<size_t>(i)]; }
    double x(int i) const { return values[static_cast<size_t>(i)]; }
    double& y(int i) { return values[static_cast<size_t>(dofs_per_component) + i]; }
    double y(int i) const { return values[static_cast<size_t>(dofs_per_component) + i]; }
};

double min_value(const std::vector<double>& v);
double max_value(const std::vector<double>& v);

}  // namespace stokesopt

#endif
