#ifndef STOKESOPT_FEM_HPP
#define STOKESOPT_FEM_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "stokesopt/csr.hpp"
#include "stokesopt/fields.hpp"
#include "stokesopt/mesh.hpp"
#include "stokesopt/quadrature.hpp"

namespace stokesopt {

// One dof per mesh vertex. Boundary vertex sets are disjoint across tags;
// a vertex shared by differently tagged edges goes to the higher-priority
// tag (Inflow > Wall > Outflow).
struct DofMapP1 {
    int count = 0;
    std::array<std::vector<int>, 3> boundary_by_tag;  // indexed by BoundaryTag

    static DofMapP1 build(const TriMesh& mesh);
};

// Scalar P2 dofs: mesh vertices followed by edge midpoints. `touches`
// records every tag a boundary dof sits on (bit per tag), while
// boundary_by_tag applies the same priority rule as DofMapP1.
struct DofMapP2 {
    int count = 0;
    std::vector<Vec2> coords;
    std::array<std::vector<int>, 3> boundary_by_tag;
    std::vector<std::uint8_t> touches;

    static DofMapP2 build(const TriMesh& mesh);

    bool touches_tag(int dof, BoundaryTag tag) const {
        return (touches[dof] >> static_cast<int>(tag)) & 1;
    }
};

// P1 shape values/gradients on the reference triangle.
void p1_shape(double x, double y, double out[3]);
inline constexpr double kP1RefGrad[3][2] = {{-1.0, -1.0}, {1.0, 0.0}, {0.0, 1.0}};

// P2 shapes in local order [v0 v1 v2 e01 e12 e20].
void p2_shape(double x, double y, double out[6]);
void p2_shape_grad(double x, double y, double out[6][2]);

// Per-element local P2 dof -> global scalar dof.
std::array<int, 6> p2_element_dofs(const TriMesh& mesh, int t);

// One value per (element, quadrature point); element-major layout.
struct QuadPointField {
    std::vector<double> values;
    int points_per_element = 0;

    double operator()(int elem, int q) const {
        return values[static_cast<size_t>(elem) * points_per_element + q];
    }
};

// |u|^2 at quadrature points, straight from the P2 coefficients.
QuadPointField eval_speed_squared(const TriMesh& mesh, const QuadratureRule& rule,
                                  const DofMapP2& dofs, const VectorFieldP2& u);

// alpha0*(1-phi)^2 at quadrature points from the P1 interpolant of phi.
QuadPointField eval_brinkman_weight(const TriMesh& mesh, const QuadratureRule& rule,
                                    const ScalarFieldP1& phi, double alpha0);

CsrMatrix assemble_p1_mass(const TriMesh& mesh, const QuadratureRule& rule);
CsrMatrix assemble_p1_stiffness(const TriMesh& mesh, const QuadratureRule& rule);
// Throws std::invalid_argument when the weight is negative at a quadrature
// point (that would destroy the SPD structure the scheme depends on).
CsrMatrix assemble_weighted_p1_mass(const TriMesh& mesh, const QuadratureRule& rule,
                                    const QuadPointField& w);
CsrMatrix assemble_p2_vector_stiffness(const TriMesh& mesh, const QuadratureRule& rule,
                                       const DofMapP2& dofs);
CsrMatrix assemble_weighted_p2_vector_mass(const TriMesh& mesh, const QuadratureRule& rule,
                                           const DofMapP2& dofs, const QuadPointField& w);
// Rows: P1 pressure dofs, columns: P2 vector dofs. Entry (q, u) = (div u, q).
CsrMatrix assemble_divergence(const TriMesh& mesh, const QuadratureRule& rule,
                              const DofMapP2& dofs);

// Load vector b_i = sum_e sum_q w_q detJ src(e,q) psi_i(x_q) over P1 dofs.
std::vector<double> assemble_p1_load(const TriMesh& mesh, const QuadratureRule& rule,
                                     const QuadPointField& src);

// Vertex values copied, midpoint values averaged from edge endpoints;
// exact on P1 functions.
std::vector<double> p1_to_p2_interpolate(const TriMesh& mesh, const DofMapP2& dofs,
                                         const ScalarFieldP1& field);
// Restriction to vertex dofs of one scalar P2 component.
ScalarFieldP1 p2_to_p1_project(const TriMesh& mesh, std::span<const double> p2_component);

}  // namespace stokesopt

#endif
