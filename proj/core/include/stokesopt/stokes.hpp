#ifndef STOKESOPT_STOKES_HPP
#define STOKESOPT_STOKES_HPP

#include <functional>
#include <optional>

#include "stokesopt/fem.hpp"
#include "stokesopt/solvers.hpp"

namespace stokesopt {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Inflow velocity data, evaluated at boundary dof coordinates. A null
// function means zero inflow everywhere.
struct VelocityBc {
    std::function<Vec2(double x, double y)> inflow;
};

struct StokesSolution {
    VectorFieldP2 u;
    ScalarPressureP1 p;
    SaddleResult residuals;
};

// Brinkman-penalized Stokes operator on a fixed mesh. The viscous block and
// the divergence block are assembled once; each solve adds the
// phase-dependent penalization mass and refactorizes.
class StokesSolver {
public:
    StokesSolver(const TriMesh& mesh, const QuadratureRule& rule, VelocityBc bc);

    StokesSolution solve(const ScalarFieldP1& phi, double alpha0, double tol) const;

    const DofMapP2& dof_map() const { return dofs_; }
    const CsrMatrix& velocity_stiffness() const { return stiffness_; }
    const CsrMatrix& divergence() const { return divergence_; }
    bool corner_conflict_warned() const { return corner_conflict_; }

private:
    const TriMesh& mesh_;
    const QuadratureRule& rule_;
    DofMapP2 dofs_;
    CsrMatrix stiffness_;
    CsrMatrix divergence_;
    std::vector<double> dirichlet_values_;   // full vector layout, 0 on free dofs
    std::vector<char> is_dirichlet_;
    std::vector<int> free_to_full_;
    std::vector<int> full_to_free_;
    int pinned_pressure_dof_ = -1;
    bool corner_conflict_ = false;
};

// Convenience wrapper matching the one-shot contract.
StokesSolution solve_state(const TriMesh& mesh, const QuadratureRule& rule,
                           const ScalarFieldP1& phi, const VelocityBc& bc, double alpha0,
                           double tol = 1e-10);

// 1/2 u^T A u with A the P2 vector stiffness.
double dissipation_energy(const CsrMatrix& p2_stiffness, const VectorFieldP2& u);

// 1/2 * integral of alpha0 (1-phi)^2 |u|^2, evaluated with the same
// quadrature values of |u|^2 the assembly uses.
double penalization_energy(const TriMesh& mesh, const QuadratureRule& rule,
                           const QuadPointField& speed_squared, const ScalarFieldP1& phi,
                           double alpha0);

}  // namespace stokesopt

#endif
