#ifndef STOKESOPT_PHASEFIELD_HPP
#define STOKESOPT_PHASEFIELD_HPP

#include "stokesopt/fem.hpp"
#include "stokesopt/solvers.hpp"

namespace stokesopt {

// Truncated double-well F: quartic well on [0,1], quadratic continuations
// outside. Keeps |F''| bounded by 1/2 everywhere.
double double_well(double v);
double double_well_derivative(double v);

struct PhaseParams {
    double eps = 0.01;     // interface width
    double eta = 0.01;     // perimeter weight
    double dt = 1.0;       // pseudo-time step
    double stab = 0.25;    // stabilizer in front of (phi* - phi)
    double alpha0 = 1e4;   // Brinkman penalization magnitude

    double min_stab() const { return eta / (4.0 * eps); }

    // Throws unless stab >= eta/(4 eps), the energy-stability threshold;
    // allow_unstable skips that check (runs then live or die by the decay
    // guard).
    static PhaseParams make(double eps, double eta, double dt, double stab, double alpha0,
                            bool allow_unstable = false);
};

// The linear SPD operator of one semi-implicit phase update with the
// velocity-dependent weights frozen:
//   [(1/dt + stab) M + eps*eta K + (alpha0/2) M_w] phi* = rhs(phi_k, lambda)
// with w = |u|^2 at quadrature points. Built once per velocity update and
// reused across the inner iterations.
class AllenCahnOperator {
public:
    AllenCahnOperator(const TriMesh& mesh, const QuadratureRule& rule, const CsrMatrix& mass,
                      const CsrMatrix& stiffness, QuadPointField speed_squared,
                      PhaseParams params);

    ScalarFieldP1 step(const ScalarFieldP1& phi_k, double lambda, double tol, int maxit = 10000,
                       CgResult* report = nullptr) const;

    const CsrMatrix& system() const { return system_; }
    const QuadPointField& speed_squared() const { return speed_squared_; }
    const PhaseParams& params() const { return params_; }

private:
    const TriMesh& mesh_;
    const QuadratureRule& rule_;
    const CsrMatrix& mass_;
    QuadPointField speed_squared_;
    PhaseParams params_;
    CsrMatrix weighted_mass_;  // (|u|^2 phi, psi)
    CsrMatrix system_;
};

// One-shot wrapper over AllenCahnOperator.
ScalarFieldP1 allen_cahn_step(const TriMesh& mesh, const QuadratureRule& rule,
                              const ScalarFieldP1& phi_k, const VectorFieldP2& u, double lambda,
                              const PhaseParams& params, double tol = 1e-10);

// Nodal clamp onto [0,1]; values already inside are untouched bit-for-bit.
ScalarFieldP1 cutoff(const ScalarFieldP1& phi);

// (eps/2) |grad phi|^2 + (1/eps) F(phi), integrated with `rule`.
double ginzburg_landau_energy(const TriMesh& mesh, const QuadratureRule& rule,
                              const CsrMatrix& stiffness, const ScalarFieldP1& phi, double eps);

// Integral of F(phi) alone.
double well_integral(const TriMesh& mesh, const QuadratureRule& rule, const ScalarFieldP1& phi);

// 1^T M phi, the discrete volume of the phase.
double field_integral(const CsrMatrix& mass, const ScalarFieldP1& phi);

// integral(phi) - beta*V0, with integral(phi) = 1^T M phi.
double volume_misfit(const CsrMatrix& mass, const ScalarFieldP1& phi, double beta, double V0);

// Sum over elements of the |grad .|^2 form difference between two fields.
// Elements where the fields agree contribute exactly zero, which keeps the
// cut-off gradient comparison free of cancellation noise.
double gradient_form_difference(const TriMesh& mesh, const ScalarFieldP1& a,
                                const ScalarFieldP1& b);

}  // namespace stokesopt

#endif
