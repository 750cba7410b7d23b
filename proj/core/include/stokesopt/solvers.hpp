#ifndef STOKESOPT_SOLVERS_HPP
#define STOKESOPT_SOLVERS_HPP

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "stokesopt/csr.hpp"

namespace stokesopt {

struct SolverError : std::runtime_error {
    double residual = 0.0;
    SolverError(const std::string& msg, double res) : std::runtime_error(msg), residual(res) {}
};

struct CgResult {
    int iterations = 0;
    double relative_residual = 0.0;
};

// Jacobi-preconditioned conjugate gradients for SPD systems. The returned
// residual is recomputed from b - A x after the iteration, not taken from
// the recurrence. Throws SolverError past maxit.
CgResult cg_solve(const CsrMatrix& A, std::span<const double> b, std::span<double> x, double tol,
                  int maxit);

// Stokes saddle-point system after symmetric Dirichlet elimination:
//   A u_f - B^T p = rhs_u,   B u_f = rhs_p
// over the free velocity dofs. `free_to_full` scatters free dofs back to the
// full vector layout; `dirichlet_values` is full-sized and zero on free dofs.
// `pinned_pressure_dof` removes the constant-pressure mode when the case has
// no outflow (-1 otherwise).
struct SaddleSystem {
    CsrMatrix A;
    CsrMatrix B;
    std::vector<double> rhs_u;
    std::vector<double> rhs_p;
    std::vector<int> free_to_full;
    std::vector<double> dirichlet_values;
    int full_size = 0;
    int pinned_pressure_dof = -1;
};

struct SaddleResult {
    double relative_residual = 0.0;
    double momentum_residual = 0.0;
    double divergence_residual = 0.0;
};

// Direct sparse factorization of the full indefinite block system. Residuals
// are recomputed from the CSR blocks after the solve; SolverError if the
// joint relative residual exceeds tol.
SaddleResult saddle_solve(const SaddleSystem& sys, std::vector<double>& u_free,
                          std::vector<double>& p, double tol);

}  // namespace stokesopt

#endif
