#include "stokesopt/solvers.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>

namespace stokesopt {

CgResult cg_solve(const CsrMatrix& A, std::span<const double> b, std::span<double> x, double tol,
                  int maxit) {
    const int n = A.rows();
    if (A.cols() != n) throw std::invalid_argument("cg_solve: matrix not square");
    if (static_cast<int>(b.size()) != n || static_cast<int>(x.size()) != n)
        throw std::invalid_argument("cg_solve: size mismatch");

    const double bnorm = norm2(b);
    if (bnorm == 0.0) {
        std::fill(x.begin(), x.end(), 0.0);
        return {0, 0.0};
    }
    if (!std::isfinite(bnorm)) throw SolverError("cg_solve: right-hand side is not finite", bnorm);

    std::vector<double> inv_diag = A.diagonal();
    for (double& d : inv_diag) d = (d != 0.0) ? 1.0 / d : 1.0;

    std::vector<double> r(b.begin(), b.end());
    std::vector<double> ax(static_cast<size_t>(n));
    A.multiply(x, ax);
    for (int i = 0; i < n; ++i) r[i] -= ax[i];

    std::vector<double> z(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    std::vector<double> p = z;
    std::vector<double> ap(static_cast<size_t>(n));
    double rz = dot(r, z);

    int it = 0;
    while (it < maxit) {
        ++it;
        A.multiply(p, ap);
        const double pap = dot(p, ap);
        if (pap <= 0.0)
            throw SolverError("cg_solve: matrix is not positive definite", norm2(r) / bnorm);
        const double alpha = rz / pap;
        for (int i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        if (norm2(r) <= tol * bnorm) {
            // Confirm with the true residual before declaring convergence.
            A.multiply(x, ax);
            double true_res = 0.0;
            for (int i = 0; i < n; ++i) {
                r[i] = b[i] - ax[i];
                true_res += r[i] * r[i];
            }
            true_res = std::sqrt(true_res);
            if (true_res <= tol * bnorm) return {it, true_res / bnorm};
        }
        for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
        const double rz_new = dot(r, z);
        const double beta = rz_new / rz;
        rz = rz_new;
        for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    throw SolverError("cg_solve: no convergence within " + std::to_string(maxit) + " iterations",
                      norm2(r) / bnorm);
}

SaddleResult saddle_solve(const SaddleSystem& sys, std::vector<double>& u_free,
                          std::vector<double>& p, double tol) {
    const int nf = sys.A.rows();
    const int np = sys.B.rows();
    if (sys.A.cols() != nf || sys.B.cols() != nf)
        throw std::invalid_argument("saddle_solve: inconsistent block dimensions");

    u_free.assign(static_cast<size_t>(nf), 0.0);
    p.assign(static_cast<size_t>(np), 0.0);

    // Pressure dof renumbering when one dof is pinned to zero.
    std::vector<int> p_index(static_cast<size_t>(np));
    int np_kept = 0;
    for (int i = 0; i < np; ++i)
        p_index[i] = (i == sys.pinned_pressure_dof) ? -1 : np_kept++;

    double rhs_norm2 = 0.0;
    for (double v : sys.rhs_u) rhs_norm2 += v * v;
    for (int i = 0; i < np; ++i)
        if (p_index[i] >= 0) rhs_norm2 += sys.rhs_p[i] * sys.rhs_p[i];
    const double rhs_norm = std::sqrt(rhs_norm2);
    if (rhs_norm == 0.0) return {0.0, 0.0, 0.0};

    const int n = nf + np_kept;
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<size_t>(sys.A.nonzeros()) + 2 * sys.B.nonzeros());
    {
        auto ro = sys.A.row_offsets();
        auto ci = sys.A.col_indices();
        auto va = sys.A.values();
        for (int r = 0; r < nf; ++r)
            for (int k = ro[r]; k < ro[r + 1]; ++k) trip.emplace_back(r, ci[k], va[k]);
    }
    {
        auto ro = sys.B.row_offsets();
        auto ci = sys.B.col_indices();
        auto va = sys.B.values();
        for (int r = 0; r < np; ++r) {
            const int rp = p_index[r];
            if (rp < 0) continue;
            for (int k = ro[r]; k < ro[r + 1]; ++k) {
                trip.emplace_back(nf + rp, ci[k], va[k]);       // B u = rhs_p
                trip.emplace_back(ci[k], nf + rp, -va[k]);      // -B^T p in the momentum rows
            }
        }
    }

    Eigen::SparseMatrix<double> mat(n, n);
    mat.setFromTriplets(trip.begin(), trip.end());
    mat.makeCompressed();

    Eigen::VectorXd rhs(n);
    for (int i = 0; i < nf; ++i) rhs[i] = sys.rhs_u[i];
    for (int i = 0; i < np; ++i)
        if (p_index[i] >= 0) rhs[nf + p_index[i]] = sys.rhs_p[i];

    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(mat);
    if (lu.info() != Eigen::Success)
        throw SolverError("saddle_solve: sparse factorization failed", 1.0);
    const Eigen::VectorXd sol = lu.solve(rhs);
    if (lu.info() != Eigen::Success)
        throw SolverError("saddle_solve: back substitution failed", 1.0);

    for (int i = 0; i < nf; ++i) u_free[i] = sol[i];
    for (int i = 0; i < np; ++i) p[i] = (p_index[i] >= 0) ? sol[nf + p_index[i]] : 0.0;

    // Residuals recomputed from the CSR blocks, independent of the
    // factorization path.
    std::vector<double> bt_p = sys.B.multiply_transpose(p);
    std::vector<double> au = sys.A.multiply(u_free);
    double mom2 = 0.0;
    for (int i = 0; i < nf; ++i) {
        const double r = sys.rhs_u[i] - (au[i] - bt_p[i]);
        mom2 += r * r;
    }
    std::vector<double> bu = sys.B.multiply(u_free);
    double div2 = 0.0;
    for (int i = 0; i < np; ++i) {
        if (p_index[i] < 0) continue;
        const double r = sys.rhs_p[i] - bu[i];
        div2 += r * r;
    }

    SaddleResult res;
    res.momentum_residual = std::sqrt(mom2) / rhs_norm;
    res.divergence_residual = std::sqrt(div2) / rhs_norm;
    res.relative_residual = std::sqrt(mom2 + div2) / rhs_norm;
    if (!(res.relative_residual <= tol))
        throw SolverError("saddle_solve: residual " + std::to_string(res.relative_residual) +
                              " exceeds tolerance",
                          res.relative_residual);
    return res;
}

}  // namespace stokesopt
