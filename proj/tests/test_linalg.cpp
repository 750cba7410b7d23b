#include <doctest.h>

#include <cmath>
#include <random>

#include "dense_oracle.hpp"
#include "stokesopt/fem.hpp"
#include "stokesopt/solvers.hpp"

using namespace stokesopt;

namespace {

CsrMatrix identity(int n) {
    std::vector<Triplet> trip;
    for (int i = 0; i < n; ++i) trip.push_back({i, i, 1.0});
    return CsrMatrix::from_triplets(n, n, std::move(trip));
}

}  // namespace

TEST_CASE("csr construction sums duplicates and sorts columns") {
    const CsrMatrix m = CsrMatrix::from_triplets(
        2, 3, {{0, 2, 1.0}, {0, 0, 2.0}, {0, 2, 0.5}, {1, 1, -1.0}});
    CHECK(m.nonzeros() == 3);
    CHECK(m.value_at(0, 0) == 2.0);
    CHECK(m.value_at(0, 2) == 1.5);
    CHECK(m.value_at(0, 1) == 0.0);
    CHECK(m.value_at(1, 1) == -1.0);
    auto cols = m.col_indices();
    CHECK(cols[0] < cols[1]);
}

TEST_CASE("cg on the identity converges in one iteration") {
    const int n = 17;
    const CsrMatrix A = identity(n);
    std::vector<double> b(n), x(n, 0.0);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (double& v : b) v = uni(rng);
    const CgResult res = cg_solve(A, b, x, 1e-12, 10);
    CHECK(res.iterations == 1);
    for (int i = 0; i < n; ++i) CHECK(x[i] == doctest::Approx(b[i]).epsilon(1e-12));
}

TEST_CASE("cg recovers a known solution of a diagonal system") {
    const int n = 50;
    std::vector<Triplet> trip;
    for (int i = 0; i < n; ++i) trip.push_back({i, i, static_cast<double>(i + 1)});
    const CsrMatrix A = CsrMatrix::from_triplets(n, n, std::move(trip));
    std::vector<double> ones(n, 1.0);
    const std::vector<double> b = A.multiply(ones);
    std::vector<double> x(n, 0.0);
    cg_solve(A, b, x, 1e-12, 200);
    for (int i = 0; i < n; ++i) CHECK(x[i] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("cg solves an elliptic system to the requested residual") {
    const TriMesh mesh = build_rect_mesh(8, 8, 1.0, 1.0);
    const QuadratureRule rule = QuadratureRule::triangle(6);
    const CsrMatrix M = assemble_p1_mass(mesh, rule);
    const CsrMatrix K = assemble_p1_stiffness(mesh, rule);
    const CsrMatrix A = CsrMatrix::linear_combination({{1.0, &K}, {1.0, &M}});

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> b(A.rows());
    for (double& v : b) v = uni(rng);
    std::vector<double> x(A.rows(), 0.0);
    const CgResult res = cg_solve(A, b, x, 1e-10, 5000);

    // Verify the residual by direct multiplication.
    const std::vector<double> ax = A.multiply(x);
    double r2 = 0.0, b2 = 0.0;
    for (size_t i = 0; i < b.size(); ++i) {
        r2 += (b[i] - ax[i]) * (b[i] - ax[i]);
        b2 += b[i] * b[i];
    }
    CHECK(std::sqrt(r2 / b2) <= 1e-10);
    CHECK(res.relative_residual <= 1e-10);
}

TEST_CASE("cg reports the residual when the iteration budget runs out") {
    const TriMesh mesh = build_rect_mesh(8, 8, 1.0, 1.0);
    const QuadratureRule rule = QuadratureRule::triangle(2);
    const CsrMatrix K = assemble_p1_stiffness(mesh, rule);
    const CsrMatrix M = assemble_p1_mass(mesh, rule);
    const CsrMatrix A = CsrMatrix::linear_combination({{1.0, &K}, {1e-6, &M}});
    std::vector<double> b(A.rows(), 1.0), x(A.rows(), 0.0);
    try {
        cg_solve(A, b, x, 1e-14, 2);
        FAIL("expected SolverError");
    } catch (const SolverError& e) {
        CHECK(e.residual > 1e-14);
        CHECK(std::isfinite(e.residual));
    }
}

TEST_CASE("saddle solve agrees with a dense factorization") {
    const TriMesh mesh = build_rect_mesh(2, 2, 1.0, 1.0);
    const QuadratureRule rule = QuadratureRule::triangle(6);
    const CsrMatrix M = assemble_p1_mass(mesh, rule);
    const CsrMatrix K = assemble_p1_stiffness(mesh, rule);

    SaddleSystem sys;
    sys.A = CsrMatrix::linear_combination({{1.0, &K}, {1.0, &M}});
    // First rows of the mass matrix give a full-rank constraint block.
    {
        std::vector<Triplet> trip;
        auto ro = M.row_offsets();
        auto ci = M.col_indices();
        auto va = M.values();
        for (int r = 0; r < 4; ++r)
            for (int k = ro[r]; k < ro[r + 1]; ++k) trip.push_back({r, ci[k], va[k]});
        sys.B = CsrMatrix::from_triplets(4, M.cols(), std::move(trip));
    }
    const int nf = sys.A.rows();
    const int np = sys.B.rows();
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    sys.rhs_u.resize(nf);
    sys.rhs_p.resize(np);
    for (double& v : sys.rhs_u) v = uni(rng);
    for (double& v : sys.rhs_p) v = uni(rng);

    std::vector<double> u, p;
    const SaddleResult res = saddle_solve(sys, u, p, 1e-10);
    CHECK(res.relative_residual <= 1e-10);

    // Dense oracle of the full block matrix.
    oracle::DenseMatrix block(nf + np, nf + np);
    for (int r = 0; r < nf; ++r)
        for (int c = 0; c < nf; ++c) block.at(r, c) = sys.A.value_at(r, c);
    for (int r = 0; r < np; ++r)
        for (int c = 0; c < nf; ++c) {
            block.at(nf + r, c) = sys.B.value_at(r, c);
            block.at(c, nf + r) = -sys.B.value_at(r, c);
        }
    std::vector<double> rhs(sys.rhs_u);
    rhs.insert(rhs.end(), sys.rhs_p.begin(), sys.rhs_p.end());
    const std::vector<double> dense = oracle::solve(block, rhs);
    for (int i = 0; i < nf; ++i) CHECK(u[i] == doctest::Approx(dense[i]).epsilon(1e-8));
    for (int i = 0; i < np; ++i) CHECK(p[i] == doctest::Approx(dense[nf + i]).epsilon(1e-8));
}

TEST_CASE("saddle solve returns zeros for a zero right-hand side") {
    SaddleSystem sys;
    sys.A = identity(3);
    sys.B = CsrMatrix::from_triplets(1, 3, {{0, 0, 1.0}, {0, 1, 1.0}});
    sys.rhs_u.assign(3, 0.0);
    sys.rhs_p.assign(1, 0.0);
    std::vector<double> u, p;
    const SaddleResult res = saddle_solve(sys, u, p, 1e-12);
    CHECK(res.relative_residual == 0.0);
    for (double v : u) CHECK(v == 0.0);
    for (double v : p) CHECK(v == 0.0);
}
