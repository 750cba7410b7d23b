#include "dense_oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "stokesopt/fem.hpp"
#include "stokesopt/quadrature.hpp"

namespace oracle {

using stokesopt::TriMesh;
using stokesopt::Vec2;

namespace {

const stokesopt::QuadratureRule& high_rule() {
    static const auto rule = stokesopt::QuadratureRule::triangle(10);
    return rule;
}

// Monomial bases in physical coordinates.
void p1_monomials(double x, double y, double out[3]) {
    out[0] = 1.0;
    out[1] = x;
    out[2] = y;
}

void p1_monomial_grads(double out[3][2]) {
    out[0][0] = 0.0;
    out[0][1] = 0.0;
    out[1][0] = 1.0;
    out[1][1] = 0.0;
    out[2][0] = 0.0;
    out[2][1] = 1.0;
}

void p2_monomials(double x, double y, double out[6]) {
    out[0] = 1.0;
    out[1] = x;
    out[2] = y;
    out[3] = x * x;
    out[4] = x * y;
    out[5] = y * y;
}

void p2_monomial_grads(double x, double y, double out[6][2]) {
    const double g[6][2] = {{0, 0}, {1, 0}, {0, 1}, {2 * x, 0}, {y, x}, {0, 2 * y}};
    for (int i = 0; i < 6; ++i) {
        out[i][0] = g[i][0];
        out[i][1] = g[i][1];
    }
}

std::vector<double> dense_solve_impl(DenseMatrix A, std::vector<double> b) {
    const int n = A.rows;
    if (A.cols != n || static_cast<int>(b.size()) != n)
        throw std::invalid_argument("oracle::solve: dimension mismatch");
    for (int k = 0; k < n; ++k) {
        int pivot = k;
        for (int r = k + 1; r < n; ++r)
            if (std::abs(A.at(r, k)) > std::abs(A.at(pivot, k))) pivot = r;
        if (A.at(pivot, k) == 0.0) throw std::runtime_error("oracle::solve: singular matrix");
        if (pivot != k) {
            for (int c = 0; c < n; ++c) std::swap(A.at(k, c), A.at(pivot, c));
            std::swap(b[k], b[pivot]);
        }
        for (int r = k + 1; r < n; ++r) {
            const double f = A.at(r, k) / A.at(k, k);
            if (f == 0.0) continue;
            for (int c = k; c < n; ++c) A.at(r, c) -= f * A.at(k, c);
            b[r] -= f * b[k];
        }
    }
    std::vector<double> x(static_cast<size_t>(n), 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < n; ++c) s -= A.at(r, c) * x[c];
        x[r] = s / A.at(r, r);
    }
    return x;
}

// Coefficients of the nodal basis on one element: column i holds the
// monomial coefficients of the shape function that is 1 at node i.
template <int N>
void nodal_basis(const Vec2 (&nodes)[N], void (*monomials)(double, double, double[N]),
                 double coeff[N][N]) {
    DenseMatrix V(N, N);
    for (int r = 0; r < N; ++r) {
        double m[N];
        monomials(nodes[r].x, nodes[r].y, m);
        for (int c = 0; c < N; ++c) V.at(r, c) = m[c];
    }
    for (int i = 0; i < N; ++i) {
        std::vector<double> e(N, 0.0);
        e[static_cast<size_t>(i)] = 1.0;
        const std::vector<double> c = dense_solve_impl(V, e);
        for (int r = 0; r < N; ++r) coeff[i][r] = c[static_cast<size_t>(r)];
    }
}

void element_p1_nodes(const TriMesh& mesh, int elem, Vec2 (&nodes)[3], int (&ids)[3]) {
    const auto& tri = mesh.triangles()[elem];
    for (int k = 0; k < 3; ++k) {
        ids[k] = tri[k];
        nodes[k] = mesh.vertices()[tri[k]];
    }
}

void element_p2_nodes(const TriMesh& mesh, int elem, Vec2 (&nodes)[6], int (&ids)[6]) {
    const auto dofs = stokesopt::p2_element_dofs(mesh, elem);
    const auto& tri = mesh.triangles()[elem];
    for (int k = 0; k < 3; ++k) {
        ids[k] = dofs[k];
        nodes[k] = mesh.vertices()[tri[k]];
    }
    const auto& edges = mesh.triangle_edges(elem);
    for (int k = 0; k < 3; ++k) {
        ids[3 + k] = dofs[3 + k];
        nodes[3 + k] = mesh.edge_midpoint(edges[k]);
    }
}

}  // namespace

double eval_p1(const TriMesh& mesh, int elem, const std::vector<double>& nodal, double x,
               double y) {
    Vec2 nodes[3];
    int ids[3];
    element_p1_nodes(mesh, elem, nodes, ids);
    double coeff[3][3];
    nodal_basis<3>(nodes, p1_monomials, coeff);
    double m[3];
    p1_monomials(x, y, m);
    double v = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int r = 0; r < 3; ++r) v += nodal[ids[i]] * coeff[i][r] * m[r];
    return v;
}

double eval_p2_component(const TriMesh& mesh, int elem, const std::vector<double>& component,
                         double x, double y) {
    Vec2 nodes[6];
    int ids[6];
    element_p2_nodes(mesh, elem, nodes, ids);
    double coeff[6][6];
    nodal_basis<6>(nodes, p2_monomials, coeff);
    double m[6];
    p2_monomials(x, y, m);
    double v = 0.0;
    for (int i = 0; i < 6; ++i)
        for (int r = 0; r < 6; ++r) v += component[ids[i]] * coeff[i][r] * m[r];
    return v;
}

DenseMatrix p1_mass(const TriMesh& mesh, const WeightFn& weight) {
    const auto& rule = high_rule();
    const int n = mesh.vertex_count();
    DenseMatrix M(n, n);
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        Vec2 nodes[3];
        int ids[3];
        element_p1_nodes(mesh, t, nodes, ids);
        double coeff[3][3];
        nodal_basis<3>(nodes, p1_monomials, coeff);
        const double detJ = 2.0 * mesh.element_area(t);
        for (int q = 0; q < rule.size(); ++q) {
            const Vec2 p = mesh.map_to_physical(t, rule.points[q].x, rule.points[q].y);
            const double w = rule.weights[q] * detJ * (weight ? weight(t, p.x, p.y) : 1.0);
            double m[3];
            p1_monomials(p.x, p.y, m);
            double shape[3];
            for (int i = 0; i < 3; ++i) {
                shape[i] = 0.0;
                for (int r = 0; r < 3; ++r) shape[i] += coeff[i][r] * m[r];
            }
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) M.at(ids[i], ids[j]) += w * shape[i] * shape[j];
        }
    }
    return M;
}

DenseMatrix p1_stiffness(const TriMesh& mesh) {
    const auto& rule = high_rule();
    const int n = mesh.vertex_count();
    DenseMatrix K(n, n);
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        Vec2 nodes[3];
        int ids[3];
        element_p1_nodes(mesh, t, nodes, ids);
        double coeff[3][3];
        nodal_basis<3>(nodes, p1_monomials, coeff);
        double mg[3][2];
        p1_monomial_grads(mg);
        const double detJ = 2.0 * mesh.element_area(t);
        for (int q = 0; q < rule.size(); ++q) {
            const double w = rule.weights[q] * detJ;
            double grad[3][2];
            for (int i = 0; i < 3; ++i) {
                grad[i][0] = grad[i][1] = 0.0;
                for (int r = 0; r < 3; ++r) {
                    grad[i][0] += coeff[i][r] * mg[r][0];
                    grad[i][1] += coeff[i][r] * mg[r][1];
                }
            }
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    K.at(ids[i], ids[j]) += w * (grad[i][0] * grad[j][0] + grad[i][1] * grad[j][1]);
        }
    }
    return K;
}

DenseMatrix p2_vector_stiffness(const TriMesh& mesh) {
    const auto& rule = high_rule();
    const int n = mesh.vertex_count() + mesh.edge_count();
    DenseMatrix A(2 * n, 2 * n);
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        Vec2 nodes[6];
        int ids[6];
        element_p2_nodes(mesh, t, nodes, ids);
        double coeff[6][6];
        nodal_basis<6>(nodes, p2_monomials, coeff);
        const double detJ = 2.0 * mesh.element_area(t);
        for (int q = 0; q < rule.size(); ++q) {
            const Vec2 p = mesh.map_to_physical(t, rule.points[q].x, rule.points[q].y);
            const double w = rule.weights[q] * detJ;
            double mg[6][2];
            p2_monomial_grads(p.x, p.y, mg);
            double grad[6][2];
            for (int i = 0; i < 6; ++i) {
                grad[i][0] = grad[i][1] = 0.0;
                for (int r = 0; r < 6; ++r) {
                    grad[i][0] += coeff[i][r] * mg[r][0];
                    grad[i][1] += coeff[i][r] * mg[r][1];
                }
            }
            for (int i = 0; i < 6; ++i) {
                for (int j = 0; j < 6; ++j) {
                    const double v = w * (grad[i][0] * grad[j][0] + grad[i][1] * grad[j][1]);
                    A.at(ids[i], ids[j]) += v;
                    A.at(n + ids[i], n + ids[j]) += v;
                }
            }
        }
    }
    return A;
}

DenseMatrix p2_vector_mass(const TriMesh& mesh, const WeightFn& weight) {
    const auto& rule = high_rule();
    const int n = mesh.vertex_count() + mesh.edge_count();
    DenseMatrix M(2 * n, 2 * n);
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        Vec2 nodes[6];
        int ids[6];
        element_p2_nodes(mesh, t, nodes, ids);
        double coeff[6][6];
        nodal_basis<6>(nodes, p2_monomials, coeff);
        const double detJ = 2.0 * mesh.element_area(t);
        for (int q = 0; q < rule.size(); ++q) {
            const Vec2 p = mesh.map_to_physical(t, rule.points[q].x, rule.points[q].y);
            const double w = rule.weights[q] * detJ * (weight ? weight(t, p.x, p.y) : 1.0);
            double m[6];
            p2_monomials(p.x, p.y, m);
            double shape[6];
            for (int i = 0; i < 6; ++i) {
                shape[i] = 0.0;
                for (int r = 0; r < 6; ++r) shape[i] += coeff[i][r] * m[r];
            }
            for (int i = 0; i < 6; ++i) {
                for (int j = 0; j < 6; ++j) {
                    const double v = w * shape[i] * shape[j];
                    M.at(ids[i], ids[j]) += v;
                    M.at(n + ids[i], n + ids[j]) += v;
                }
            }
        }
    }
    return M;
}

DenseMatrix divergence(const TriMesh& mesh) {
    const auto& rule = high_rule();
    const int n2 = mesh.vertex_count() + mesh.edge_count();
    DenseMatrix B(mesh.vertex_count(), 2 * n2);
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        Vec2 p1n[3];
        int p1ids[3];
        element_p1_nodes(mesh, t, p1n, p1ids);
        double c1[3][3];
        nodal_basis<3>(p1n, p1_monomials, c1);
        Vec2 p2n[6];
        int p2ids[6];
        element_p2_nodes(mesh, t, p2n, p2ids);
        double c2[6][6];
        nodal_basis<6>(p2n, p2_monomials, c2);
        const double detJ = 2.0 * mesh.element_area(t);
        for (int q = 0; q < rule.size(); ++q) {
            const Vec2 p = mesh.map_to_physical(t, rule.points[q].x, rule.points[q].y);
            const double w = rule.weights[q] * detJ;
            double m1[3];
            p1_monomials(p.x, p.y, m1);
            double shape1[3];
            for (int i = 0; i < 3; ++i) {
                shape1[i] = 0.0;
                for (int r = 0; r < 3; ++r) shape1[i] += c1[i][r] * m1[r];
            }
            double mg[6][2];
            p2_monomial_grads(p.x, p.y, mg);
            for (int j = 0; j < 6; ++j) {
                double dx = 0.0, dy = 0.0;
                for (int r = 0; r < 6; ++r) {
                    dx += c2[j][r] * mg[r][0];
                    dy += c2[j][r] * mg[r][1];
                }
                for (int i = 0; i < 3; ++i) {
                    B.at(p1ids[i], p2ids[j]) += w * shape1[i] * dx;
                    B.at(p1ids[i], n2 + p2ids[j]) += w * shape1[i] * dy;
                }
            }
        }
    }
    return B;
}

double integrate(const TriMesh& mesh, const WeightFn& fn) {
    const auto& rule = high_rule();
    double total = 0.0;
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const double detJ = 2.0 * mesh.element_area(t);
        for (int q = 0; q < rule.size(); ++q) {
            const Vec2 p = mesh.map_to_physical(t, rule.points[q].x, rule.points[q].y);
            total += rule.weights[q] * detJ * fn(t, p.x, p.y);
        }
    }
    return total;
}

std::vector<double> solve(DenseMatrix A, std::vector<double> b) {
    return dense_solve_impl(std::move(A), std::move(b));
}

}  // namespace oracle
