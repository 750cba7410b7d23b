#include "stokesopt/fem.hpp"

#include <cmath>
#include <stdexcept>

namespace stokesopt {

namespace {

// Higher value wins when a vertex lies on differently tagged edges.
int tag_priority(BoundaryTag t) {
    switch (t) {
        case BoundaryTag::Inflow: return 2;
        case BoundaryTag::Wall: return 1;
        case BoundaryTag::Outflow: return 0;
    }
    return -1;
}

}  // namespace

DofMapP1 DofMapP1::build(const TriMesh& mesh) {
    DofMapP1 map;
    map.count = mesh.vertex_count();
    if (!mesh.is_tagged()) return map;
    std::vector<int> best(static_cast<size_t>(map.count), -1);  // -1: interior
    for (int e : mesh.boundary_edge_ids()) {
        const BoundaryTag tag = mesh.boundary_tag(e);
        for (int v : {mesh.edges()[e].a, mesh.edges()[e].b}) {
            const int p = tag_priority(tag);
            if (best[v] < p) best[v] = p;
        }
    }
    for (int v = 0; v < map.count; ++v) {
        if (best[v] < 0) continue;
        for (int t = 0; t < 3; ++t)
            if (tag_priority(static_cast<BoundaryTag>(t)) == best[v])
                map.boundary_by_tag[t].push_back(v);
    }
    return map;
}

DofMapP2 DofMapP2::build(const TriMesh& mesh) {
    DofMapP2 map;
    const int nv = mesh.vertex_count();
    map.count = nv + mesh.edge_count();
    map.coords.resize(static_cast<size_t>(map.count));
    for (int v = 0; v < nv; ++v) map.coords[v] = mesh.vertices()[v];
    for (int e = 0; e < mesh.edge_count(); ++e)
        map.coords[static_cast<size_t>(nv) + e] = mesh.edge_midpoint(e);

    map.touches.assign(static_cast<size_t>(map.count), 0);
    if (!mesh.is_tagged()) return map;
    std::vector<int> best(static_cast<size_t>(map.count), -1);
    for (int e : mesh.boundary_edge_ids()) {
        const BoundaryTag tag = mesh.boundary_tag(e);
        const int dofs[3] = {mesh.edges()[e].a, mesh.edges()[e].b, nv + e};
        for (int d : dofs) {
            map.touches[d] |= static_cast<std::uint8_t>(1u << static_cast<int>(tag));
            if (best[d] < tag_priority(tag)) best[d] = tag_priority(tag);
        }
    }
    for (int d = 0; d < map.count; ++d) {
        if (best[d] < 0) continue;
        for (int t = 0; t < 3; ++t)
            if (tag_priority(static_cast<BoundaryTag>(t)) == best[d])
                map.boundary_by_tag[t].push_back(d);
    }
    return map;
}

void p1_shape(double x, double y, double out[3]) {
    out[0] = 1.0 - x - y;
    out[1] = x;
    out[2] = y;
}

void p2_shape(double x, double y, double out[6]) {
    const double l0 = 1.0 - x - y, l1 = x, l2 = y;
    out[0] = l0 * (2.0 * l0 - 1.0);
    out[1] = l1 * (2.0 * l1 - 1.0);
    out[2] = l2 * (2.0 * l2 - 1.0);
    out[3] = 4.0 * l0 * l1;
    out[4] = 4.0 * l1 * l2;
    out[5] = 4.0 * l2 * l0;
}

void p2_shape_grad(double x, double y, double out[6][2]) {
    const double l0 = 1.0 - x - y, l1 = x, l2 = y;
    // dl0 = (-1,-1), dl1 = (1,0), dl2 = (0,1)
    out[0][0] = -(4.0 * l0 - 1.0);
    out[0][1] = -(4.0 * l0 - 1.0);
    out[1][0] = 4.0 * l1 - 1.0;
    out[1][1] = 0.0;
    out[2][0] = 0.0;
    out[2][1] = 4.0 * l2 - 1.0;
    out[3][0] = 4.0 * (l0 - l1);
    out[3][1] = -4.0 * l1;
    out[4][0] = 4.0 * l2;
    out[4][1] = 4.0 * l1;
    out[5][0] = -4.0 * l2;
    out[5][1] = 4.0 * (l0 - l2);
}

std::array<int, 6> p2_element_dofs(const TriMesh& mesh, int t) {
    const auto& tri = mesh.triangles()[t];
    const auto& edges = mesh.triangle_edges(t);
    const int nv = mesh.vertex_count();
    return {tri[0], tri[1], tri[2], nv + edges[0], nv + edges[1], nv + edges[2]};
}

QuadPointField eval_speed_squared(const TriMesh& mesh, const QuadratureRule& rule,
                                  const DofMapP2& dofs, const VectorFieldP2& u) {
    if (u.dofs_per_component != dofs.count)
        throw std::invalid_argument("eval_speed_squared: field does not match mesh");
    const int nq = rule.size();
    std::vector<std::array<double, 6>> shapes(static_cast<size_t>(nq));
    for (int q = 0; q < nq; ++q) p2_shape(rule.points[q].x, rule.points[q].y, shapes[q].data());

    QuadPointField out;
    out.points_per_element = nq;
    out.values.resize(static_cast<size_t>(mesh.triangle_count()) * nq);
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const auto dof = p2_element_dofs(mesh, t);
        for (int q = 0; q < nq; ++q) {
            double ux = 0.0, uy = 0.0;
            for (int i = 0; i < 6; ++i) {
                ux += shapes[q][i] * u.x(dof[i]);
                uy += shapes[q][i] * u.y(dof[i]);
            }
            out.values[static_cast<size_t>(t) * nq + q] = ux * ux + uy * uy;
        }
    }
    return out;
}

QuadPointField eval_brinkman_weight(const TriMesh& mesh, const QuadratureRule& rule,
                                    const ScalarFieldP1& phi, double alpha0) {
    if (phi.size() != mesh.vertex_count())
        throw std::invalid_argument("eval_brinkman_weight: field does not match mesh");
    const int nq = rule.size();
    QuadPointField out;
    out.points_per_element = nq;
    out.values.resize(static_cast<size_t>(mesh.triangle_count()) * nq);
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const auto& tri = mesh.triangles()[t];
        for (int q = 0; q < nq; ++q) {
            double s[3];
            p1_shape(rule.points[q].x, rule.points[q].y, s);
            // Interpolating 1-phi keeps the weight exactly zero in pure fluid.
            const double omp = s[0] * (1.0 - phi[tri[0]]) + s[1] * (1.0 - phi[tri[1]]) +
                               s[2] * (1.0 - phi[tri[2]]);
            out.values[static_cast<size_t>(t) * nq + q] = alpha0 * omp * omp;
        }
    }
    return out;
}

CsrMatrix assemble_p1_mass(const TriMesh& mesh, const QuadratureRule& rule) {
    const int nq = rule.size();
    std::vector<std::array<double, 3>> shapes(static_cast<size_t>(nq));
    for (int q = 0; q < nq; ++q) p1_shape(rule.points[q].x, rule.points[q].y, shapes[q].data());

    std::vector<Triplet> trip;
    trip.reserve(static_cast<size_t>(mesh.triangle_count()) * 9);
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const double detJ = 2.0 * mesh.element_area(t);
        const auto& tri = mesh.triangles()[t];
        double local[3][3] = {};
        for (int q = 0; q < nq; ++q) {
            const double wq = rule.weights[q] * detJ;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) local[i][j] += wq * shapes[q][i] * shapes[q][j];
        }
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) trip.push_back({tri[i], tri[j], local[i][j]});
    }
    return CsrMatrix::from_triplets(mesh.vertex_count(), mesh.vertex_count(), std::move(trip));
}

CsrMatrix assemble_p1_stiffness(const TriMesh& mesh, const QuadratureRule&) {
    // P1 gradients are constant per element; no quadrature loop needed.
    std::vector<Triplet> trip;
    trip.reserve(static_cast<size_t>(mesh.triangle_count()) * 9);
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const auto& jit = mesh.inverse_jacobian_t(t);
        const auto& tri = mesh.triangles()[t];
        double grads[3][2];
        for (int i = 0; i < 3; ++i) {
            grads[i][0] = jit[0] * kP1RefGrad[i][0] + jit[1] * kP1RefGrad[i][1];
            grads[i][1] = jit[2] * kP1RefGrad[i][0] + jit[3] * kP1RefGrad[i][1];
        }
        const double area = mesh.element_area(t);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                trip.push_back(
                    {tri[i], tri[j], area * (grads[i][0] * grads[j][0] + grads[i][1] * grads[j][1])});
    }
    return CsrMatrix::from_triplets(mesh.vertex_count(), mesh.vertex_count(), std::move(trip));
}

CsrMatrix assemble_weighted_p1_mass(const TriMesh& mesh, const QuadratureRule& rule,
                                    const QuadPointField& w) {
    const int nq = rule.size();
    if (w.points_per_element != nq ||
        static_cast<int>(w.values.size()) != mesh.triangle_count() * nq)
        throw std::invalid_argument("assemble_weighted_p1_mass: weight field size mismatch");
    std::vector<std::array<double, 3>> shapes(static_cast<size_t>(nq));
    for (int q = 0; q < nq; ++q) p1_shape(rule.points[q].x, rule.points[q].y, shapes[q].data());

    std::vector<Triplet> trip;
    trip.reserve(static_cast<size_t>(mesh.triangle_count()) * 9);
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const double detJ = 2.0 * mesh.element_area(t);
        const auto& tri = mesh.triangles()[t];
        double local[3][3] = {};
        for (int q = 0; q < nq; ++q) {
            const double wval = w(t, q);
            if (!(wval >= 0.0))
                throw std::invalid_argument(
                    "assemble_weighted_p1_mass: negative weight at a quadrature point");
            const double wq = rule.weights[q] * detJ * wval;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) local[i][j] += wq * shapes[q][i] * shapes[q][j];
        }
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) trip.push_back({tri[i], tri[j], local[i][j]});
    }
    return CsrMatrix::from_triplets(mesh.vertex_count(), mesh.vertex_count(), std::move(trip));
}

CsrMatrix assemble_p2_vector_stiffness(const TriMesh& mesh, const QuadratureRule& rule,
                                       const DofMapP2& dofs) {
    const int nq = rule.size();
    std::vector<std::array<std::array<double, 2>, 6>> grads(static_cast<size_t>(nq));
    for (int q = 0; q < nq; ++q) {
        double g[6][2];
        p2_shape_grad(rule.points[q].x, rule.points[q].y, g);
        for (int i = 0; i < 6; ++i) {
            grads[q][i][0] = g[i][0];
            grads[q][i][1] = g[i][1];
        }
    }

    const int n = dofs.count;
    std::vector<Triplet> trip;
    trip.reserve(static_cast<size_t>(mesh.triangle_count()) * 72);
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const double detJ = 2.0 * mesh.element_area(t);
        const auto& jit = mesh.inverse_jacobian_t(t);
        const auto dof = p2_element_dofs(mesh, t);
        double local[6][6] = {};
        for (int q = 0; q < nq; ++q) {
            const double wq = rule.weights[q] * detJ;
            double phys[6][2];
            for (int i = 0; i < 6; ++i) {
                phys[i][0] = jit[0] * grads[q][i][0] + jit[1] * grads[q][i][1];
                phys[i][1] = jit[2] * grads[q][i][0] + jit[3] * grads[q][i][1];
            }
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 6; ++j)
                    local[i][j] += wq * (phys[i][0] * phys[j][0] + phys[i][1] * phys[j][1]);
        }
        for (int i = 0; i < 6; ++i) {
            for (int j = 0; j < 6; ++j) {
                trip.push_back({dof[i], dof[j], local[i][j]});
                trip.push_back({n + dof[i], n + dof[j], local[i][j]});
            }
        }
    }
    return CsrMatrix::from_triplets(2 * n, 2 * n, std::move(trip));
}

CsrMatrix assemble_weighted_p2_vector_mass(const TriMesh& mesh, const QuadratureRule& rule,
                                           const DofMapP2& dofs, const QuadPointField& w) {
    const int nq = rule.size();
    if (w.points_per_element != nq ||
        static_cast<int>(w.values.size()) != mesh.triangle_count() * nq)
        throw std::invalid_argument("assemble_weighted_p2_vector_mass: weight field size mismatch");
    std::vector<std::array<double, 6>> shapes(static_cast<size_t>(nq));
    for (int q = 0; q < nq; ++q) p2_shape(rule.points[q].x, rule.points[q].y, shapes[q].data());

    const int n = dofs.count;
    std::vector<Triplet> trip;
    trip.reserve(static_cast<size_t>(mesh.triangle_count()) * 72);
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const double detJ = 2.0 * mesh.element_area(t);
        const auto dof = p2_element_dofs(mesh, t);
        double local[6][6] = {};
        for (int q = 0; q < nq; ++q) {
            const double wval = w(t, q);
            if (!(wval >= 0.0))
                throw std::invalid_argument(
                    "assemble_weighted_p2_vector_mass: negative weight at a quadrature point");
            const double wq = rule.weights[q] * detJ * wval;
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 6; ++j) local[i][j] += wq * shapes[q][i] * shapes[q][j];
        }
        for (int i = 0; i < 6; ++i) {
            for (int j = 0; j < 6; ++j) {
                trip.push_back({dof[i], dof[j], local[i][j]});
                trip.push_back({n + dof[i], n + dof[j], local[i][j]});
            }
        }
    }
    return CsrMatrix::from_triplets(2 * n, 2 * n, std::move(trip));
}

CsrMatrix assemble_divergence(const TriMesh& mesh, const QuadratureRule& rule,
                              const DofMapP2& dofs) {
    const int nq = rule.size();
    std::vector<std::array<double, 3>> p1s(static_cast<size_t>(nq));
    std::vector<std::array<std::array<double, 2>, 6>> grads(static_cast<size_t>(nq));
    for (int q = 0; q < nq; ++q) {
        p1_shape(rule.points[q].x, rule.points[q].y, p1s[q].data());
        double g[6][2];
        p2_shape_grad(rule.points[q].x, rule.points[q].y, g);
        for (int i = 0; i < 6; ++i) {
            grads[q][i][0] = g[i][0];
            grads[q][i][1] = g[i][1];
        }
    }

    const int n = dofs.count;
    std::vector<Triplet> trip;
    trip.reserve(static_cast<size_t>(mesh.triangle_count()) * 36);
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const double detJ = 2.0 * mesh.element_area(t);
        const auto& jit = mesh.inverse_jacobian_t(t);
        const auto& tri = mesh.triangles()[t];
        const auto dof = p2_element_dofs(mesh, t);
        double local_x[3][6] = {};
        double local_y[3][6] = {};
        for (int q = 0; q < nq; ++q) {
            const double wq = rule.weights[q] * detJ;
            for (int j = 0; j < 6; ++j) {
                const double dx = jit[0] * grads[q][j][0] + jit[1] * grads[q][j][1];
                const double dy = jit[2] * grads[q][j][0] + jit[3] * grads[q][j][1];
                for (int i = 0; i < 3; ++i) {
                    local_x[i][j] += wq * p1s[q][i] * dx;
                    local_y[i][j] += wq * p1s[q][i] * dy;
                }
            }
        }
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 6; ++j) {
                trip.push_back({tri[i], dof[j], local_x[i][j]});
                trip.push_back({tri[i], n + dof[j], local_y[i][j]});
            }
        }
    }
    return CsrMatrix::from_triplets(mesh.vertex_count(), 2 * n, std::move(trip));
}

std::vector<double> assemble_p1_load(const TriMesh& mesh, const QuadratureRule& rule,
                                     const QuadPointField& src) {
    const int nq = rule.size();
    if (src.points_per_element != nq ||
        static_cast<int>(src.values.size()) != mesh.triangle_count() * nq)
        throw std::invalid_argument("assemble_p1_load: source field size mismatch");
    std::vector<std::array<double, 3>> shapes(static_cast<size_t>(nq));
    for (int q = 0; q < nq; ++q) p1_shape(rule.points[q].x, rule.points[q].y, shapes[q].data());

    std::vector<double> b(static_cast<size_t>(mesh.vertex_count()), 0.0);
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const double detJ = 2.0 * mesh.element_area(t);
        const auto& tri = mesh.triangles()[t];
        for (int q = 0; q < nq; ++q) {
            const double wq = rule.weights[q] * detJ * src(t, q);
            for (int i = 0; i < 3; ++i) b[tri[i]] += wq * shapes[q][i];
        }
    }
    return b;
}

std::vector<double> p1_to_p2_interpolate(const TriMesh& mesh, const DofMapP2& dofs,
                                         const ScalarFieldP1& field) {
    if (field.size() != mesh.vertex_count())
        throw std::invalid_argument("p1_to_p2_interpolate: field does not match mesh");
    std::vector<double> out(static_cast<size_t>(dofs.count), 0.0);
    const int nv = mesh.vertex_count();
    for (int v = 0; v < nv; ++v) out[v] = field[v];
    for (int e = 0; e < mesh.edge_count(); ++e)
        out[static_cast<size_t>(nv) + e] = 0.5 * (field[mesh.edges()[e].a] + field[mesh.edges()[e].b]);
    return out;
}

ScalarFieldP1 p2_to_p1_project(const TriMesh& mesh, std::span<const double> p2_component) {
    if (static_cast<int>(p2_component.size()) < mesh.vertex_count())
        throw std::invalid_argument("p2_to_p1_project: component does not match mesh");
    ScalarFieldP1 out(mesh.vertex_count());
    for (int v = 0; v < mesh.vertex_count(); ++v) out[v] = p2_component[v];
    return out;
}

}  // namespace stokesopt
