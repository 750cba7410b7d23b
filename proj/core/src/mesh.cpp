#include "stokesopt/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <utility>

namespace stokesopt {

const char* to_string(BoundaryTag tag) {
    switch (tag) {
        case BoundaryTag::Inflow: return "inflow";
        case BoundaryTag::Wall: return "wall";
        case BoundaryTag::Outflow: return "outflow";
    }
    return "?";
}

BoundaryTag TriMesh::boundary_tag(int edge_id) const {
    if (!tagged_) throw MeshError("mesh boundary is not tagged");
    if (!is_boundary_edge(edge_id)) throw MeshError("edge is not on the boundary");
    return edge_tags_[edge_id];
}

bool TriMesh::has_tag(BoundaryTag tag) const {
    if (!tagged_) return false;
    for (int e : boundary_edge_ids_)
        if (edge_tags_[e] == tag) return true;
    return false;
}

Vec2 TriMesh::map_to_physical(int t, double xhat, double yhat) const {
    const auto& tri = triangles_[t];
    const Vec2 v0 = vertices_[tri[0]];
    const auto& J = jacobians_[t];
    return {v0.x + J[0] * xhat + J[1] * yhat, v0.y + J[2] * xhat + J[3] * yhat};
}

Vec2 TriMesh::edge_midpoint(int edge_id) const {
    const Edge& e = edges_[edge_id];
    const Vec2 a = vertices_[e.a];
    const Vec2 b = vertices_[e.b];
    return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
}

TriMesh TriMesh::from_raw(std::vector<Vec2> vertices,
                          std::vector<std::array<int, 3>> triangles) {
    TriMesh m;
    m.vertices_ = std::move(vertices);
    m.triangles_ = std::move(triangles);

    const int nv = m.vertex_count();
    const int nt = m.triangle_count();
    if (nv < 3 || nt < 1) throw MeshError("mesh needs at least one triangle");

    m.areas_.resize(nt);
    m.jacobians_.resize(nt);
    m.inv_jacobians_t_.resize(nt);
    m.triangle_edges_.resize(nt);
    m.total_area_ = 0.0;

    std::map<std::pair<int, int>, int> edge_ids;
    for (int t = 0; t < nt; ++t) {
        const auto& tri = m.triangles_[t];
        for (int k = 0; k < 3; ++k) {
            if (tri[k] < 0 || tri[k] >= nv) throw MeshError("triangle vertex index out of range");
        }
        const Vec2 p0 = m.vertices_[tri[0]];
        const Vec2 p1 = m.vertices_[tri[1]];
        const Vec2 p2 = m.vertices_[tri[2]];
        const double j00 = p1.x - p0.x, j10 = p1.y - p0.y;
        const double j01 = p2.x - p0.x, j11 = p2.y - p0.y;
        const double det = j00 * j11 - j01 * j10;
        if (!(det > 0.0))
            throw MeshError("triangle " + std::to_string(t) +
                            " has non-positive area (vertices must be counter-clockwise)");
        m.jacobians_[t] = {j00, j01, j10, j11};
        // J^{-T} = (1/det) [ j11 -j10; -j01 j00 ]
        m.inv_jacobians_t_[t] = {j11 / det, -j10 / det, -j01 / det, j00 / det};
        m.areas_[t] = 0.5 * det;
        m.total_area_ += m.areas_[t];

        for (int k = 0; k < 3; ++k) {
            int a = tri[k], b = tri[(k + 1) % 3];
            if (a > b) std::swap(a, b);
            auto [it, inserted] = edge_ids.try_emplace({a, b}, static_cast<int>(m.edges_.size()));
            if (inserted) {
                m.edges_.push_back({a, b});
                m.edge_triangle_count_.push_back(0);
            }
            m.triangle_edges_[t][k] = it->second;
            m.edge_triangle_count_[it->second] += 1;
        }
    }

    for (int e = 0; e < m.edge_count(); ++e) {
        const int count = m.edge_triangle_count_[e];
        if (count == 1) {
            m.boundary_edge_ids_.push_back(e);
        } else if (count != 2) {
            throw MeshError("mesh is not conforming: edge shared by " + std::to_string(count) +
                            " triangles");
        }
    }
    if (m.boundary_edge_ids_.empty()) throw MeshError("mesh has no boundary");
    m.edge_tags_.assign(m.edge_count(), BoundaryTag::Wall);
    return m;
}

TriMesh build_rect_mesh(int nx, int ny, double width, double height) {
    if (nx < 1 || ny < 1) throw std::invalid_argument("build_rect_mesh: cell counts must be >= 1");
    if (!(width > 0.0) || !(height > 0.0))
        throw std::invalid_argument("build_rect_mesh: dimensions must be positive");

    std::vector<Vec2> vertices;
    vertices.reserve(static_cast<size_t>(nx + 1) * (ny + 1));
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i)
            vertices.push_back({width * i / nx, height * j / ny});

    auto vid = [nx](int i, int j) { return j * (nx + 1) + i; };

    // Right-angle vertex first keeps the reference legs orthogonal, which the
    // cut-off gradient argument relies on.
    std::vector<std::array<int, 3>> triangles;
    triangles.reserve(static_cast<size_t>(2) * nx * ny);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int v00 = vid(i, j), v10 = vid(i + 1, j);
            const int v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
            triangles.push_back({v10, v11, v00});
            triangles.push_back({v01, v00, v11});
        }
    }
    return TriMesh::from_raw(std::move(vertices), std::move(triangles));
}

TriMesh tag_boundaries(TriMesh mesh, const std::vector<BoundaryRule>& rules) {
    for (int e : mesh.boundary_edge_ids_) {
        const Vec2 mid = mesh.edge_midpoint(e);
        bool matched = false;
        for (const auto& rule : rules) {
            if (rule.where(mid.x, mid.y)) {
                mesh.edge_tags_[e] = rule.tag;
                matched = true;
                break;
            }
        }
        if (!matched) {
            std::ostringstream os;
            os << "boundary edge with midpoint (" << mid.x << ", " << mid.y
               << ") matches no boundary rule";
            throw MeshError(os.str());
        }
    }
    mesh.tagged_ = true;
    return mesh;
}

}  // namespace stokesopt
