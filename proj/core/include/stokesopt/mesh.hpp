#ifndef STOKESOPT_MESH_HPP
#define STOKESOPT_MESH_HPP

#include <array>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stokesopt {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

enum class BoundaryTag { Inflow, Wall, Outflow };

const char* to_string(BoundaryTag tag);

struct MeshError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Undirected edge with a < b.
struct Edge {
    int a = -1;
    int b = -1;
};

// Conforming triangle mesh. Immutable once built; all derived quantities
// (edges, areas, affine maps, boundary classification) are cached at
// construction time.
//
// The affine map of element t sends the reference triangle with vertices
// (0,0), (1,0), (0,1) onto the physical triangle: x = v0 + J * xhat.
// det(J) equals twice the element area.
class TriMesh {
public:
    static TriMesh from_raw(std::vector<Vec2> vertices,
                            std::vector<std::array<int, 3>> triangles);

    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int triangle_count() const { return static_cast<int>(triangles_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    const std::vector<Vec2>& vertices() const { return vertices_; }
    const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
    const std::vector<Edge>& edges() const { return edges_; }

    // Edge ids of element t for its local edges (0,1), (1,2), (2,0).
    const std::array<int, 3>& triangle_edges(int t) const { return triangle_edges_[t]; }

    const std::vector<int>& boundary_edge_ids() const { return boundary_edge_ids_; }
    bool is_boundary_edge(int edge_id) const { return edge_triangle_count_[edge_id] == 1; }

    bool is_tagged() const { return tagged_; }
    BoundaryTag boundary_tag(int edge_id) const;
    bool has_tag(BoundaryTag tag) const;

    double element_area(int t) const { return areas_[t]; }
    double total_area() const { return total_area_; }

    // Row-major 2x2 Jacobian [j00 j01; j10 j11] of the reference map.
    const std::array<double, 4>& jacobian(int t) const { return jacobians_[t]; }
    // Row-major J^{-T}, used to push reference gradients to physical space.
    const std::array<double, 4>& inverse_jacobian_t(int t) const { return inv_jacobians_t_[t]; }

    Vec2 map_to_physical(int t, double xhat, double yhat) const;
    Vec2 edge_midpoint(int edge_id) const;

private:
    friend TriMesh tag_boundaries(TriMesh mesh,
                                  const std::vector<struct BoundaryRule>& rules);

    std::vector<Vec2> vertices_;
    std::vector<std::array<int, 3>> triangles_;
    std::vector<Edge> edges_;
    std::vector<std::array<int, 3>> triangle_edges_;
    std::vector<int> edge_triangle_count_;
    std::vector<int> boundary_edge_ids_;
    std::vector<BoundaryTag> edge_tags_;  // indexed by edge id, valid on boundary
    bool tagged_ = false;

    std::vector<double> areas_;
    std::vector<std::array<double, 4>> jacobians_;
    std::vector<std::array<double, 4>> inv_jacobians_t_;
    double total_area_ = 0.0;
};

// Structured mesh of an axis-aligned rectangle [0,width] x [0,height] with
// nx*ny cells, each split along the bottom-left/top-right diagonal into two
// right triangles. Triangles are emitted with the right-angle vertex first,
// so each affine map has orthogonal columns (no metric cross term).
TriMesh build_rect_mesh(int nx, int ny, double width, double height);

// Boundary classification rule; `where` is evaluated at edge midpoints and
// the first matching rule wins.
struct BoundaryRule {
    std::function<bool(double x, double y)> where;
    BoundaryTag tag = BoundaryTag::Wall;
};

// Tags every boundary edge. Throws MeshError (naming the offending edge
// midpoint) if some boundary edge matches no rule.
TriMesh tag_boundaries(TriMesh mesh, const std::vector<BoundaryRule>& rules);

}  // namespace stokesopt

#endif
