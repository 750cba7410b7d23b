#include "stokesopt/stokes.hpp"

#include <cmath>
#include <iostream>

namespace stokesopt {

StokesSolver::StokesSolver(const TriMesh& mesh, const QuadratureRule& rule, VelocityBc bc)
    : mesh_(mesh), rule_(rule), dofs_(DofMapP2::build(mesh)) {
    if (!mesh.is_tagged()) throw ConfigError("stokes solver needs a boundary-tagged mesh");
    if (bc.inflow && !mesh.has_tag(BoundaryTag::Inflow))
        throw ConfigError("inflow data given but the mesh has no inflow boundary");

    stiffness_ = assemble_p2_vector_stiffness(mesh, rule, dofs_);
    divergence_ = assemble_divergence(mesh, rule, dofs_);

    const int n = dofs_.count;
    dirichlet_values_.assign(static_cast<size_t>(2) * n, 0.0);
    is_dirichlet_.assign(static_cast<size_t>(2) * n, 0);

    // Walls first, then inflow values; a wall corner keeps its no-slip zero
    // and we warn when the profile disagrees there.
    for (int d = 0; d < n; ++d) {
        if (dofs_.touches_tag(d, BoundaryTag::Wall)) {
            is_dirichlet_[d] = 1;
            is_dirichlet_[static_cast<size_t>(n) + d] = 1;
        }
    }
    for (int d = 0; d < n; ++d) {
        if (!dofs_.touches_tag(d, BoundaryTag::Inflow)) continue;
        Vec2 g{0.0, 0.0};
        if (bc.inflow) g = bc.inflow(dofs_.coords[d].x, dofs_.coords[d].y);
        if (is_dirichlet_[d]) {  // shared with a wall
            if (std::abs(g.x) > 1e-12 || std::abs(g.y) > 1e-12) {
                if (!corner_conflict_) {
                    std::cerr << "warning: inflow profile is nonzero at a wall corner ("
                              << dofs_.coords[d].x << ", " << dofs_.coords[d].y
                              << "); keeping the no-slip value\n";
                }
                corner_conflict_ = true;
            }
            continue;
        }
        is_dirichlet_[d] = 1;
        is_dirichlet_[static_cast<size_t>(n) + d] = 1;
        dirichlet_values_[d] = g.x;
        dirichlet_values_[static_cast<size_t>(n) + d] = g.y;
    }

    full_to_free_.assign(static_cast<size_t>(2) * n, -1);
    for (int d = 0; d < 2 * n; ++d) {
        if (!is_dirichlet_[d]) {
            full_to_free_[d] = static_cast<int>(free_to_full_.size());
            free_to_full_.push_back(d);
        }
    }

    // The outflow's natural condition fixes the pressure level; without an
    // outflow the constant mode must be pinned.
    if (!mesh.has_tag(BoundaryTag::Outflow)) pinned_pressure_dof_ = 0;
}

StokesSolution StokesSolver::solve(const ScalarFieldP1& phi, double alpha0, double tol) const {
    if (phi.size() != mesh_.vertex_count())
        throw std::invalid_argument("stokes solve: phi does not match mesh");

    const QuadPointField alpha = eval_brinkman_weight(mesh_, rule_, phi, alpha0);
    const CsrMatrix mass_alpha = assemble_weighted_p2_vector_mass(mesh_, rule_, dofs_, alpha);
    const CsrMatrix a_full =
        CsrMatrix::linear_combination({{1.0, &stiffness_}, {1.0, &mass_alpha}});

    const int nf = static_cast<int>(free_to_full_.size());
    const int np = mesh_.vertex_count();

    SaddleSystem sys;
    sys.full_size = 2 * dofs_.count;
    sys.free_to_full = free_to_full_;
    sys.dirichlet_values = dirichlet_values_;
    sys.pinned_pressure_dof = pinned_pressure_dof_;
    sys.rhs_u.assign(static_cast<size_t>(nf), 0.0);
    sys.rhs_p.assign(static_cast<size_t>(np), 0.0);

    // Symmetric elimination with lifting of the Dirichlet data.
    {
        auto ro = a_full.row_offsets();
        auto ci = a_full.col_indices();
        auto va = a_full.values();
        std::vector<Triplet> trip;
        trip.reserve(static_cast<size_t>(a_full.nonzeros()));
        for (int r = 0; r < a_full.rows(); ++r) {
            const int rf = full_to_free_[r];
            if (rf < 0) continue;
            for (int k = ro[r]; k < ro[r + 1]; ++k) {
                const int c = ci[k];
                const int cf = full_to_free_[c];
                if (cf >= 0)
                    trip.push_back({rf, cf, va[k]});
                else
                    sys.rhs_u[rf] -= va[k] * dirichlet_values_[c];
            }
        }
        sys.A = CsrMatrix::from_triplets(nf, nf, std::move(trip));
    }
    {
        auto ro = divergence_.row_offsets();
        auto ci = divergence_.col_indices();
        auto va = divergence_.values();
        std::vector<Triplet> trip;
        trip.reserve(static_cast<size_t>(divergence_.nonzeros()));
        for (int r = 0; r < np; ++r) {
            for (int k = ro[r]; k < ro[r + 1]; ++k) {
                const int c = ci[k];
                const int cf = full_to_free_[c];
                if (cf >= 0)
                    trip.push_back({r, cf, va[k]});
                else
                    sys.rhs_p[r] -= va[k] * dirichlet_values_[c];
            }
        }
        sys.B = CsrMatrix::from_triplets(np, nf, std::move(trip));
    }

    std::vector<double> u_free, p_vals;
    const SaddleResult residuals = saddle_solve(sys, u_free, p_vals, tol);

    StokesSolution sol;
    sol.u = VectorFieldP2(dofs_.count);
    sol.u.values = dirichlet_values_;
    for (int i = 0; i < nf; ++i) sol.u.values[free_to_full_[i]] = u_free[i];
    sol.p = ScalarPressureP1(np);
    sol.p.values = p_vals;
    sol.residuals = residuals;
    return sol;
}

StokesSolution solve_state(const TriMesh& mesh, const QuadratureRule& rule,
                           const ScalarFieldP1& phi, const VelocityBc& bc, double alpha0,
                           double tol) {
    return StokesSolver(mesh, rule, bc).solve(phi, alpha0, tol);
}

double dissipation_energy(const CsrMatrix& p2_stiffness, const VectorFieldP2& u) {
    return 0.5 * p2_stiffness.quadratic_form(u.values);
}

double penalization_energy(const TriMesh& mesh, const QuadratureRule& rule,
                           const QuadPointField& speed_squared, const ScalarFieldP1& phi,
                           double alpha0) {
    const int nq = rule.size();
    double total = 0.0;
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const double detJ = 2.0 * mesh.element_area(t);
        const auto& tri = mesh.triangles()[t];
        double elem = 0.0;
        for (int q = 0; q < nq; ++q) {
            double s[3];
            p1_shape(rule.points[q].x, rule.points[q].y, s);
            const double omp = s[0] * (1.0 - phi[tri[0]]) + s[1] * (1.0 - phi[tri[1]]) +
                               s[2] * (1.0 - phi[tri[2]]);
            elem += rule.weights[q] * omp * omp * speed_squared(t, q);
        }
        total += detJ * elem;
    }
    return 0.5 * alpha0 * total;
}

}  // namespace stokesopt
