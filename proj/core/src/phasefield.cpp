#include "stokesopt/phasefield.hpp"

#include <algorithm>
#include <cmath>

namespace stokesopt {

double double_well(double v) {
    if (v < 0.0) return 0.25 * v * v;
    if (v > 1.0) return 0.25 * (v - 1.0) * (v - 1.0);
    return 0.25 * v * v * (v - 1.0) * (v - 1.0);
}

double double_well_derivative(double v) {
    if (v < 0.0) return 0.5 * v;
    if (v > 1.0) return 0.5 * (v - 1.0);
    return v * (v - 1.0) * (v - 0.5);
}

PhaseParams PhaseParams::make(double eps, double eta, double dt, double stab, double alpha0,
                              bool allow_unstable) {
    if (!(eps > 0.0) || !(eta > 0.0) || !(dt > 0.0) || !(alpha0 >= 0.0) || !(stab >= 0.0))
        throw std::invalid_argument("phase parameters must be positive");
    PhaseParams p{eps, eta, dt, stab, alpha0};
    if (!allow_unstable && stab < p.min_stab() * (1.0 - 1e-12))
        throw std::invalid_argument("stabilizer " + std::to_string(stab) +
                                    " is below the energy-stability threshold eta/(4 eps) = " +
                                    std::to_string(p.min_stab()));
    return p;
}

AllenCahnOperator::AllenCahnOperator(const TriMesh& mesh, const QuadratureRule& rule,
                                     const CsrMatrix& mass, const CsrMatrix& stiffness,
                                     QuadPointField speed_squared, PhaseParams params)
    : mesh_(mesh),
      rule_(rule),
      mass_(mass),
      speed_squared_(std::move(speed_squared)),
      params_(params) {
    weighted_mass_ = assemble_weighted_p1_mass(mesh, rule, speed_squared_);
    system_ = CsrMatrix::linear_combination({{1.0 / params_.dt + params_.stab, &mass},
                                             {params_.eps * params_.eta, &stiffness},
                                             {0.5 * params_.alpha0, &weighted_mass_}});
}

ScalarFieldP1 AllenCahnOperator::step(const ScalarFieldP1& phi_k, double lambda, double tol,
                                      int maxit, CgResult* report) const {
    const int n = mesh_.vertex_count();
    if (phi_k.size() != n) throw std::invalid_argument("allen-cahn step: phi does not match mesh");

    // Explicit source: -(eta/eps) f(phi_k) + alpha0 |u|^2 - lambda at the
    // quadrature points, with f taken from the P1 interpolant of phi_k.
    const int nq = rule_.size();
    QuadPointField src;
    src.points_per_element = nq;
    src.values.resize(static_cast<size_t>(mesh_.triangle_count()) * nq);
    const double eta_over_eps = params_.eta / params_.eps;
    for (int t = 0; t < mesh_.triangle_count(); ++t) {
        const auto& tri = mesh_.triangles()[t];
        for (int q = 0; q < nq; ++q) {
            double s[3];
            p1_shape(rule_.points[q].x, rule_.points[q].y, s);
            const double ph = s[0] * phi_k[tri[0]] + s[1] * phi_k[tri[1]] + s[2] * phi_k[tri[2]];
            src.values[static_cast<size_t>(t) * nq + q] =
                -eta_over_eps * double_well_derivative(ph) +
                params_.alpha0 * speed_squared_(t, q) - lambda;
        }
    }
    std::vector<double> rhs = assemble_p1_load(mesh_, rule_, src);

    // (1/dt + stab) M phi_k - (alpha0/2) M_w phi_k
    const std::vector<double> m_phi = mass_.multiply(phi_k.values);
    const std::vector<double> mw_phi = weighted_mass_.multiply(phi_k.values);
    const double c = 1.0 / params_.dt + params_.stab;
    for (int i = 0; i < n; ++i) rhs[i] += c * m_phi[i] - 0.5 * params_.alpha0 * mw_phi[i];

    ScalarFieldP1 phi_star = phi_k;  // warm start
    const CgResult cg = cg_solve(system_, rhs, phi_star.values, tol, maxit);
    if (report) *report = cg;
    return phi_star;
}

ScalarFieldP1 allen_cahn_step(const TriMesh& mesh, const QuadratureRule& rule,
                              const ScalarFieldP1& phi_k, const VectorFieldP2& u, double lambda,
                              const PhaseParams& params, double tol) {
    const DofMapP2 dofs = DofMapP2::build(mesh);
    const CsrMatrix mass = assemble_p1_mass(mesh, rule);
    const CsrMatrix stiffness = assemble_p1_stiffness(mesh, rule);
    const AllenCahnOperator op(mesh, rule, mass, stiffness,
                               eval_speed_squared(mesh, rule, dofs, u), params);
    return op.step(phi_k, lambda, tol);
}

ScalarFieldP1 cutoff(const ScalarFieldP1& phi) {
    ScalarFieldP1 out = phi;
    for (double& v : out.values) v = std::min(std::max(v, 0.0), 1.0);
    return out;
}

double well_integral(const TriMesh& mesh, const QuadratureRule& rule, const ScalarFieldP1& phi) {
    const int nq = rule.size();
    double total = 0.0;
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const double detJ = 2.0 * mesh.element_area(t);
        const auto& tri = mesh.triangles()[t];
        double elem = 0.0;
        for (int q = 0; q < nq; ++q) {
            double s[3];
            p1_shape(rule.points[q].x, rule.points[q].y, s);
            const double ph = s[0] * phi[tri[0]] + s[1] * phi[tri[1]] + s[2] * phi[tri[2]];
            elem += rule.weights[q] * double_well(ph);
        }
        total += detJ * elem;
    }
    return total;
}

double ginzburg_landau_energy(const TriMesh& mesh, const QuadratureRule& rule,
                              const CsrMatrix& stiffness, const ScalarFieldP1& phi, double eps) {
    return 0.5 * eps * stiffness.quadratic_form(phi.values) +
           well_integral(mesh, rule, phi) / eps;
}

double field_integral(const CsrMatrix& mass, const ScalarFieldP1& phi) {
    const std::vector<double> m_phi = mass.multiply(phi.values);
    double integral = 0.0;
    for (double v : m_phi) integral += v;
    return integral;
}

double volume_misfit(const CsrMatrix& mass, const ScalarFieldP1& phi, double beta, double V0) {
    return field_integral(mass, phi) - beta * V0;
}

double gradient_form_difference(const TriMesh& mesh, const ScalarFieldP1& a,
                                const ScalarFieldP1& b) {
    double diff = 0.0;
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const auto& tri = mesh.triangles()[t];
        const int i0 = tri[0], i1 = tri[1], i2 = tri[2];
        if (a[i0] == b[i0] && a[i1] == b[i1] && a[i2] == b[i2]) continue;
        const auto& jit = mesh.inverse_jacobian_t(t);
        const double area = mesh.element_area(t);
        auto form = [&](const ScalarFieldP1& f) {
            const double d1 = f[i1] - f[i0];
            const double d2 = f[i2] - f[i0];
            const double gx = jit[0] * d1 + jit[1] * d2;
            const double gy = jit[2] * d1 + jit[3] * d2;
            return area * (gx * gx + gy * gy);
        };
        diff += form(a) - form(b);
    }
    return diff;
}

}  // namespace stokesopt
