#include <benchmark/benchmark.h>

#include "stokesopt/optimizer.hpp"

using namespace stokesopt;

namespace {

const QuadratureRule& rule6() {
    static const auto r = QuadratureRule::triangle(6);
    return r;
}

TriMesh channel(int n) {
    TriMesh mesh = build_rect_mesh(n, n, 1.0, 1.0);
    return tag_boundaries(std::move(mesh),
                          {{[](double x, double) { return x < 1e-12; }, BoundaryTag::Inflow},
                           {[](double x, double) { return x > 1.0 - 1e-12; }, BoundaryTag::Outflow},
                           {[](double, double) { return true; }, BoundaryTag::Wall}});
}

VelocityBc parabolic_bc() {
    VelocityBc bc;
    bc.inflow = [](double, double y) { return Vec2{4.0 * y * (1.0 - y), 0.0}; };
    return bc;
}

void BM_AssembleP1Mass(benchmark::State& state) {
    const TriMesh mesh = build_rect_mesh(static_cast<int>(state.range(0)),
                                         static_cast<int>(state.range(0)), 1.0, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(assemble_p1_mass(mesh, rule6()));
    state.SetItemsProcessed(state.iterations() * mesh.triangle_count());
}

void BM_AssembleP2VectorStiffness(benchmark::State& state) {
    const TriMesh mesh = build_rect_mesh(static_cast<int>(state.range(0)),
                                         static_cast<int>(state.range(0)), 1.0, 1.0);
    const DofMapP2 dofs = DofMapP2::build(mesh);
    for (auto _ : state)
        benchmark::DoNotOptimize(assemble_p2_vector_stiffness(mesh, rule6(), dofs));
    state.SetItemsProcessed(state.iterations() * mesh.triangle_count());
}

void BM_CgEllipticSolve(benchmark::State& state) {
    const TriMesh mesh = build_rect_mesh(static_cast<int>(state.range(0)),
                                         static_cast<int>(state.range(0)), 1.0, 1.0);
    const CsrMatrix M = assemble_p1_mass(mesh, rule6());
    const CsrMatrix K = assemble_p1_stiffness(mesh, rule6());
    const CsrMatrix A = CsrMatrix::linear_combination({{1.0, &K}, {1.0, &M}});
    std::vector<double> b(A.rows(), 1.0);
    for (auto _ : state) {
        std::vector<double> x(A.rows(), 0.0);
        benchmark::DoNotOptimize(cg_solve(A, b, x, 1e-10, 100000));
    }
}

void BM_StokesSolve(benchmark::State& state) {
    const TriMesh mesh = channel(static_cast<int>(state.range(0)));
    const StokesSolver solver(mesh, rule6(), parabolic_bc());
    ScalarFieldP1 phi(mesh.vertex_count(), 1.0);
    for (int v = 0; v < phi.size(); ++v)
        phi[v] = mesh.vertices()[v].y > 0.5 ? 1.0 : 0.2;
    for (auto _ : state) benchmark::DoNotOptimize(solver.solve(phi, 1e4, 1e-10));
}

void BM_AllenCahnStep(benchmark::State& state) {
    const TriMesh mesh = channel(static_cast<int>(state.range(0)));
    const DofMapP2 dofs = DofMapP2::build(mesh);
    const CsrMatrix M = assemble_p1_mass(mesh, rule6());
    const CsrMatrix K = assemble_p1_stiffness(mesh, rule6());
    const PhaseParams params = PhaseParams::make(0.01, 0.01, 1.0, 0.25, 1e4);
    const StokesSolver solver(mesh, rule6(), parabolic_bc());
    const ScalarFieldP1 phi(mesh.vertex_count(), 1.0);
    const StokesSolution sol = solver.solve(phi, params.alpha0, 1e-10);
    const AllenCahnOperator op(mesh, rule6(), M, K,
                               eval_speed_squared(mesh, rule6(), dofs, sol.u), params);
    for (auto _ : state) benchmark::DoNotOptimize(op.step(phi, 0.1, 1e-10));
}

}  // namespace

BENCHMARK(BM_AssembleP1Mass)->Arg(32)->Arg(64);
BENCHMARK(BM_AssembleP2VectorStiffness)->Arg(32)->Arg(64);
BENCHMARK(BM_CgEllipticSolve)->Arg(32)->Arg(64);
BENCHMARK(BM_StokesSolve)->Arg(16)->Arg(32);
BENCHMARK(BM_AllenCahnStep)->Arg(32)->Arg(64);

BENCHMARK_MAIN();
