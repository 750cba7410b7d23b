#include <doctest.h>

#include <cmath>

#include "stokesopt/cases.hpp"
#include "stokesopt/phasefield.hpp"

using namespace stokesopt;

namespace {

const QuadratureRule& rule6() {
    static const auto r = QuadratureRule::triangle(6);
    return r;
}

double initial_volume(const CaseSpec& spec, int nx, int ny) {
    const TriMesh mesh = build_case_mesh(spec, nx, ny);
    const CsrMatrix mass = assemble_p1_mass(mesh, rule6());
    const ScalarFieldP1 phi = build_initial_phi(mesh, spec, mass);
    return field_integral(mass, phi);
}

}  // namespace

TEST_CASE("diffuser inlet profile and initial shape") {
    const CaseSpec spec = case_diffuser();
    const VelocityBc bc = case_velocity_bc(spec);
    REQUIRE(bc.inflow);
    CHECK(bc.inflow(0.0, 0.5).x == doctest::Approx(1.0));
    CHECK(bc.inflow(0.0, 0.0).x == doctest::Approx(0.0));
    CHECK(bc.inflow(0.0, 1.0).x == doctest::Approx(0.0));
    CHECK(bc.inflow(0.0, 0.5).y == 0.0);

    // The initial region covers exactly half the unit square:
    // 0.25 + 0.75 * (1/3) = 0.5.
    CHECK(spec.beta == 0.5);
    CHECK(spec.phi0.indicator(0.1, 0.9) == 1.0);
    CHECK(spec.phi0.indicator(0.5, 0.5) == 1.0);
    CHECK(spec.phi0.indicator(0.5, 0.9) == 0.0);
    const double vol = initial_volume(spec, 64, 64);
    CHECK(std::abs(vol - 0.5) <= 0.02 * 0.5);
}

TEST_CASE("diffuser boundary tags") {
    const CaseSpec spec = case_diffuser();
    const TriMesh mesh = build_case_mesh(spec, 12, 12);
    int inflow = 0, outflow = 0, wall = 0;
    for (int e : mesh.boundary_edge_ids()) {
        const Vec2 mid = mesh.edge_midpoint(e);
        switch (mesh.boundary_tag(e)) {
            case BoundaryTag::Inflow:
                CHECK(mid.x == doctest::Approx(0.0));
                ++inflow;
                break;
            case BoundaryTag::Outflow:
                CHECK(mid.x == doctest::Approx(1.0));
                CHECK(mid.y >= 1.0 / 3);
                CHECK(mid.y <= 2.0 / 3);
                ++outflow;
                break;
            case BoundaryTag::Wall:
                ++wall;
                break;
        }
    }
    CHECK(inflow == 12);
    CHECK(outflow == 4);  // the middle third of twelve edges
    CHECK(wall > 0);
}

TEST_CASE("rugby case data") {
    const CaseSpec spec = case_rugby();
    CHECK(spec.width == 1.0);
    CHECK(spec.height == 1.5);
    CHECK(spec.beta == 0.1189);  // taken verbatim as the target fluid fraction

    // The void rectangle is 0.4 x 0.4.
    CHECK(spec.phi0.indicator(0.5, 0.4) == 0.0);
    CHECK(spec.phi0.indicator(0.29, 0.4) == 1.0);
    CHECK(spec.phi0.indicator(0.5, 0.61) == 1.0);

    const VelocityBc bc = case_velocity_bc(spec);
    CHECK(bc.inflow(0.5, 0.0).y == doctest::Approx(1.0));  // peak speed
    CHECK(bc.inflow(0.0, 0.0).y == doctest::Approx(0.0));

    const TriMesh mesh = build_case_mesh(spec, 8, 12);
    CHECK(mesh.total_area() == doctest::Approx(1.5));

    // Initial fluid area is 1.5 - 0.16 up to nodal smearing of the void
    // rectangle; it intentionally disagrees with beta * V0 for this case.
    const double vol = initial_volume(spec, 48, 72);
    CHECK(std::abs(vol - (1.5 - 0.16)) <= 0.02);
}

TEST_CASE("pipe bend circles against a brute-force distance check") {
    const CaseSpec spec = case_pipe_bend();
    CHECK(spec.beta == doctest::Approx(0.2762));
    // beta equals the uncovered fraction of sixteen disjoint circles.
    CHECK(1.0 - 16.0 * M_PI * 0.12 * 0.12 == doctest::Approx(spec.beta).epsilon(1e-4));
    CHECK(spec.phi0.indicator(0.2, 0.2) == 0.0);  // inside the first circle

    for (int i = 0; i <= 50; ++i) {
        for (int j = 0; j <= 50; ++j) {
            const double x = i / 50.0, y = j / 50.0;
            double dist = 1e9;
            for (int ci = 0; ci < 4; ++ci)
                for (int cj = 0; cj < 4; ++cj)
                    dist = std::min(dist,
                                    std::hypot(x - (0.125 + 0.25 * ci), y - (0.125 + 0.25 * cj)));
            const double expected = dist <= 0.12 ? 0.0 : 1.0;
            CHECK(spec.phi0.indicator(x, y) == expected);
        }
    }

    // Ports sit where the tags say they do.
    const TriMesh mesh = build_case_mesh(spec, 20, 20);
    for (int e : mesh.boundary_edge_ids()) {
        const Vec2 mid = mesh.edge_midpoint(e);
        if (mesh.boundary_tag(e) == BoundaryTag::Inflow) {
            CHECK(mid.x == doctest::Approx(0.0));
            CHECK(mid.y >= 0.7);
            CHECK(mid.y <= 0.9);
        }
        if (mesh.boundary_tag(e) == BoundaryTag::Outflow) {
            CHECK(mid.y == doctest::Approx(0.0));
            CHECK(mid.x >= 0.7);
            CHECK(mid.x <= 0.9);
        }
    }
}

TEST_CASE("bypass random initial phase hits the target volume exactly") {
    const CaseSpec spec = case_bypass(123);
    const TriMesh mesh = build_case_mesh(spec, 24, 16);
    const CsrMatrix mass = assemble_p1_mass(mesh, rule6());
    const ScalarFieldP1 phi = build_initial_phi(mesh, spec, mass);

    const double V0 = mesh.total_area();
    CHECK(std::abs(field_integral(mass, phi) - spec.beta * V0) <= 1e-10 * V0);
    for (int v = 0; v < phi.size(); ++v) {
        CHECK(phi[v] >= 0.0);
        CHECK(phi[v] <= 1.0);
    }

    // Same seed, same field; different seed, different field.
    const ScalarFieldP1 again = build_initial_phi(mesh, spec, mass);
    for (int v = 0; v < phi.size(); ++v) CHECK(phi[v] == again[v]);
    const ScalarFieldP1 other = build_initial_phi(mesh, case_bypass(124), mass);
    bool any_different = false;
    for (int v = 0; v < phi.size(); ++v) any_different = any_different || phi[v] != other[v];
    CHECK(any_different);
}

TEST_CASE("every built-in case starts inside the admissible set") {
    for (const std::string& name : builtin_case_names()) {
        CAPTURE(name);
        const CaseSpec spec = *find_case(name, 1);
        const TriMesh mesh = build_case_mesh(spec, 32, 32);
        const CsrMatrix mass = assemble_p1_mass(mesh, rule6());
        const ScalarFieldP1 phi = build_initial_phi(mesh, spec, mass);
        for (int v = 0; v < phi.size(); ++v) {
            CHECK(phi[v] >= 0.0);
            CHECK(phi[v] <= 1.0);
        }
    }
    CHECK(!find_case("nosuchcase"));
}

TEST_CASE("initial volume tracks beta within two percent where applicable") {
    // The rugby case is exempt: its target fraction is stated independently
    // of the initial shape.
    for (const std::string name : {"diffuser", "pipe_bend", "bypass"}) {
        CAPTURE(name);
        const CaseSpec spec = *find_case(name, 1);
        const double vol = initial_volume(spec, 64, 64);
        const double target = spec.beta * spec.width * spec.height;
        CHECK(std::abs(vol - target) <= 0.02 * spec.width * spec.height);
    }
}
