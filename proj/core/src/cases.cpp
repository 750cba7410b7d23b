#include "stokesopt/cases.hpp"

#include "stokesopt/phasefield.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace stokesopt {

namespace {
constexpr double kEdgeTol = 1e-9;
}

Vec2 PortProfile::velocity(double x, double y) const {
    const double coord = (axis == 0) ? x : y;
    if (coord < lo || coord > hi || hi <= lo) return {0.0, 0.0};
    const double s = (coord - lo) / (hi - lo);
    const double magnitude = peak * 4.0 * s * (1.0 - s);
    return {magnitude * direction.x, magnitude * direction.y};
}

CaseSpec case_diffuser() {
    CaseSpec c;
    c.name = "diffuser";
    c.width = 1.0;
    c.height = 1.0;
    c.beta = 0.5;
    c.default_nx = 64;
    c.default_ny = 64;
    c.boundary = {
        {BoundaryTag::Inflow, [](double x, double) { return x < kEdgeTol; },
         PortProfile{1, 0.0, 1.0, 1.0, {1.0, 0.0}}},
        {BoundaryTag::Outflow,
         [](double x, double y) { return x > 1.0 - kEdgeTol && y >= 1.0 / 3.0 && y <= 2.0 / 3.0; },
         std::nullopt},
        {BoundaryTag::Wall, [](double, double) { return true; }, std::nullopt},
    };
    c.phi0.kind = InitialPhi::Kind::Indicator;
    c.phi0.indicator = [](double x, double y) {
        return (x <= 0.25 || (y >= 1.0 / 3.0 && y <= 2.0 / 3.0)) ? 1.0 : 0.0;
    };
    return c;
}

CaseSpec case_rugby() {
    CaseSpec c;
    c.name = "rugby";
    c.width = 1.0;
    c.height = 1.5;
    c.beta = 0.1189;
    c.default_nx = 48;
    c.default_ny = 72;
    c.boundary = {
        {BoundaryTag::Inflow, [](double, double y) { return y < kEdgeTol; },
         PortProfile{0, 0.0, 1.0, 1.0, {0.0, 1.0}}},
        {BoundaryTag::Outflow, [](double, double y) { return y > 1.5 - kEdgeTol; }, std::nullopt},
        {BoundaryTag::Wall, [](double, double) { return true; }, std::nullopt},
    };
    c.phi0.kind = InitialPhi::Kind::Indicator;
    c.phi0.indicator = [](double x, double y) {
        const bool in_void = x >= 0.3 && x <= 0.7 && y >= 0.2 && y <= 0.6;
        return in_void ? 0.0 : 1.0;
    };
    return c;
}

CaseSpec case_pipe_bend() {
    CaseSpec c;
    c.name = "pipe_bend";
    c.width = 1.0;
    c.height = 1.0;
    c.beta = 0.2762;
    c.default_nx = 64;
    c.default_ny = 64;
    c.boundary = {
        {BoundaryTag::Inflow,
         [](double x, double y) { return x < kEdgeTol && y >= 0.7 && y <= 0.9; },
         PortProfile{1, 0.7, 0.9, 1.0, {1.0, 0.0}}},
        {BoundaryTag::Outflow,
         [](double x, double y) { return y < kEdgeTol && x >= 0.7 && x <= 0.9; }, std::nullopt},
        {BoundaryTag::Wall, [](double, double) { return true; }, std::nullopt},
    };
    // Sixteen disjoint circles on a 4x4 grid. Spacing 0.25 keeps them from
    // overlapping, so the fluid fraction is 1 - 16 pi r^2 = 0.2762.
    c.phi0.kind = InitialPhi::Kind::Indicator;
    c.phi0.indicator = [](double x, double y) {
        const double r2 = 0.12 * 0.12;
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                const double cx = 0.125 + 0.25 * i;
                const double cy = 0.125 + 0.25 * j;
                const double dx = x - cx, dy = y - cy;
                if (dx * dx + dy * dy <= r2) return 0.0;
            }
        }
        return 1.0;
    };
    return c;
}

CaseSpec case_bypass(unsigned seed) {
    CaseSpec c;
    c.name = "bypass";
    c.width = 1.5;
    c.height = 1.0;
    c.beta = 0.2777;
    c.default_nx = 96;
    c.default_ny = 64;
    const double lo1 = 0.1, hi1 = 0.3, lo2 = 0.7, hi2 = 0.9;
    c.boundary = {
        {BoundaryTag::Inflow,
         [=](double x, double y) { return x < kEdgeTol && y >= lo1 && y <= hi1; },
         PortProfile{1, lo1, hi1, 1.0, {1.0, 0.0}}},
        {BoundaryTag::Inflow,
         [=](double x, double y) { return x < kEdgeTol && y >= lo2 && y <= hi2; },
         PortProfile{1, lo2, hi2, 1.0, {1.0, 0.0}}},
        {BoundaryTag::Outflow,
         [=](double x, double y) {
             return x > 1.5 - kEdgeTol && ((y >= lo1 && y <= hi1) || (y >= lo2 && y <= hi2));
         },
         std::nullopt},
        {BoundaryTag::Wall, [](double, double) { return true; }, std::nullopt},
    };
    c.phi0.kind = InitialPhi::Kind::SeededRandom;
    c.phi0.seed = seed;
    return c;
}

std::vector<std::string> builtin_case_names() {
    return {"diffuser", "rugby", "pipe_bend", "bypass"};
}

std::optional<CaseSpec> find_case(const std::string& name, unsigned seed) {
    if (name == "diffuser") return case_diffuser();
    if (name == "rugby") return case_rugby();
    if (name == "pipe_bend") return case_pipe_bend();
    if (name == "bypass") return case_bypass(seed);
    return std::nullopt;
}

TriMesh build_case_mesh(const CaseSpec& spec, int nx, int ny) {
    TriMesh mesh = build_rect_mesh(nx, ny, spec.width, spec.height);
    std::vector<BoundaryRule> rules;
    rules.reserve(spec.boundary.size());
    for (const auto& seg : spec.boundary) rules.push_back({seg.contains, seg.tag});
    return tag_boundaries(std::move(mesh), rules);
}

VelocityBc case_velocity_bc(const CaseSpec& spec) {
    std::vector<PortProfile> ports;
    for (const auto& seg : spec.boundary)
        if (seg.tag == BoundaryTag::Inflow && seg.profile) ports.push_back(*seg.profile);
    if (ports.empty()) return {};
    VelocityBc bc;
    bc.inflow = [ports](double x, double y) {
        Vec2 g{0.0, 0.0};
        for (const auto& port : ports) {
            const Vec2 v = port.velocity(x, y);
            g.x += v.x;
            g.y += v.y;
        }
        return g;
    };
    return bc;
}

ScalarFieldP1 build_initial_phi(const TriMesh& mesh, const CaseSpec& spec,
                                const CsrMatrix& p1_mass) {
    const int n = mesh.vertex_count();
    ScalarFieldP1 phi(n);
    if (spec.phi0.kind == InitialPhi::Kind::Indicator) {
        if (!spec.phi0.indicator) throw ConfigError("case has no initial-phase indicator");
        for (int v = 0; v < n; ++v) {
            const Vec2 pt = mesh.vertices()[v];
            phi[v] = std::clamp(spec.phi0.indicator(pt.x, pt.y), 0.0, 1.0);
        }
        return phi;
    }

    std::mt19937 rng(spec.phi0.seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    for (int v = 0; v < n; ++v) phi[v] = uniform(rng);

    // Rescale (and re-clamp) until the discrete volume matches beta*V0.
    const double V0 = mesh.total_area();
    const double target = spec.beta * V0;
    for (int pass = 0; pass < 100; ++pass) {
        const double current = field_integral(p1_mass, phi);
        if (std::abs(current - target) <= 1e-12 * V0) break;
        if (current <= 0.0) throw ConfigError("random initial phase has zero volume");
        const double scale = target / current;
        for (int v = 0; v < n; ++v) phi[v] = std::min(1.0, phi[v] * scale);
    }
    const double achieved = field_integral(p1_mass, phi);
    if (std::abs(achieved - target) > 1e-10 * V0)
        throw ConfigError("could not scale the random initial phase to the target volume");
    return phi;
}

}  // namespace stokesopt
