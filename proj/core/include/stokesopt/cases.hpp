#ifndef STOKESOPT_CASES_HPP
#define STOKESOPT_CASES_HPP

#include <optional>
#include <string>

#include "stokesopt/csr.hpp"
#include "stokesopt/stokes.hpp"

namespace stokesopt {

// Parabolic inflow over an axis-aligned boundary segment. `axis` is the
// coordinate that varies along the segment (0 = x, 1 = y); velocity is
// peak * 4 s (1-s) along `direction` for the normalized position s, zero
// outside [lo, hi].
struct PortProfile {
    int axis = 1;
    double lo = 0.0;
    double hi = 1.0;
    double peak = 1.0;
    Vec2 direction{1.0, 0.0};

    Vec2 velocity(double x, double y) const;
};

struct BoundarySegment {
    BoundaryTag tag = BoundaryTag::Wall;
    std::function<bool(double x, double y)> contains;  // tested at edge midpoints
    std::optional<PortProfile> profile;                // inflow segments only
};

struct InitialPhi {
    enum class Kind { Indicator, SeededRandom };
    Kind kind = Kind::Indicator;
    std::function<double(double x, double y)> indicator;
    unsigned seed = 1;
};

struct CaseSpec {
    std::string name;
    double width = 1.0;
    double height = 1.0;
    std::vector<BoundarySegment> boundary;  // must cover the whole boundary
    double beta = 0.5;                      // target fluid volume fraction
    InitialPhi phi0;
    int default_nx = 64;
    int default_ny = 64;
};

// Diffuser: full left inflow with profile y(1-y)/0.25, outflow strip on the
// right for y in [1/3, 2/3], beta = 0.5, initial fluid on
// {x <= 1/4} union {1/3 <= y <= 2/3}.
CaseSpec case_diffuser();

// Obstacle in a vertical channel on [0,1] x [0,1.5]: inflow bottom (peak 1),
// outflow top, beta = 0.1189, initial void on [0.3,0.7] x [0.2,0.6].
CaseSpec case_rugby();

// Pipe bend on the unit square: inflow on the left for y in [0.7,0.9],
// outflow on the bottom for x in [0.7,0.9], beta = 0.2762, initial void on a
// 4x4 grid of circles of radius 0.12.
CaseSpec case_pipe_bend();

// Bypass on [0,1.5] x [0,1]: two inflow ports on the left, two outflow ports
// on the right, beta = 0.2777, seeded-random initial phase scaled to the
// target volume.
CaseSpec case_bypass(unsigned seed = 1);

std::vector<std::string> builtin_case_names();
std::optional<CaseSpec> find_case(const std::string& name, unsigned seed = 1);

TriMesh build_case_mesh(const CaseSpec& spec, int nx, int ny);
VelocityBc case_velocity_bc(const CaseSpec& spec);

// Nodal initial phase. Indicator recipes are clamped to [0,1]; seeded-random
// recipes are rescaled until the discrete volume hits beta*V0 within
// 1e-10*V0.
ScalarFieldP1 build_initial_phi(const TriMesh& mesh, const CaseSpec& spec,
                                const CsrMatrix& p1_mass);

}  // namespace stokesopt

#endif
