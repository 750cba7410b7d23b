#ifndef STOKESOPT_OPTIMIZER_HPP
#define STOKESOPT_OPTIMIZER_HPP

#include <limits>

#include "stokesopt/cases.hpp"
#include "stokesopt/phasefield.hpp"
#include "stokesopt/stokes.hpp"

namespace stokesopt {

struct RunConfig {
    int outer = 30;                 // velocity updates
    int inner = 10;                 // phase/multiplier updates per velocity update
    double eps = 0.01;
    double eta = 0.01;
    double dt = 1.0;
    double stab = -1.0;             // < 0 selects the minimal stable value eta/(4 eps)
    double alpha0 = 1e4;
    double beta = 0.5;
    double beta0 = 1.0;             // multiplier step
    double lambda0 = 0.0;
    double linear_tol = 1e-10;
    double energy_slack = 1e-8;     // relative slack for the decay checks
    double stop_tol = 1e-8;         // outer-loop plateau threshold; 0 disables
    int stop_patience = 3;
    int quadrature_degree = 6;
    bool lambda_frozen_per_outer = false;  // feed the outer multiplier to every inner step
    bool allow_unstable = false;
    unsigned seed = 1;
    int vtk_every = 0;              // handled by the caller; kept here for config parsing
    std::string out_dir;            // diagnostics dump location on decay failure

    double effective_stab() const { return stab < 0.0 ? eta / (4.0 * eps) : stab; }
};

enum class Stage { Stokes, AllenCahn, CutoffLambda };
const char* to_string(Stage s);

// One energy-ledger row. total is the exact sum of the four components.
struct EnergyBreakdown {
    int outer = 0;
    int inner = 0;
    Stage stage = Stage::Stokes;
    double dissipation = 0.0;        // 1/2 |grad u|^2
    double penalization = 0.0;       // 1/2 alpha(phi) |u|^2
    double interface_scaled = 0.0;   // eta * Ginzburg-Landau energy
    double volume_scaled = 0.0;      // lambda * volume misfit
    double total = 0.0;
    double lambda = 0.0;
    double volume = 0.0;             // volume misfit itself
    double phi_min = 0.0;
    double phi_max = 0.0;
};

// Worst margins observed by the live guard over a run. Signed so that a
// negative value means the inequality held with room to spare.
struct GuardStats {
    double max_stage_increase = -std::numeric_limits<double>::infinity();
    double max_velocity_update_increase = -std::numeric_limits<double>::infinity();
    double max_phase_update_increase = -std::numeric_limits<double>::infinity();
    double max_cutoff_update_increase = -std::numeric_limits<double>::infinity();
    double max_gradient_form_increase = -std::numeric_limits<double>::infinity();
    double max_multiplier_violation = -std::numeric_limits<double>::infinity();
    double max_cutoff_penalization_increase = -std::numeric_limits<double>::infinity();
    double max_cutoff_well_increase = -std::numeric_limits<double>::infinity();
    double max_divergence_residual = 0.0;
    double max_momentum_residual = 0.0;
    double max_cg_residual = 0.0;
    int max_cg_iterations = 0;
    bool phase_bounds_exact = true;  // after every cutoff: 0 <= phi <= 1
};

struct EnergyDecayError : std::runtime_error {
    Stage stage;
    double increase;
    EnergyDecayError(const std::string& msg, Stage s, double inc)
        : std::runtime_error(msg), stage(s), increase(inc) {}
};

struct OptimizationResult {
    ScalarFieldP1 phi;
    VectorFieldP2 u;
    ScalarPressureP1 p;
    double lambda = 0.0;
    std::vector<EnergyBreakdown> history;
    GuardStats guard;
    int outer_completed = 0;
};

// Invoked after every recorded stage with the current fields.
using StageObserver =
    std::function<void(const EnergyBreakdown&, const ScalarFieldP1& phi, const VectorFieldP2& u,
                       const ScalarPressureP1& p)>;

// Multiplier update lambda' = lambda - step * jv_plus with
// step = max(beta0, lambda*(jv_plus - jv_star)/jv_plus^2), which keeps
// lambda' * jv_plus <= lambda * jv_star in every branch. |jv_plus| <=
// zero_tol returns lambda unchanged.
double multiplier_step(double lambda, double jv_plus, double jv_star, double beta0,
                       double zero_tol = 0.0);

double update_lambda(double lambda, const ScalarFieldP1& phi_plus, const ScalarFieldP1& phi_star,
                     double beta0, double beta, double V0, const CsrMatrix& p1_mass);

// Recomputes every ledger component from scratch; shared by the optimizer
// and by tests that audit recorded histories.
class EnergyEvaluator {
public:
    EnergyEvaluator(const TriMesh& mesh, const QuadratureRule& rule, const CsrMatrix& p2_stiffness,
                    const CsrMatrix& p1_mass, const CsrMatrix& p1_stiffness,
                    const PhaseParams& params, double beta);

    EnergyBreakdown evaluate(const ScalarFieldP1& phi, const VectorFieldP2& u,
                             const QuadPointField& speed_squared, double lambda) const;

    double volume_misfit_of(const ScalarFieldP1& phi) const;
    double domain_volume() const { return V0_; }

private:
    const TriMesh& mesh_;
    const QuadratureRule& rule_;
    const CsrMatrix& p2_stiffness_;
    const CsrMatrix& p1_mass_;
    const CsrMatrix& p1_stiffness_;
    PhaseParams params_;
    double beta_;
    double V0_;
};

OptimizationResult run_optimization(const TriMesh& mesh, const CaseSpec& spec,
                                    const RunConfig& config, const StageObserver& observer = {});

}  // namespace stokesopt

#endif
