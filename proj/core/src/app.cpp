#include "stokesopt/app.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "stokesopt/config.hpp"
#include "stokesopt/output.hpp"

namespace stokesopt {

namespace {

std::string join_names(const std::vector<std::string>& names) {
    std::string out;
    for (size_t i = 0; i < names.size(); ++i) {
        if (i) out += ", ";
        out += names[i];
    }
    return out;
}

int run_command(const RunSetup& setup, const std::string& out_dir) {
    const auto maybe_case = find_case(setup.case_name, setup.config.seed);
    if (!maybe_case) {
        std::cerr << "error: unknown case '" << setup.case_name
                  << "' (available: " << join_names(builtin_case_names()) << ")\n";
        return 1;
    }
    const CaseSpec spec = *maybe_case;

    RunConfig config = setup.config;
    config.out_dir = out_dir;
    const int nx = setup.nx > 0 ? setup.nx : spec.default_nx;
    const int ny = setup.ny > 0 ? setup.ny : spec.default_ny;

    std::filesystem::create_directories(out_dir);
    const TriMesh mesh = build_case_mesh(spec, nx, ny);

    std::cout << "case " << spec.name << ": " << nx << "x" << ny << " mesh, "
              << mesh.vertex_count() << " vertices, beta = " << config.beta
              << ", stab = " << config.effective_stab() << "\n";

    HistoryCsvWriter csv(out_dir + "/history.csv");
    int last_reported_outer = -1;
    const StageObserver observer = [&](const EnergyBreakdown& b, const ScalarFieldP1& phi,
                                       const VectorFieldP2& u, const ScalarPressureP1& p) {
        csv.append(b);
        const bool outer_done = b.stage == Stage::CutoffLambda && b.inner == config.inner;
        if (outer_done && b.outer != last_reported_outer) {
            last_reported_outer = b.outer;
            std::cout << "outer " << b.outer << ": L = " << format_double(b.total)
                      << ", J_v = " << format_double(b.volume) << "\n";
            if (config.vtk_every > 0 && (b.outer + 1) % config.vtk_every == 0) {
                char name[32];
                std::snprintf(name, sizeof(name), "field_%04d.vtk", b.outer + 1);
                write_vtk(mesh, out_dir + "/" + name, &phi, &u, &p);
            }
        }
    };

    const OptimizationResult result = run_optimization(mesh, spec, config, observer);

    write_vtk(mesh, out_dir + "/field_final.vtk", &result.phi, &result.u, &result.p);
    const EnergyBreakdown& last = result.history.back();
    std::cout << "finished after " << result.outer_completed
              << " outer iterations: L = " << format_double(last.total)
              << ", lambda = " << format_double(result.lambda)
              << ", J_v = " << format_double(last.volume) << "\n";
    std::cout << "history: " << out_dir << "/history.csv\n";
    return 0;
}

}  // namespace

int cli_run(const std::vector<std::string>& args) {
    CLI::App app{"Phase-field shape optimization in Stokes flow"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run a shape optimization case");
    std::string case_positional, case_flag, config_path, out_dir;
    int nx = 0, ny = 0, outer = 0, inner = 0, vtk_every = 0, seed = 0;
    double eps = 0, eta = 0, dt = 0, stab = 0, alpha0 = 0, beta = 0, beta0 = 0;
    bool allow_unstable = false;

    run->add_option("CASE", case_positional,
                    "Built-in case (" + join_names(builtin_case_names()) + ")");
    run->add_option("--case", case_flag, "Built-in case name");
    run->add_option("--config", config_path, "key=value configuration file");
    run->add_option("--nx", nx, "Cells in x");
    run->add_option("--ny", ny, "Cells in y");
    run->add_option("--outer", outer, "Outer (velocity) iterations");
    run->add_option("--inner", inner, "Inner (phase/multiplier) iterations");
    run->add_option("--eps", eps, "Interface width");
    run->add_option("--eta", eta, "Perimeter weight");
    run->add_option("--dt", dt, "Pseudo-time step");
    run->add_option("--stab", stab, "Stabilizer (default eta/(4 eps))");
    run->add_option("--alpha0", alpha0, "Penalization magnitude");
    run->add_option("--beta", beta, "Target fluid volume fraction");
    run->add_option("--beta0", beta0, "Multiplier step");
    run->add_option("--seed", seed, "Seed for random initial phases");
    run->add_option("--out-dir", out_dir, "Output directory");
    run->add_option("--vtk-every", vtk_every, "Write fields every N outer iterations");
    run->add_flag("--allow-unstable", allow_unstable,
                  "Permit a stabilizer below the energy-stability threshold");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        RunSetup setup;
        bool beta_overridden = false;
        if (!config_path.empty()) {
            const auto kv = parse_config_file(config_path);
            apply_config(kv, setup);
            beta_overridden = kv.count("beta") > 0;
        }
        if (run->count("--case")) setup.case_name = case_flag;
        if (!case_positional.empty()) setup.case_name = case_positional;
        if (run->count("--nx")) setup.nx = nx;
        if (run->count("--ny")) setup.ny = ny;
        if (run->count("--outer")) setup.config.outer = outer;
        if (run->count("--inner")) setup.config.inner = inner;
        if (run->count("--eps")) setup.config.eps = eps;
        if (run->count("--eta")) setup.config.eta = eta;
        if (run->count("--dt")) setup.config.dt = dt;
        if (run->count("--stab")) setup.config.stab = stab;
        if (run->count("--alpha0")) setup.config.alpha0 = alpha0;
        if (run->count("--beta")) {
            setup.config.beta = beta;
            beta_overridden = true;
        }
        if (run->count("--beta0")) setup.config.beta0 = beta0;
        if (run->count("--seed")) setup.config.seed = static_cast<unsigned>(seed);
        if (run->count("--vtk-every")) setup.config.vtk_every = vtk_every;
        if (allow_unstable) setup.config.allow_unstable = true;

        if (setup.case_name.empty()) {
            std::cerr << "error: no case selected (pass a case name or --config)\n";
            return 1;
        }
        if (!beta_overridden) {
            const auto maybe_case = find_case(setup.case_name, setup.config.seed);
            if (maybe_case) setup.config.beta = maybe_case->beta;
        }
        std::string resolved_out = "out";
        if (!setup.config.out_dir.empty()) resolved_out = setup.config.out_dir;
        if (run->count("--out-dir")) resolved_out = out_dir;
        return run_command(setup, resolved_out);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const MeshError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const EnergyDecayError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SolverError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace stokesopt
