// Command-line front end: solve-aux | denoise | steady-states | verify | norm.
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mphase/config.hpp"
#include "mphase/modular.hpp"
#include "mphase/pgm.hpp"
#include "mphase/random.hpp"
#include "mphase/steady_state.hpp"
#include "mphase/trace.hpp"

namespace {

using namespace mphase;

struct Common {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir = ".";
};

RunConfig load_config(const Common& c) {
    RunConfig cfg = c.config_path.empty() ? RunConfig{} : parse_config(c.config_path);
    if (c.seed) cfg.run.seed = *c.seed;
    return cfg;
}

std::string joined(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

void ensure_out_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
}

GridFunction source_from_image(const std::string& path, const Grid& g, double lambda) {
    const ImageBuffer img = load_pgm(path);
    if (img.width != g.nx || img.height != g.ny)
        throw ConfigError("source image is " + std::to_string(img.width) + "x" +
                          std::to_string(img.height) + " but the grid is " +
                          std::to_string(g.nx) + "x" + std::to_string(g.ny));
    GridFunction out = to_grid_function(img);
    for (double& v : out) v *= lambda;
    return out;
}

int run_solve_aux(const Common& common, const std::string& source_image,
                  std::optional<double> lambda_flag, const std::string& eps_flag,
                  const std::string& grid_flag, const std::string& trace_path) {
    RunConfig cfg = load_config(common);
    if (!grid_flag.empty()) {
        const auto xpos = grid_flag.find('x');
        if (xpos == std::string::npos) throw ConfigError("--grid expects NXxNY");
        cfg.nx = std::stoi(grid_flag.substr(0, xpos));
        cfg.ny = std::stoi(grid_flag.substr(xpos + 1));
        cfg.hx.reset();
        cfg.hy.reset();
    }
    if (lambda_flag) cfg.run.lambda = *lambda_flag;
    if (!eps_flag.empty()) {
        std::istringstream in(eps_flag);
        cfg.solver.epsilon_schedule.clear();
        double v = 0.0;
        while (in >> v) cfg.solver.epsilon_schedule.push_back(v);
    }
    const double lambda = cfg.require_lambda();
    const Grid grid = cfg.make_grid();
    const PhaseSpec spec = cfg.make_phase_spec(grid);
    const ExponentField p = spec.p_max;

    GridFunction g;
    if (!source_image.empty()) {
        g = source_from_image(source_image, grid, lambda);
    } else {
        g.assign(static_cast<std::size_t>(grid.cells()), 0.5 * lambda);
    }

    SolverConfig scfg = cfg.solver;
    scfg.record_trace = !trace_path.empty();
    const SolveReport rep = epsilon_continuation(grid, spec, p, g, lambda, scfg);

    ensure_out_dir(common.out_dir);
    save_pgm(to_image(grid, rep.v), joined(common.out_dir, "V.pgm"));
    if (!trace_path.empty()) emit_solver_trace(trace_path, rep.trace);

    std::printf("solve-aux: %dx%d lambda=%g iters=%d residual=%.3e energy=%.12g box=%.3e\n",
                grid.nx, grid.ny, lambda, rep.iters, rep.grad_residual, rep.energy_final,
                rep.box_violation);
    if (rep.sandwich) {
        for (const auto& [eps, mj] : rep.sandwich->mins_per_eps)
            std::printf("  eps=%-10g min J=%.12g (bound %.12g)\n", eps, mj,
                        rep.sandwich->m_box + eps * grid.domain_measure() / p.p_minus);
    }
    std::printf("  wrote %s\n", joined(common.out_dir, "V.pgm").c_str());
    return 0;
}

int run_denoise(const Common& common, const std::string& input, const std::string& output,
                std::optional<double> tau_flag, std::optional<int> steps_flag,
                const std::string& trace_path) {
    RunConfig cfg = load_config(common);
    const ImageBuffer img = load_pgm(input);
    cfg.nx = img.width;
    cfg.ny = img.height;
    const Grid grid = cfg.make_grid();
    const PhaseSpec spec = cfg.make_phase_spec(grid);
    const ReactionSource src = cfg.make_reaction(grid);
    hypothesis_audit(src);

    const double tau = tau_flag ? *tau_flag : cfg.run.tau;
    const int steps = steps_flag ? *steps_flag : cfg.run.steps;
    const RotheTrajectory traj = evolve(grid, src, spec, spec.p_max, to_grid_function(img), tau,
                                        steps, cfg.run.steady_tol, cfg.solver);

    ensure_out_dir(std::filesystem::path(output).parent_path().string());
    save_pgm(to_image(grid, traj.states.back()), output);
    if (!trace_path.empty()) emit_evolution_trace(trace_path, traj.trace);

    std::printf("denoise: %d steps (steady=%s), final elliptic residual %.3e, wrote %s\n",
                static_cast<int>(traj.states.size()) - 1, traj.steady ? "yes" : "no",
                traj.steady_residual, output.c_str());
    return 0;
}

int run_steady_states(const Common& common) {
    const RunConfig cfg = load_config(common);
    const Grid grid = cfg.make_grid();
    const PhaseSpec spec = cfg.make_phase_spec(grid);
    const ReactionSource src = cfg.make_reaction(grid);

    SteadyStateConfig scfg;
    scfg.iter_tol = cfg.run.iter_tol;
    scfg.max_outer = cfg.run.max_outer;
    scfg.solver = cfg.solver;
    const SteadyStateReport rep = minimal_maximal_solutions(grid, src, spec, spec.p_max, scfg);

    ensure_out_dir(common.out_dir);
    save_pgm(to_image(grid, rep.u_min), joined(common.out_dir, "U_min.pgm"));
    save_pgm(to_image(grid, rep.u_max), joined(common.out_dir, "U_max.pgm"));
    emit_evolution_trace(joined(common.out_dir, "iterations_min.csv"), rep.trace_min);
    emit_evolution_trace(joined(common.out_dir, "iterations_max.csv"), rep.trace_max);

    std::printf("steady-states: from 1 in %d iters (residual %.3e), from 0 in %d iters "
                "(residual %.3e), unique=%s\n",
                rep.iterations_max, rep.fixed_point_residual_max, rep.iterations_min,
                rep.fixed_point_residual_min, rep.unique ? "yes" : "no");
    std::printf("  wrote U_min.pgm, U_max.pgm, iterations_{min,max}.csv in %s\n",
                common.out_dir.c_str());
    return 0;
}

int run_norm(const Common& common, const std::string& input, const std::string& profile_text) {
    const RunConfig cfg = load_config(common);
    Grid grid = cfg.make_grid();
    GridFunction u;
    if (!input.empty()) {
        const ImageBuffer img = load_pgm(input);
        grid = Grid::unit_square(img.width, img.height);
        u = to_grid_function(img);
    } else if (!profile_text.empty()) {
        u = materialize(parse_profile(profile_text), grid);
    } else {
        throw ConfigError("norm needs --input or --profile");
    }
    const PhaseSpec spec = cfg.make_phase_spec(grid);
    const ExponentField p = spec.p_max;

    const ModularReport rep = luxemburg_norm(grid, u, p);
    std::printf("modular        %.12g\n", rep.modular_value);
    std::printf("luxemburg norm %.12g  (%d bisection iters)\n", rep.luxemburg_norm,
                rep.bisection_iters);
    if (rep.luxemburg_norm == 0.0) {
        std::printf("property suite skipped for the zero field\n");
        return 0;
    }
    std::mt19937_64 rng(cfg.run.seed);
    const GridFunction v = random_field(rng, grid, -1.0, 1.0);
    const ModularSuiteReport suite = modular_property_suite(grid, u, p, v);
    std::printf("property suite pass (branch ||u|| %s 1, pairing %.6g <= %.6g)\n",
                suite.norm_above_one ? ">" : "<", suite.pairing_lhs, suite.pairing_rhs);
    return 0;
}

// Full property corpus on the configured instance; nonzero exit on violation.
int run_verify(const Common& common) {
    const RunConfig cfg = load_config(common);
    const Grid grid = cfg.make_grid();
    const PhaseSpec spec = cfg.make_phase_spec(grid);
    const ExponentField p = spec.p_max;
    const ReactionSource src = cfg.make_reaction(grid);
    const double lambda = cfg.run.lambda ? *cfg.run.lambda : 1.0;
    std::mt19937_64 rng(cfg.run.seed);

    int failures = 0;
    const auto check = [&failures](const char* name, auto&& fn) {
        try {
            fn();
            std::printf("[ OK ] %s\n", name);
        } catch (const std::exception& e) {
            std::printf("[FAIL] %s: %s\n", name, e.what());
            ++failures;
        }
    };

    check("modular property suite (8 random fields)", [&] {
        for (int k = 0; k < 8; ++k) {
            const GridFunction u = random_field(rng, grid, -2.0, 2.0);
            const GridFunction v = random_field(rng, grid, -1.0, 1.0);
            modular_property_suite(grid, u, p, v);
        }
    });
    check("luxemburg unit-modular identity", [&] {
        const GridFunction u = random_field(rng, grid, -2.0, 2.0);
        const ModularReport r = luxemburg_norm(grid, u, p);
        GridFunction w(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) w[i] = u[i] / r.luxemburg_norm;
        if (std::abs(modular(grid, w, p) - 1.0) > 1e-10)
            throw PropertyViolation("rho(u/||u||) != 1");
    });
    check("flux monotonicity and growth bound", [&] {
        growth_bound_check(spec, 2000, rng());
        for (int k = 0; k < 2000; ++k) {
            const int cell = static_cast<int>(uniform01(rng) * grid.cells()) % grid.cells();
            const Vec2 a{uniform(rng, -3, 3), uniform(rng, -3, 3)};
            const Vec2 b{uniform(rng, -3, 3), uniform(rng, -3, 3)};
            if (monotonicity_gap(spec, cell, a, b) < -1e-12)
                throw PropertyViolation("monotonicity gap negative");
            const auto [lo, hi] = bregman_gap(spec, cell, a, b);
            if (lo < -1e-12 || hi < -1e-12) throw PropertyViolation("bregman gap negative");
        }
    });
    check("energy gradient vs finite differences", [&] {
        const EnergyModel em(grid, spec, p, cfg.solver.gradient_model);
        const GridFunction v = random_field(rng, grid, 0.1, 0.9);
        GridFunction dir = random_field(rng, grid, -1.0, 1.0);
        const GridFunction gsrc = random_field(rng, grid, 0.0, lambda);
        const GridFunction gr = em.gradient(v, gsrc, lambda, 1e-3);
        double dd = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) dd += gr[i] * dir[i];
        const double h = 1e-6;
        GridFunction up = v, dn = v;
        for (std::size_t i = 0; i < v.size(); ++i) {
            up[i] += h * dir[i];
            dn[i] -= h * dir[i];
        }
        const double fd =
            (em.energy(up, gsrc, lambda, 1e-3) - em.energy(dn, gsrc, lambda, 1e-3)) / (2 * h);
        if (std::abs(fd - dd) > 1e-5 * std::max(1.0, std::abs(fd)))
            throw PropertyViolation("gradient mismatch " + std::to_string(std::abs(fd - dd)));
    });
    check("minimum principle", [&] {
        const GridFunction c(static_cast<std::size_t>(grid.cells()), lambda);
        const GridFunction rhs = random_field(rng, grid, 0.0, lambda);
        const SolveReport rep = solve_auxiliary(grid, spec, p, rhs, lambda, cfg.solver);
        minimum_principle_check(grid, spec, p, c, rep.v, rhs, cfg.solver.gradient_model);
    });
    check("comparison principle", [&] {
        GridFunction g1 = random_field(rng, grid, 0.0, lambda);
        GridFunction g2 = g1;
        for (double& v : g2) v = std::min(lambda, v + uniform01(rng) * (lambda - v));
        comparison_check(grid, spec, p, g1, g2, lambda, cfg.solver);
    });
    check("sandwich bound along the epsilon schedule", [&] {
        const GridFunction gsrc = random_field(rng, grid, 0.0, lambda);
        epsilon_continuation(grid, spec, p, gsrc, lambda, cfg.solver);
    });
    check("monotone iteration to extremal steady states", [&] {
        SteadyStateConfig scfg;
        scfg.iter_tol = cfg.run.iter_tol;
        scfg.max_outer = cfg.run.max_outer;
        scfg.solver = cfg.solver;
        const SteadyStateReport rep = minimal_maximal_solutions(grid, src, spec, p, scfg);
        if (rep.fixed_point_residual_min > 1e-5 || rep.fixed_point_residual_max > 1e-5)
            throw PropertyViolation("fixed point residual too large");
    });

    std::printf(failures == 0 ? "verify: all checks passed\n"
                              : "verify: %d check(s) failed\n",
                failures);
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Variable-exponent multiple-phase Neumann elliptic solver"};
    app.require_subcommand(1);

    Common common;
    app.add_option("--config", common.config_path, "configuration file")->type_name("PATH");
    std::uint64_t seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value, "override the config seed");
    app.add_option("--out", common.out_dir, "output directory")->type_name("DIR");

    auto* solve = app.add_subcommand("solve-aux", "solve the auxiliary problem");
    std::string source_image, eps_flag, grid_flag, trace_path;
    double lambda_value = 0.0;
    auto* lambda_opt = solve->add_option("--lambda", lambda_value, "zeroth-order coefficient");
    solve->add_option("--eps-schedule", eps_flag, "space-separated schedule ending at 0");
    solve->add_option("--grid", grid_flag, "grid as NXxNY (unit square)");
    solve->add_option("--source-image", source_image, "PGM source, scaled by lambda");
    solve->add_option("--trace", trace_path, "CSV path for iter,energy,grad_residual");

    auto* denoise = app.add_subcommand("denoise", "evolve a noisy image to a steady state");
    std::string dn_input, dn_output = "denoised.pgm", dn_trace;
    double tau_value = 0.0;
    int steps_value = 0;
    denoise->add_option("--input", dn_input, "input PGM")->required();
    denoise->add_option("--output", dn_output, "output PGM");
    auto* tau_opt = denoise->add_option("--tau", tau_value, "time step");
    auto* steps_opt = denoise->add_option("--steps", steps_value, "max time steps");
    denoise->add_option("--trace", dn_trace, "CSV path for step,delta_max,energy");

    auto* steady = app.add_subcommand("steady-states", "minimal and maximal steady states");
    auto* verify = app.add_subcommand("verify", "run the property corpus");
    auto* norm = app.add_subcommand("norm", "modular and Luxemburg norm of a field");
    std::string norm_input, norm_profile;
    norm->add_option("--input", norm_input, "PGM image");
    norm->add_option("--profile", norm_profile, "analytic profile, e.g. \"linear-ramp 0 2\"");

    CLI11_PARSE(app, argc, argv);
    if (*seed_opt) common.seed = seed_value;

    try {
        if (*solve)
            return run_solve_aux(common, source_image,
                                 *lambda_opt ? std::optional<double>(lambda_value) : std::nullopt,
                                 eps_flag, grid_flag, trace_path);
        if (*denoise)
            return run_denoise(common, dn_input, dn_output,
                               *tau_opt ? std::optional<double>(tau_value) : std::nullopt,
                               *steps_opt ? std::optional<int>(steps_value) : std::nullopt,
                               dn_trace);
        if (*steady) return run_steady_states(common);
        if (*verify) return run_verify(common);
        if (*norm) return run_norm(common, norm_input, norm_profile);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
