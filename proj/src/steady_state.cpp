#include "mphase/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mphase {

GridFunction apply_K(const Grid& g, const ReactionSource& src, const PhaseSpec& spec,
                     const ExponentField& p, const GridFunction& u, const SolverConfig& cfg) {
    const GridFunction rhs = shifted_source(g, src, u);
    return solve_auxiliary(g, spec, p, rhs, src.lambda0, cfg).v;
}

double k_monotone_check(const Grid& g, const ReactionSource& src, const PhaseSpec& spec,
                        const ExponentField& p, const GridFunction& u1, const GridFunction& u2,
                        const SolverConfig& cfg) {
    for (std::size_t i = 0; i < u1.size(); ++i)
        if (u1[i] > u2[i] + 1e-12) throw DomainError("k_monotone_check requires u1 <= u2");
    const GridFunction v1 = apply_K(g, src, spec, p, u1, cfg);
    const GridFunction v2 = apply_K(g, src, spec, p, u2, cfg);
    double min_gap = v2[0] - v1[0];
    for (std::size_t i = 0; i < v1.size(); ++i) min_gap = std::min(min_gap, v2[i] - v1[i]);
    if (min_gap < -1e-7)
        throw PropertyViolation("K monotonicity violated by " + std::to_string(-min_gap));
    return min_gap;
}

double k_lipschitz_check(const Grid& g, const ReactionSource& src, const PhaseSpec& spec,
                         const ExponentField& p, const GridFunction& u1, const GridFunction& u2,
                         const SolverConfig& cfg) {
    const GridFunction v1 = apply_K(g, src, spec, p, u1, cfg);
    const GridFunction v2 = apply_K(g, src, spec, p, u2, cfg);
    GridFunction dv(v1.size()), du(u1.size());
    for (std::size_t i = 0; i < v1.size(); ++i) {
        dv[i] = v2[i] - v1[i];
        du[i] = u2[i] - u1[i];
    }
    const double lhs = l2_norm(g, dv);
    const double rhs = (1.0 + src.gamma / src.lambda0) * l2_norm(g, du);
    if (lhs > rhs + 1e-7)
        throw PropertyViolation("K Lipschitz bound violated: " + std::to_string(lhs) + " > " +
                                std::to_string(rhs));
    return l2_norm(g, du) > 0.0 ? lhs / l2_norm(g, du) : 0.0;
}

namespace {

struct MonotoneRun {
    GridFunction u;
    int iterations = 0;
    double fixed_point_residual = 0.0;
    double order_violation = 0.0;
    std::vector<std::array<double, 3>> trace;
};

MonotoneRun iterate_from(const Grid& g, const ReactionSource& src, const PhaseSpec& spec,
                         const ExponentField& p, double start, const SteadyStateConfig& cfg) {
    const bool descending = start > 0.5;
    MonotoneRun run;
    run.u.assign(static_cast<std::size_t>(g.cells()), start);
    for (int n = 1; n <= cfg.max_outer; ++n) {
        const GridFunction rhs = shifted_source(g, src, run.u);
        const SolveReport sol = solve_auxiliary(g, spec, p, rhs, src.lambda0, cfg.solver);
        double delta = 0.0, worst_order = 0.0;
        for (std::size_t i = 0; i < run.u.size(); ++i) {
            const double step = sol.v[i] - run.u[i];
            delta = std::max(delta, std::abs(step));
            // descending runs must not increase, ascending must not decrease
            worst_order = std::max(worst_order, descending ? step : -step);
        }
        run.order_violation = std::max(run.order_violation, worst_order);
        if (worst_order > 1e-7)
            throw MonotonicityViolation("iterate from " + std::to_string(start) +
                                        " broke ordering by " + std::to_string(worst_order) +
                                        " at outer step " + std::to_string(n));
        run.u = sol.v;
        run.iterations = n;
        run.trace.push_back({static_cast<double>(n), delta, sol.energy_final});
        if (delta <= cfg.iter_tol) {
            run.fixed_point_residual = max_abs_diff(apply_K(g, src, spec, p, run.u, cfg.solver),
                                                    run.u);
            return run;
        }
    }
    throw NoConvergence("monotone iteration from " + std::to_string(start) +
                            " did not settle in " + std::to_string(cfg.max_outer) + " steps",
                        cfg.max_outer, 0.0);
}

} // namespace

SteadyStateReport minimal_maximal_solutions(const Grid& g, const ReactionSource& src,
                                            const PhaseSpec& spec, const ExponentField& p,
                                            const SteadyStateConfig& cfg) {
    hypothesis_audit(src);
    MonotoneRun top = iterate_from(g, src, spec, p, 1.0, cfg);
    MonotoneRun bottom = iterate_from(g, src, spec, p, 0.0, cfg);

    SteadyStateReport rep;
    rep.u_max = std::move(top.u);
    rep.u_min = std::move(bottom.u);
    rep.iterations_max = top.iterations;
    rep.iterations_min = bottom.iterations;
    rep.fixed_point_residual_max = top.fixed_point_residual;
    rep.fixed_point_residual_min = bottom.fixed_point_residual;
    rep.order_violation_max = top.order_violation;
    rep.order_violation_min = bottom.order_violation;
    rep.trace_max = std::move(top.trace);
    rep.trace_min = std::move(bottom.trace);
    rep.monotone_ok = true;

    double spread = 0.0, order = 0.0;
    for (std::size_t i = 0; i < rep.u_min.size(); ++i) {
        spread = std::max(spread, std::abs(rep.u_max[i] - rep.u_min[i]));
        order = std::max(order, rep.u_min[i] - rep.u_max[i]);
    }
    if (order > 1e-6)
        throw MonotonicityViolation("minimal solution exceeded maximal solution by " +
                                    std::to_string(order));
    rep.unique = spread <= 10.0 * cfg.iter_tol;
    return rep;
}

void solution_sandwich_check(const Grid& g, const ReactionSource& src, const PhaseSpec& spec,
                             const ExponentField& p, const GridFunction& u_fixed,
                             const SteadyStateReport& rep, const SteadyStateConfig& cfg) {
    const double res = max_abs_diff(apply_K(g, src, spec, p, u_fixed, cfg.solver), u_fixed);
    if (res > 10.0 * std::max(cfg.iter_tol, 1e-9))
        throw DomainError("solution_sandwich_check: candidate is not a fixed point (residual " +
                          std::to_string(res) + ")");
    for (std::size_t i = 0; i < u_fixed.size(); ++i) {
        if (u_fixed[i] < rep.u_min[i] - 1e-6 || u_fixed[i] > rep.u_max[i] + 1e-6)
            throw PropertyViolation("fixed point escapes the [u_min, u_max] sandwich at cell " +
                                    std::to_string(i));
    }
}

double cross_identity_check(const Grid& g, const ReactionSource& src, const PhaseSpec& spec,
                            const ExponentField& p, const GridFunction& u1, const GridFunction& u2,
                            GradientModel model) {
    const EnergyModel em(g, spec, p, model);
    // <a(grad u2), grad u1> - <a(grad u1), grad u2> against the reaction side.
    const double lhs = dot_faces(g, em.flux_field(u2), gradient(g, u1)) -
                       dot_faces(g, em.flux_field(u1), gradient(g, u2));
    double rhs = 0.0;
    for (std::size_t i = 0; i < u1.size(); ++i) {
        const int c = static_cast<int>(i);
        rhs += evaluate_f(src, c, std::clamp(u2[i], 0.0, 1.0)) * u1[i] -
               evaluate_f(src, c, std::clamp(u1[i], 0.0, 1.0)) * u2[i];
    }
    rhs *= g.cell_measure();
    return std::abs(lhs - rhs);
}

GridFunction rothe_step(const Grid& g, const ReactionSource& src, const PhaseSpec& spec,
                        const ExponentField& p, const GridFunction& u_k, double tau,
                        const SolverConfig& cfg) {
    if (!(tau > 0.0)) throw DomainError("rothe_step requires tau > 0");
    const double lambda = src.lambda0 + 1.0 / tau;
    GridFunction rhs = shifted_source(g, src, u_k);
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += std::clamp(u_k[i], 0.0, 1.0) / tau;
    return solve_auxiliary(g, spec, p, rhs, lambda, cfg).v;
}

RotheTrajectory evolve(const Grid& g, const ReactionSource& src, const PhaseSpec& spec,
                       const ExponentField& p, const GridFunction& u0, double tau, int max_steps,
                       double steady_tol, const SolverConfig& cfg) {
    RotheTrajectory traj;
    traj.tau = tau;
    traj.states.push_back(u0);
    const EnergyModel em(g, spec, p, cfg.gradient_model);

    for (int k = 0; k < max_steps; ++k) {
        const GridFunction& prev = traj.states.back();
        GridFunction next = rothe_step(g, src, spec, p, prev, tau, cfg);
        const double viol = box_violation(next, 0.0, 1.0);
        if (viol > 1e-5)
            throw NoConvergence("evolve: state left [0,1] by " + std::to_string(viol) +
                                    " at step " + std::to_string(k + 1),
                                k + 1, viol);
        const double delta = max_abs_diff(next, prev);
        traj.residuals.push_back(delta);
        const double energy_now = em.energy(next, shifted_source(g, src, prev), src.lambda0, 0.0);
        traj.trace.push_back({static_cast<double>(k + 1), delta, energy_now});
        traj.states.push_back(std::move(next));
        if (delta <= steady_tol * tau) {
            traj.steady = true;
            break;
        }
    }

    const GridFunction& last = traj.states.back();
    GridFunction op = em.apply_flux_operator(last);
    double res = 0.0;
    for (std::size_t i = 0; i < op.size(); ++i)
        res = std::max(res, std::abs(op[i] - evaluate_f(src, static_cast<int>(i),
                                                        std::clamp(last[i], 0.0, 1.0))));
    traj.steady_residual = res;
    return traj;
}

} // namespace mphase
