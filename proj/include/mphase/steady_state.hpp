#pragma once

#include <array>
#include <vector>

#include "mphase/reaction.hpp"
#include "mphase/solver.hpp"

namespace mphase {

struct SteadyStateConfig {
    double iter_tol = 1e-6; // outer stop on the max-norm step
    int max_outer = 500;
    SolverConfig solver; // inner solves; defaults keep grad_tol well below iter_tol
};

struct SteadyStateReport {
    GridFunction u_min, u_max;
    int iterations_min = 0, iterations_max = 0;
    bool monotone_ok = false;
    double fixed_point_residual_min = 0.0, fixed_point_residual_max = 0.0;
    // Worst per-step breach of the one-sided ordering (0 when perfectly monotone).
    double order_violation_min = 0.0, order_violation_max = 0.0;
    bool unique = false; // ||u_max - u_min|| below 10 * iter_tol
    // Outer iteration history: (step, delta_max, energy of the inner solve).
    std::vector<std::array<double, 3>> trace_min, trace_max;
};

/// K(U) = the unique solution of -div a(x,grad V) + lambda0 V = f(x,U) + lambda0 U.
/// Maps [0,1] into [0,1].
GridFunction apply_K(const Grid& g, const ReactionSource& src, const PhaseSpec& spec,
                     const ExponentField& p, const GridFunction& u, const SolverConfig& cfg);

/// Asserts K(u1) <= K(u2) + 1e-7 pointwise for ordered inputs.
/// Returns the minimum of K(u2) - K(u1). Throws PropertyViolation.
double k_monotone_check(const Grid& g, const ReactionSource& src, const PhaseSpec& spec,
                        const ExponentField& p, const GridFunction& u1, const GridFunction& u2,
                        const SolverConfig& cfg);

/// Asserts ||K(u2) - K(u1)||_2 <= (1 + gamma/lambda0) ||u2 - u1||_2 + 1e-7.
/// Returns the realized ratio (0 when u1 = u2). Throws PropertyViolation.
double k_lipschitz_check(const Grid& g, const ReactionSource& src, const PhaseSpec& spec,
                         const ExponentField& p, const GridFunction& u1, const GridFunction& u2,
                         const SolverConfig& cfg);

/// Monotone iteration U_{n+1} = K(U_n) from the supersolution 1 (non-increasing,
/// limit u_max) and the subsolution 0 (non-decreasing, limit u_min). Stops when
/// the step falls below iter_tol; throws NoConvergence past max_outer and
/// MonotonicityViolation when a step breaks ordering by more than 1e-7.
SteadyStateReport minimal_maximal_solutions(const Grid& g, const ReactionSource& src,
                                            const PhaseSpec& spec, const ExponentField& p,
                                            const SteadyStateConfig& cfg);

/// Asserts u_min - 1e-6 <= u_fixed <= u_max + 1e-6 for a verified fixed point.
void solution_sandwich_check(const Grid& g, const ReactionSource& src, const PhaseSpec& spec,
                             const ExponentField& p, const GridFunction& u_fixed,
                             const SteadyStateReport& rep, const SteadyStateConfig& cfg);

/// |int (Psi(|grad u2|) - Psi(|grad u1|)) grad u2 . grad u1
///  - int (f(x,u2) u1 - f(x,u1) u2)| for two fixed points; vanishes up to the
/// fixed-point residuals.
double cross_identity_check(const Grid& g, const ReactionSource& src, const PhaseSpec& spec,
                            const ExponentField& p, const GridFunction& u1, const GridFunction& u2,
                            GradientModel model = GradientModel::Face);

/// One implicit time step: solves the auxiliary problem with
/// lambda = lambda0 + 1/tau and source f(x,u_k) + lambda0 u_k + u_k/tau,
/// which stays in [0, lambda] for u_k in [0,1].
GridFunction rothe_step(const Grid& g, const ReactionSource& src, const PhaseSpec& spec,
                        const ExponentField& p, const GridFunction& u_k, double tau,
                        const SolverConfig& cfg);

struct RotheTrajectory {
    std::vector<GridFunction> states; // includes the initial state
    double tau = 0.0;
    bool steady = false;
    std::vector<double> residuals;  // max-norm steps per time step
    double steady_residual = 0.0;   // ||-div a(grad u) - f(x,u)|| of the final state
    std::vector<std::array<double, 3>> trace; // step, delta_max, energy
};

/// Implicit time stepping from u0 until the step falls below steady_tol * tau
/// or max_steps. Every state stays in [0,1]; leaving the box by more than
/// 1e-5 throws NoConvergence (each step is box-preserving by construction).
RotheTrajectory evolve(const Grid& g, const ReactionSource& src, const PhaseSpec& spec,
                       const ExponentField& p, const GridFunction& u0, double tau, int max_steps,
                       double steady_tol, const SolverConfig& cfg);

} // namespace mphase
