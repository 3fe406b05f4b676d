#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "mphase/energy.hpp"
#include "mphase/exponent_field.hpp"
#include "mphase/grid.hpp"
#include "mphase/phase_spec.hpp"

namespace mphase {

struct SolverConfig {
    double grad_tol = 1e-9; // on the max norm of the gradient per unit measure
    int max_iters = 20000;
    double armijo_c = 1e-4;
    double step_init = 1.0;
    std::vector<double> epsilon_schedule = {1e-2, 1e-3, 1e-4, 0.0};
    GradientModel gradient_model = GradientModel::Face;
    bool record_trace = false;
};

struct SandwichData {
    double m_box = 0.0;                                // energy of the eps = 0 minimizer
    std::vector<std::pair<double, double>> mins_per_eps; // (eps, min J_{lambda,eps})
    bool bound_ok = false;
};

struct SolveReport {
    GridFunction v;
    double energy_final = 0.0;
    double grad_residual = 0.0;
    int iters = 0;
    double box_violation = 0.0; // max distance of v from [0,1], reported as-is
    std::optional<SandwichData> sandwich;
    std::vector<std::array<double, 3>> trace; // iter, energy, residual
};

/// Minimizes the strictly convex discrete energy by gradient descent with
/// Barzilai-Borwein steps safeguarded by Armijo backtracking. Iterate
/// energies are non-increasing. Throws NoConvergence when max_iters is hit.
SolveReport minimize(const Grid& g, const PhaseSpec& spec, const ExponentField& p,
                     const GridFunction& source, double lambda, double eps,
                     const GridFunction& v0, const SolverConfig& cfg);

/// Solves the eps = 0 problem for source g in [0, lambda]. The minimizer
/// lands in [0,1] without any projection; a box violation above 1e-6 is a
/// bug and throws BoxViolation. MembershipError if g is not in [0, lambda].
SolveReport solve_auxiliary(const Grid& g, const PhaseSpec& spec, const ExponentField& p,
                            const GridFunction& source, double lambda, const SolverConfig& cfg);

/// Warm-started solves along cfg.epsilon_schedule (non-increasing, last entry
/// zero). Records min J_{lambda,eps} per entry and checks
///   m_box <= min J_{lambda,eps} <= m_box + eps |Omega| / p_minus
/// where m_box is the final (eps = 0) minimum. Throws SandwichViolation.
SolveReport epsilon_continuation(const Grid& g, const PhaseSpec& spec, const ExponentField& p,
                                 const GridFunction& source, double lambda,
                                 const SolverConfig& cfg);

struct GammaConvergenceReport {
    std::vector<double> gaps; // |J_{lambda,eps_n}(V_n) - J_lambda(V)|
    bool pass = false;
};

/// Asserts the energy gaps shrink to zero (monotonically up to tolerance)
/// along a sequence V_n -> v_limit, eps_n -> 0. Throws PropertyViolation.
GammaConvergenceReport gamma_convergence_check(const Grid& g, const PhaseSpec& spec,
                                               const ExponentField& p, const GridFunction& source,
                                               double lambda,
                                               const std::vector<GridFunction>& v_seq,
                                               const std::vector<double>& eps_seq,
                                               const GridFunction& v_limit,
                                               GradientModel model = GradientModel::Face);

enum class MinimumPrincipleCase { NonNegative, ConstantNegative };

/// Certifies that u, a weak solution of -div a(x,grad u) + c u = rhs with
/// rhs >= 0, is either nonnegative (case 1) or a negative constant with
/// c identically zero (case 2). Any other outcome throws PrincipleViolation
/// naming the offending cell.
MinimumPrincipleCase minimum_principle_check(const Grid& g, const PhaseSpec& spec,
                                             const ExponentField& p, const GridFunction& c,
                                             const GridFunction& u, const GridFunction& rhs,
                                             GradientModel model = GradientModel::Face);

struct ComparisonReport {
    GridFunction v1, v2;
    double min_gap = 0.0; // min over cells of v2 - v1
};

/// Solves both problems for ordered sources g1 <= g2 in [0, lambda] and
/// asserts v2 >= v1 - 1e-7 pointwise. Throws PrincipleViolation.
ComparisonReport comparison_check(const Grid& g, const PhaseSpec& spec, const ExponentField& p,
                                  const GridFunction& g1, const GridFunction& g2, double lambda,
                                  const SolverConfig& cfg);

} // namespace mphase
