#pragma once

#include <optional>
#include <vector>

#include "mphase/grid.hpp"

namespace mphase {

/// Logistic reaction family f(x,s) = alpha s^{q1(x)} (r(x) - kappa(x) s^{q2(x)})
/// on s in [0,1], with a numerically estimated Lipschitz constant gamma and a
/// monotonicity shift lambda0 > gamma. kappa is the second weight of the
/// family (a per-cell field, distinct from the flux exponent).
struct ReactionSource {
    double alpha = 1.0;
    std::vector<double> q1;    // >= 0 per cell; q1 = 0 admits constant recruitment
    std::vector<double> q2;    // >= 0 per cell
    std::vector<double> r;     // target weight
    std::vector<double> kappa; // saturation weight, admissible sources have r <= kappa
    double gamma = 0.0;        // Lipschitz constant of f(x,.) on [0,1]
    double lambda0 = 0.0;      // shift, > gamma
};

/// Builds the source and estimates gamma by dense sampling (1% safety factor,
/// floor 1e-8). lambda0 defaults to 2*gamma when not given. Shape constraints
/// (alpha > 0, q1 >= 1, q2 >= 0, kappa >= 0) are enforced here; the sign
/// conditions on f are checked separately by hypothesis_audit so that
/// inadmissible candidates can still be inspected.
ReactionSource make_reaction_source(const Grid& g, double alpha, std::vector<double> q1,
                                    std::vector<double> q2, std::vector<double> r,
                                    std::vector<double> kappa,
                                    std::optional<double> lambda0 = std::nullopt);

/// f(s) = alpha * c * s^a (b - s^c)-style source with all fields constant;
/// q1 = q2 = r = kappa = 1 and alpha = a gives f(s) = a s (1 - s).
ReactionSource constant_logistic(const Grid& g, double alpha,
                                 std::optional<double> lambda0 = std::nullopt);

/// f(x,s) for s in [0,1]; DomainError outside (use extend_fbar there).
double evaluate_f(const ReactionSource& src, int cell, double s);

/// Recomputes the sampled Lipschitz estimate from the stored fields.
double lipschitz_constant(const ReactionSource& src);

/// Lipschitz extension: f(x,0) + gamma*s below 0, f on [0,1],
/// f(x,1) - gamma*(s-1) above 1.
double extend_fbar(const ReactionSource& src, int cell, double s);

/// Primitive of the extension from 0: closed form of int_0^s f on [0,1],
/// f(x,0)s + gamma s^2/2 below 0, F(x,1) + f(x,1)(s-1) - gamma (s-1)^2/2
/// above 1.
double primitive_F(const ReactionSource& src, int cell, double s);

/// g_i = f(x_i, U_i) + lambda0 U_i for U in [0,1]; lands in [0, lambda0] for
/// admissible sources. BoxViolation if U leaves [0,1] by more than 1e-9.
GridFunction shifted_source(const Grid& g, const ReactionSource& src, const GridFunction& u);

struct HypothesisReport {
    double min_f0 = 0.0;       // min over cells of f(x,0)
    double max_f1 = 0.0;       // max over cells of f(x,1)
    double min_shift_gap = 0.0; // min sampled increment of f + lambda0 s
    double max_abs_f = 0.0;
    bool pass = false;
};

/// Checks f(x,0) >= 0 and f(x,1) <= 0 at all cells, sampled strict increase
/// of s -> f(x,s) + lambda0 s, and |f| <= gamma + sup |f(.,0)|. Throws
/// HypothesisViolation naming the failed condition.
HypothesisReport hypothesis_audit(const ReactionSource& src);

} // namespace mphase
