#pragma once

#include <utility>

#include "mphase/exponent_field.hpp"
#include "mphase/grid.hpp"

namespace mphase {

struct ModularReport {
    double modular_value = 0.0;
    double luxemburg_norm = 0.0;
    int bisection_iters = 0;
};

/// rho(u) = sum over cells of |u_i|^{p_i} * cell_measure.
double modular(const Grid& g, const GridFunction& u, const ExponentField& p);

/// The unique a > 0 with rho(u/a) = 1, found by bisection on the strictly
/// decreasing map a -> rho(u/a); 0 for u = 0. Throws BisectionBracketFailure
/// when no valid bracket exists (non-finite input).
ModularReport luxemburg_norm(const Grid& g, const GridFunction& u, const ExponentField& p);

/// rho(u) + rho(|grad u|) with the per-cell face-gradient magnitude field.
double sobolev_modular(const Grid& g, const GridFunction& u, const ExponentField& p);

struct ModularSuiteReport {
    double modular_value = 0.0;
    double norm = 0.0;
    bool norm_above_one = false;
    double pairing_lhs = 0.0;
    double pairing_rhs = 0.0;
    bool pass = false;
};

/// Checks the norm-modular inequalities for the computed Luxemburg norm on
/// whichever branch ||u|| > 1 or ||u|| < 1 applies, plus the Holder pairing
/// against a supplied v. Throws PropertyViolation naming the failed item.
ModularSuiteReport modular_property_suite(const Grid& g, const GridFunction& u,
                                          const ExponentField& p, const GridFunction& v);

/// u = u_plus - u_minus with u_plus*u_minus = 0 and |u| = u_plus + u_minus.
std::pair<GridFunction, GridFunction> positive_negative_split(const GridFunction& u);

} // namespace mphase
