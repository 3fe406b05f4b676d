#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "mphase/exponent_field.hpp"
#include "mphase/grid.hpp"

namespace mphase {

using Vec2 = std::array<double, 2>;

/// One power-law phase: per-cell weight w_j(x) and exponent p_j(x).
struct Phase {
    std::vector<double> weight;
    ExponentField exponent;
};

/// The multiple-phase flux family a(x,xi) = sum_j w_j(x) |xi|^{p_j(x)-2} xi,
/// with weights uniformly bounded below by omega > 0 and envelope exponent
/// p(x) = max_j p_j(x).
struct PhaseSpec {
    std::vector<Phase> phases;
    double omega = 0.0;
    ExponentField p_max;
};

PhaseSpec make_phase_spec(std::vector<Phase> phases, const Grid& g);

/// Single phase with constant weight and exponent; the workhorse for tests.
PhaseSpec single_phase(const Grid& g, double weight, double exponent);

struct CoercivityConstants {
    double delta = 0.0;
    double delta_tilde = 0.0;
};

/// delta = omega / p_plus of the envelope exponent, delta_tilde = 0.
CoercivityConstants coercivity_constants(const PhaseSpec& spec);

/// Psi(x,s) = sum_j w_j(x) s^{p_j(x)-2}, defined for s > 0 only.
double psi(const PhaseSpec& spec, int cell, double s);

/// Phi(x,s) = Psi(x,|s|)|s| extended by 0 at s = 0; continuous and strictly
/// increasing on [0, inf).
double phi(const PhaseSpec& spec, int cell, double s);

/// a(x,xi) = Psi(x,|xi|) xi for xi != 0, zero vector at xi = 0.
Vec2 flux(const PhaseSpec& spec, int cell, const Vec2& xi);

/// A(x,xi) = sum_j w_j(x) |xi|^{p_j(x)} / p_j(x).
double potential(const PhaseSpec& spec, int cell, const Vec2& xi);
/// A evaluated at magnitude s >= 0 (the radial profile of the potential).
double potential_scalar(const PhaseSpec& spec, int cell, double s);

/// (a(x,xi1) - a(x,xi2)) . (xi1 - xi2); nonnegative, zero only at xi1 = xi2.
double monotonicity_gap(const PhaseSpec& spec, int cell, const Vec2& xi1, const Vec2& xi2);

/// The two sides of the convexity inequality around the potential:
/// (A(xi2) - A(xi1) - a(xi1).(xi2-xi1), a(xi2).(xi2-xi1) - A(xi2) + A(xi1)).
/// Both components are nonnegative, zero only at xi1 = xi2.
std::pair<double, double> bregman_gap(const PhaseSpec& spec, int cell, const Vec2& xi1,
                                      const Vec2& xi2);

struct GrowthBoundReport {
    int samples = 0;
    double a0 = 0.0;
    double b = 0.0;
    double max_ratio = 0.0; // max of |a(x,v)| / (a0 + b |v|^{p(x)-1})
    bool ok = false;
};

/// Verifies |a(x,v)| <= a0 + b |v|^{p(x)-1} with the conservative constants
/// a0 = b = (number of phases) * max weight, over randomly sampled cells and
/// vectors with |v| in [0, 1e3]. Throws PropertyViolation on failure.
GrowthBoundReport growth_bound_check(const PhaseSpec& spec, int samples, std::uint64_t seed);

/// Max over coordinates of |central difference of A at step h - flux
/// component|. Decays like h^2 away from xi = 0.
double flux_potential_consistency(const PhaseSpec& spec, int cell, const Vec2& xi, double h);

} // namespace mphase
