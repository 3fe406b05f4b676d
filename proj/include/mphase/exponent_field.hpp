#pragma once

#include <vector>

#include "mphase/grid.hpp"

namespace mphase {

/// Variable exponent p(x) sampled at cell centers, with its range cached.
/// Valid fields satisfy 1 < p(x) everywhere and p_minus > 2N/(N+2) for the
/// grid dimension N, which keeps the L2 embedding available.
struct ExponentField {
    std::vector<double> values;
    double p_minus = 0.0;
    double p_plus = 0.0;
};

ExponentField build_exponent_field(std::vector<double> values, const Grid& g);
ExponentField constant_exponent(const Grid& g, double p);

/// Pointwise conjugate p'(x) = p(x)/(p(x)-1). Involutive.
ExponentField conjugate_exponent(const ExponentField& p, const Grid& g);

/// Pointwise critical exponent: N p(x)/(N - p(x)) where p(x) < N, +inf otherwise.
std::vector<double> sobolev_critical(const ExponentField& p, int dimension);

/// Diagnostic only: max over distinct cell pairs of
/// |p(x)-p(y)| * log(e + 1/|x-y|). Never an error.
double log_holder_estimate(const ExponentField& p, const Grid& g);

} // namespace mphase
