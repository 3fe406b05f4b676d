#include "mphase/exponent_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mphase {

ExponentField build_exponent_field(std::vector<double> values, const Grid& g) {
    if (static_cast<int>(values.size()) != g.cells())
        throw ExponentOutOfRange("exponent field needs one value per cell");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double v = values[i];
        if (!std::isfinite(v) || v <= 1.0)
            throw ExponentOutOfRange("exponent value at cell " + std::to_string(i) +
                                     " outside (1, inf): " + std::to_string(v));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const int n = g.dim();
    const double floor = 2.0 * n / (n + 2.0);
    if (lo <= floor)
        throw ExponentOutOfRange("p_minus = " + std::to_string(lo) + " must exceed 2N/(N+2) = " +
                                 std::to_string(floor));
    ExponentField f;
    f.values = std::move(values);
    f.p_minus = lo;
    f.p_plus = hi;
    return f;
}

ExponentField constant_exponent(const Grid& g, double p) {
    return build_exponent_field(std::vector<double>(static_cast<std::size_t>(g.cells()), p), g);
}

ExponentField conjugate_exponent(const ExponentField& p, const Grid& g) {
    std::vector<double> out(p.values.size());
    for (std::size_t i = 0; i < p.values.size(); ++i) out[i] = p.values[i] / (p.values[i] - 1.0);
    return build_exponent_field(std::move(out), g);
}

std::vector<double> sobolev_critical(const ExponentField& p, int dimension) {
    std::vector<double> out(p.values.size());
    for (std::size_t i = 0; i < p.values.size(); ++i) {
        const double v = p.values[i];
        out[i] = (v < dimension) ? dimension * v / (dimension - v)
                                 : std::numeric_limits<double>::infinity();
    }
    return out;
}

double log_holder_estimate(const ExponentField& p, const Grid& g) {
    const int n = g.cells();
    if (n < 2) throw DomainError("log-Holder estimate needs at least 2 cells");
    double worst = 0.0;
    const double e = std::exp(1.0);
    for (int i = 0; i < n; ++i) {
        const auto ci = g.center(i);
        for (int j = i + 1; j < n; ++j) {
            const auto cj = g.center(j);
            const double dist = std::hypot(ci[0] - cj[0], ci[1] - cj[1]);
            worst = std::max(worst, std::abs(p.values[i] - p.values[j]) * std::log(e + 1.0 / dist));
        }
    }
    return worst;
}

} // namespace mphase
