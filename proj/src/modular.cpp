#include "mphase/modular.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace mphase {

double modular(const Grid& g, const GridFunction& u, const ExponentField& p) {
    if (u.size() != p.values.size()) throw DomainError("modular: field/exponent size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += std::pow(std::abs(u[i]), p.values[i]);
    return s * g.cell_measure();
}

namespace {

double scaled_modular(const Grid& g, const GridFunction& u, const ExponentField& p, double a) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += std::pow(std::abs(u[i]) / a, p.values[i]);
    return s * g.cell_measure();
}

} // namespace

ModularReport luxemburg_norm(const Grid& g, const GridFunction& u, const ExponentField& p) {
    ModularReport rep;
    rep.modular_value = modular(g, u, p);
    if (rep.modular_value == 0.0) return rep;
    if (!std::isfinite(rep.modular_value))
        throw BisectionBracketFailure("luxemburg_norm: modular is not finite");

    const double rho = rep.modular_value;
    // Analytic bracket: rho >= 1 puts the norm in [rho^{1/p+}, rho^{1/p-}],
    // rho < 1 mirrors the exponents.
    double lo, hi;
    if (rho >= 1.0) {
        lo = std::pow(rho, 1.0 / p.p_plus) * (1.0 - 1e-14);
        hi = std::pow(rho, 1.0 / p.p_minus) + 1.0;
    } else {
        lo = std::pow(rho, 1.0 / p.p_minus) * (1.0 - 1e-14);
        hi = std::pow(rho, 1.0 / p.p_plus) + 1.0;
    }
    int expand = 0;
    while (scaled_modular(g, u, p, lo) < 1.0 && expand < 128) {
        lo *= 0.5;
        ++expand;
    }
    while (scaled_modular(g, u, p, hi) > 1.0 && expand < 256) {
        hi *= 2.0;
        ++expand;
    }
    if (expand >= 128 || !(lo > 0.0) || !std::isfinite(hi) ||
        scaled_modular(g, u, p, lo) < 1.0 || scaled_modular(g, u, p, hi) > 1.0)
        throw BisectionBracketFailure("luxemburg_norm: bracket expansion failed");

    int iters = 0;
    double mid = 0.5 * (lo + hi);
    while (iters < 200) {
        mid = 0.5 * (lo + hi);
        const double v = scaled_modular(g, u, p, mid);
        ++iters;
        if (std::abs(v - 1.0) <= 1e-12) break;
        if (v > 1.0)
            lo = mid;
        else
            hi = mid;
        if ((hi - lo) <= 1e-15 * mid) break;
    }
    rep.luxemburg_norm = mid;
    rep.bisection_iters = iters;
    return rep;
}

double sobolev_modular(const Grid& g, const GridFunction& u, const ExponentField& p) {
    return modular(g, u, p) + modular(g, gradient_magnitude(g, u), p);
}

namespace {

void require(bool ok, const std::string& item) {
    if (!ok) throw PropertyViolation("modular property " + item + " failed");
}

} // namespace

ModularSuiteReport modular_property_suite(const Grid& g, const GridFunction& u,
                                          const ExponentField& p, const GridFunction& v) {
    const ModularReport r = luxemburg_norm(g, u, p);
    if (r.luxemburg_norm == 0.0) throw DomainError("modular_property_suite needs u != 0");

    ModularSuiteReport rep;
    rep.modular_value = r.modular_value;
    rep.norm = r.luxemburg_norm;
    rep.norm_above_one = r.luxemburg_norm > 1.0;

    const double rho = r.modular_value;
    const double a = r.luxemburg_norm;
    const double tol = 1e-9 * std::max(1.0, rho);

    // (1): rho(u/||u||) = 1 for the computed norm.
    {
        GridFunction w(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) w[i] = u[i] / a;
        require(std::abs(modular(g, w, p) - 1.0) <= 1e-9, "(1)");
    }
    // (2): ||u|| = 1 <=> rho(u) = 1.
    if (std::abs(a - 1.0) <= 1e-12) require(std::abs(rho - 1.0) <= 1e-9, "(2)");
    if (std::abs(rho - 1.0) <= 1e-12) require(std::abs(a - 1.0) <= 1e-9, "(2)");
    // (3)/(4): sign of ||u|| - 1 matches sign of rho - 1.
    if (a > 1.0 + 1e-12) require(rho > 1.0 - tol, "(3)");
    if (a < 1.0 - 1e-12) require(rho < 1.0 + tol, "(4)");
    // (5)/(22) on the ||u|| > 1 branch, (6)/(23) on the ||u|| < 1 branch.
    if (a > 1.0 + 1e-12) {
        require(std::pow(a, p.p_minus) <= rho + tol, "(5)");
        require(rho <= std::pow(a, p.p_plus) + tol, "(5)");
        require(std::pow(rho, 1.0 / p.p_plus) <= a + tol, "(22)");
        require(a <= std::pow(rho, 1.0 / p.p_minus) + tol, "(22)");
    } else if (a < 1.0 - 1e-12) {
        require(std::pow(a, p.p_plus) <= rho + tol, "(6)");
        require(rho <= std::pow(a, p.p_minus) + tol, "(6)");
        require(std::pow(rho, 1.0 / p.p_plus) >= a - tol, "(23)");
        require(a >= std::pow(rho, 1.0 / p.p_minus) - tol, "(23)");
    }
    // (25): the modular and the norm sit on the same side of 1.
    if (a <= 1.0) require(rho <= a + tol, "(25)");
    if (a >= 1.0) require(rho >= a - tol, "(25)");

    // Holder pairing against the conjugate exponent.
    {
        const ExponentField pc = conjugate_exponent(p, g);
        const ModularReport rv = luxemburg_norm(g, v, pc);
        double lhs = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) lhs += std::abs(u[i] * v[i]);
        lhs *= g.cell_measure();
        const double rhs = 2.0 * a * rv.luxemburg_norm;
        rep.pairing_lhs = lhs;
        rep.pairing_rhs = rhs;
        require(lhs <= rhs + 1e-9 * std::max(1.0, rhs), "Holder pairing");
    }

    rep.pass = true;
    return rep;
}

std::pair<GridFunction, GridFunction> positive_negative_split(const GridFunction& u) {
    GridFunction plus(u.size()), minus(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        plus[i] = u[i] > 0.0 ? u[i] : 0.0;
        minus[i] = u[i] < 0.0 ? -u[i] : 0.0;
    }
    return {std::move(plus), std::move(minus)};
}

} // namespace mphase
