#include "mphase/phase_spec.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace mphase {

PhaseSpec make_phase_spec(std::vector<Phase> phases, const Grid& g) {
    if (phases.empty()) throw DomainError("phase spec needs at least one phase");
    const std::size_t n = static_cast<std::size_t>(g.cells());
    double omega = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < phases.size(); ++j) {
        if (phases[j].weight.size() != n || phases[j].exponent.values.size() != n)
            throw DomainError("phase " + std::to_string(j) + " fields must have one value per cell");
        for (double w : phases[j].weight) {
            if (!std::isfinite(w) || w <= 0.0)
                throw DomainError("phase weights must be strictly positive");
            omega = std::min(omega, w);
        }
    }
    std::vector<double> pmax(n);
    for (std::size_t i = 0; i < n; ++i) {
        double m = phases[0].exponent.values[i];
        for (std::size_t j = 1; j < phases.size(); ++j)
            m = std::max(m, phases[j].exponent.values[i]);
        pmax[i] = m;
    }
    PhaseSpec spec;
    spec.phases = std::move(phases);
    spec.omega = omega;
    spec.p_max = build_exponent_field(std::move(pmax), g);
    return spec;
}

PhaseSpec single_phase(const Grid& g, double weight, double exponent) {
    Phase ph;
    ph.weight.assign(static_cast<std::size_t>(g.cells()), weight);
    ph.exponent = constant_exponent(g, exponent);
    return make_phase_spec({std::move(ph)}, g);
}

CoercivityConstants coercivity_constants(const PhaseSpec& spec) {
    return {spec.omega / spec.p_max.p_plus, 0.0};
}

double psi(const PhaseSpec& spec, int cell, double s) {
    if (!(s > 0.0)) throw DomainError("psi requires s > 0");
    double v = 0.0;
    for (const Phase& ph : spec.phases)
        v += ph.weight[cell] * std::pow(s, ph.exponent.values[cell] - 2.0);
    return v;
}

double phi(const PhaseSpec& spec, int cell, double s) {
    const double a = std::abs(s);
    if (a == 0.0) return 0.0;
    double v = 0.0;
    for (const Phase& ph : spec.phases)
        v += ph.weight[cell] * std::pow(a, ph.exponent.values[cell] - 1.0);
    return v;
}

Vec2 flux(const PhaseSpec& spec, int cell, const Vec2& xi) {
    const double s = std::hypot(xi[0], xi[1]);
    if (s == 0.0) return {0.0, 0.0};
    // Psi(s) xi written as Phi(s) * (xi/s): the unit direction keeps the
    // evaluation finite for phases with p_j < 2 near xi = 0.
    const double m = phi(spec, cell, s);
    return {m * xi[0] / s, m * xi[1] / s};
}

double potential_scalar(const PhaseSpec& spec, int cell, double s) {
    const double a = std::abs(s);
    if (a == 0.0) return 0.0;
    double v = 0.0;
    for (const Phase& ph : spec.phases) {
        const double p = ph.exponent.values[cell];
        v += ph.weight[cell] * std::pow(a, p) / p;
    }
    return v;
}

double potential(const PhaseSpec& spec, int cell, const Vec2& xi) {
    return potential_scalar(spec, cell, std::hypot(xi[0], xi[1]));
}

double monotonicity_gap(const PhaseSpec& spec, int cell, const Vec2& xi1, const Vec2& xi2) {
    const Vec2 a1 = flux(spec, cell, xi1);
    const Vec2 a2 = flux(spec, cell, xi2);
    return (a1[0] - a2[0]) * (xi1[0] - xi2[0]) + (a1[1] - a2[1]) * (xi1[1] - xi2[1]);
}

std::pair<double, double> bregman_gap(const PhaseSpec& spec, int cell, const Vec2& xi1,
                                      const Vec2& xi2) {
    const double A1 = potential(spec, cell, xi1);
    const double A2 = potential(spec, cell, xi2);
    const Vec2 a1 = flux(spec, cell, xi1);
    const Vec2 a2 = flux(spec, cell, xi2);
    const double d0 = xi2[0] - xi1[0];
    const double d1 = xi2[1] - xi1[1];
    return {A2 - A1 - (a1[0] * d0 + a1[1] * d1), (a2[0] * d0 + a2[1] * d1) - A2 + A1};
}

GrowthBoundReport growth_bound_check(const PhaseSpec& spec, int samples, std::uint64_t seed) {
    GrowthBoundReport rep;
    rep.samples = samples;
    double wmax = 0.0;
    for (const Phase& ph : spec.phases)
        wmax = std::max(wmax, *std::max_element(ph.weight.begin(), ph.weight.end()));
    rep.a0 = rep.b = static_cast<double>(spec.phases.size()) * wmax;

    std::mt19937_64 rng(seed);
    const auto unit = [&rng] { return (rng() >> 11) * 0x1.0p-53; };
    const int cells = static_cast<int>(spec.p_max.values.size());
    for (int k = 0; k < samples; ++k) {
        const int cell = static_cast<int>(unit() * cells) % cells;
        const double mag = unit() * 1e3;
        const double ang = unit() * 6.283185307179586;
        const Vec2 v{mag * std::cos(ang), mag * std::sin(ang)};
        const Vec2 a = flux(spec, cell, v);
        const double lhs = std::hypot(a[0], a[1]);
        const double rhs = rep.a0 + rep.b * std::pow(mag, spec.p_max.values[cell] - 1.0);
        rep.max_ratio = std::max(rep.max_ratio, lhs / rhs);
        if (lhs > rhs * (1.0 + 1e-12))
            throw PropertyViolation("growth bound |a(x,v)| <= a0 + b|v|^{p-1} failed at cell " +
                                    std::to_string(cell) + ", |v| = " + std::to_string(mag));
    }
    rep.ok = true;
    return rep;
}

double flux_potential_consistency(const PhaseSpec& spec, int cell, const Vec2& xi, double h) {
    if (!(h > 0.0)) throw DomainError("flux_potential_consistency requires h > 0");
    const Vec2 a = flux(spec, cell, xi);
    double worst = 0.0;
    for (int k = 0; k < 2; ++k) {
        Vec2 up = xi, dn = xi;
        up[k] += h;
        dn[k] -= h;
        const double fd = (potential(spec, cell, up) - potential(spec, cell, dn)) / (2.0 * h);
        worst = std::max(worst, std::abs(fd - a[k]));
    }
    return worst;
}

} // namespace mphase
