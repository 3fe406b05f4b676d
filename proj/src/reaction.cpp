#include "mphase/reaction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mphase {

namespace {

double f_raw(const ReactionSource& src, int cell, double s) {
    return src.alpha * std::pow(s, src.q1[cell]) *
           (src.r[cell] - src.kappa[cell] * std::pow(s, src.q2[cell]));
}

constexpr int kLipschitzSamples = 10000;
constexpr double kGammaFloor = 1e-8;

double estimate_gamma(const ReactionSource& src) {
    // Max difference quotient over adjacent samples of a dense s-grid,
    // skipping cells whose parameter tuple was already seen.
    std::vector<std::size_t> reps;
    for (std::size_t i = 0; i < src.q1.size(); ++i) {
        bool seen = false;
        for (std::size_t j : reps) {
            if (src.q1[i] == src.q1[j] && src.q2[i] == src.q2[j] && src.r[i] == src.r[j] &&
                src.kappa[i] == src.kappa[j]) {
                seen = true;
                break;
            }
        }
        if (!seen) reps.push_back(i);
    }
    const double ds = 1.0 / (kLipschitzSamples - 1);
    double worst = 0.0;
    for (std::size_t cell : reps) {
        double prev = f_raw(src, static_cast<int>(cell), 0.0);
        for (int k = 1; k < kLipschitzSamples; ++k) {
            const double cur = f_raw(src, static_cast<int>(cell), k * ds);
            worst = std::max(worst, std::abs(cur - prev) / ds);
            prev = cur;
        }
    }
    return std::max(1.01 * worst, kGammaFloor);
}

} // namespace

ReactionSource make_reaction_source(const Grid& g, double alpha, std::vector<double> q1,
                                    std::vector<double> q2, std::vector<double> r,
                                    std::vector<double> kappa, std::optional<double> lambda0) {
    const std::size_t n = static_cast<std::size_t>(g.cells());
    if (q1.size() != n || q2.size() != n || r.size() != n || kappa.size() != n)
        throw DomainError("reaction fields must have one value per cell");
    if (!(alpha > 0.0)) throw DomainError("reaction alpha must be positive");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(q1[i] >= 0.0)) throw DomainError("reaction exponent q1 must be >= 0");
        if (!(q2[i] >= 0.0)) throw DomainError("reaction exponent q2 must be >= 0");
        if (!(kappa[i] >= 0.0)) throw DomainError("reaction weight kappa must be >= 0");
        if (!std::isfinite(r[i])) throw DomainError("reaction weight r must be finite");
    }
    ReactionSource src;
    src.alpha = alpha;
    src.q1 = std::move(q1);
    src.q2 = std::move(q2);
    src.r = std::move(r);
    src.kappa = std::move(kappa);
    src.gamma = estimate_gamma(src);
    if (lambda0) {
        if (!(*lambda0 > src.gamma))
            throw DomainError("lambda0 = " + std::to_string(*lambda0) +
                              " must exceed gamma = " + std::to_string(src.gamma));
        src.lambda0 = *lambda0;
    } else {
        src.lambda0 = 2.0 * src.gamma;
    }
    return src;
}

ReactionSource constant_logistic(const Grid& g, double alpha, std::optional<double> lambda0) {
    const std::size_t n = static_cast<std::size_t>(g.cells());
    return make_reaction_source(g, alpha, std::vector<double>(n, 1.0), std::vector<double>(n, 1.0),
                                std::vector<double>(n, 1.0), std::vector<double>(n, 1.0), lambda0);
}

double evaluate_f(const ReactionSource& src, int cell, double s) {
    if (s < -1e-12 || s > 1.0 + 1e-12)
        throw DomainError("evaluate_f: s = " + std::to_string(s) + " outside [0,1]");
    return f_raw(src, cell, std::clamp(s, 0.0, 1.0));
}

double lipschitz_constant(const ReactionSource& src) { return estimate_gamma(src); }

double extend_fbar(const ReactionSource& src, int cell, double s) {
    if (s < 0.0) return f_raw(src, cell, 0.0) + src.gamma * s;
    if (s > 1.0) return f_raw(src, cell, 1.0) - src.gamma * (s - 1.0);
    return f_raw(src, cell, s);
}

double primitive_F(const ReactionSource& src, int cell, double s) {
    const auto on_unit = [&](double t) {
        const double e1 = src.q1[cell] + 1.0;
        const double e2 = src.q1[cell] + src.q2[cell] + 1.0;
        return src.alpha *
               (src.r[cell] * std::pow(t, e1) / e1 - src.kappa[cell] * std::pow(t, e2) / e2);
    };
    if (s < 0.0) return f_raw(src, cell, 0.0) * s + 0.5 * src.gamma * s * s;
    if (s > 1.0)
        return on_unit(1.0) + f_raw(src, cell, 1.0) * (s - 1.0) -
               0.5 * src.gamma * (s - 1.0) * (s - 1.0);
    return on_unit(s);
}

GridFunction shifted_source(const Grid& g, const ReactionSource& src, const GridFunction& u) {
    if (u.size() != static_cast<std::size_t>(g.cells()))
        throw DomainError("shifted_source: field size mismatch");
    const double viol = box_violation(u, 0.0, 1.0);
    if (viol > 1e-9)
        throw BoxViolation("shifted_source: state leaves [0,1] by " + std::to_string(viol), viol);
    GridFunction out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double s = std::clamp(u[i], 0.0, 1.0);
        out[i] = f_raw(src, static_cast<int>(i), s) + src.lambda0 * s;
    }
    return out;
}

HypothesisReport hypothesis_audit(const ReactionSource& src) {
    HypothesisReport rep;
    rep.min_f0 = std::numeric_limits<double>::infinity();
    rep.max_f1 = -std::numeric_limits<double>::infinity();
    rep.min_shift_gap = std::numeric_limits<double>::infinity();

    const int cells = static_cast<int>(src.q1.size());
    double sup_f0 = 0.0;
    for (int c = 0; c < cells; ++c) {
        const double f0 = f_raw(src, c, 0.0);
        const double f1 = f_raw(src, c, 1.0);
        rep.min_f0 = std::min(rep.min_f0, f0);
        rep.max_f1 = std::max(rep.max_f1, f1);
        sup_f0 = std::max(sup_f0, std::abs(f0));
        if (f0 < -1e-12)
            throw HypothesisViolation("(H10) failed: f(x,0) = " + std::to_string(f0) + " at cell " +
                                      std::to_string(c));
        if (f1 > 1e-12)
            throw HypothesisViolation("(H10) failed: f(x,1) = " + std::to_string(f1) + " at cell " +
                                      std::to_string(c));
    }
    const int S = 101;
    for (int c = 0; c < cells; ++c) {
        double prev = f_raw(src, c, 0.0);
        for (int k = 1; k < S; ++k) {
            const double s = static_cast<double>(k) / (S - 1);
            const double cur = f_raw(src, c, s);
            rep.max_abs_f = std::max(rep.max_abs_f, std::abs(cur));
            const double gap = (cur + src.lambda0 * s) - (prev + src.lambda0 * (s - 1.0 / (S - 1)));
            rep.min_shift_gap = std::min(rep.min_shift_gap, gap);
            if (gap <= 0.0)
                throw HypothesisViolation("(H11) failed: f + lambda0*s not increasing at cell " +
                                          std::to_string(c) + " near s = " + std::to_string(s));
            prev = cur;
        }
    }
    const double bound = src.gamma + sup_f0;
    if (rep.max_abs_f > bound + 1e-12)
        throw HypothesisViolation("|f| bound gamma + sup|f(.,0)| failed: " +
                                  std::to_string(rep.max_abs_f) + " > " + std::to_string(bound));
    rep.pass = true;
    return rep;
}

} // namespace mphase
