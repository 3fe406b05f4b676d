#include <doctest.h>

#include <cmath>
#include <random>

#include "mphase/random.hpp"
#include "mphase/reaction.hpp"

using namespace mphase;

namespace {

ReactionSource constant_source(const Grid& g, double alpha, double q1, double q2, double r,
                               double kappa, std::optional<double> lambda0 = std::nullopt) {
    const std::size_t n = static_cast<std::size_t>(g.cells());
    return make_reaction_source(g, alpha, std::vector<double>(n, q1), std::vector<double>(n, q2),
                                std::vector<double>(n, r), std::vector<double>(n, kappa), lambda0);
}

// Composite Simpson on [a,b]; the integrands below are smooth on each piece.
template <typename F>
double simpson(F&& f, double a, double b, int n = 4096) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

} // namespace

TEST_CASE("logistic values") {
    const Grid g = Grid::unit_square(2, 2);
    const ReactionSource src = constant_logistic(g, 1.0);
    CHECK(evaluate_f(src, 0, 0.0) == 0.0);
    CHECK(evaluate_f(src, 0, 1.0) == 0.0);
    CHECK(evaluate_f(src, 0, 0.5) == doctest::Approx(0.25));
    CHECK_THROWS_AS(evaluate_f(src, 0, 1.5), DomainError);
    CHECK_THROWS_AS(evaluate_f(src, 0, -0.2), DomainError);

    const ReactionSource decay = constant_source(g, 1.0, 1.0, 1.0, 0.0, 1.0);
    CHECK(evaluate_f(decay, 0, 0.0) == 0.0);
    for (double s : {0.2, 0.7, 1.0}) CHECK(evaluate_f(decay, 0, s) <= 0.0);
}

TEST_CASE("lipschitz estimate") {
    const Grid g = Grid::unit_square(2, 2);
    // sup |1 - 2s| = 1 on [0,1]; the estimate carries a 1% safety factor.
    const ReactionSource one = constant_logistic(g, 1.0);
    CHECK(one.gamma == doctest::Approx(1.0).epsilon(0.02));
    CHECK(one.lambda0 == doctest::Approx(2.0 * one.gamma));

    const ReactionSource two = constant_logistic(g, 2.0);
    CHECK(two.gamma == doctest::Approx(2.0).epsilon(0.02));

    // Vanishing source clamps to the floor.
    const ReactionSource zero = constant_source(g, 1.0, 1.0, 1.0, 0.0, 0.0);
    CHECK(zero.gamma == doctest::Approx(1e-8));

    CHECK(lipschitz_constant(one) == doctest::Approx(one.gamma));
}

TEST_CASE("lambda0 must dominate gamma") {
    const Grid g = Grid::unit_square(2, 2);
    CHECK_THROWS_AS(constant_logistic(g, 1.0, 0.5), DomainError);
    const ReactionSource src = constant_logistic(g, 1.0, 3.0);
    CHECK(src.lambda0 == 3.0);
}

TEST_CASE("lipschitz extension branches") {
    const Grid g = Grid::unit_square(2, 2);
    const ReactionSource src = constant_logistic(g, 1.0);
    CHECK(extend_fbar(src, 0, -0.5) == doctest::Approx(-0.5 * src.gamma));
    CHECK(extend_fbar(src, 0, 2.0) == doctest::Approx(-src.gamma));
    CHECK(extend_fbar(src, 0, 0.5) == doctest::Approx(evaluate_f(src, 0, 0.5)));
}

TEST_CASE("primitive closed forms") {
    const Grid g = Grid::unit_square(2, 2);
    const ReactionSource src = constant_logistic(g, 1.0);
    CHECK(primitive_F(src, 0, 0.0) == 0.0);
    CHECK(primitive_F(src, 0, 1.0) == doctest::Approx(1.0 / 6.0));

    // Outside [0,1] the primitive must agree with quadrature of the extension.
    for (double s : {-0.7, -0.1, 1.4, 2.5}) {
        double oracle;
        if (s < 0.0)
            oracle = -simpson([&](double t) { return extend_fbar(src, 0, t); }, s, 0.0);
        else
            oracle = primitive_F(src, 0, 1.0) +
                     simpson([&](double t) { return extend_fbar(src, 0, t); }, 1.0, s);
        CHECK(primitive_F(src, 0, s) == doctest::Approx(oracle).epsilon(1e-10));
    }

    // On [0,1] the closed form matches quadrature of f itself.
    for (double s : {0.3, 0.8}) {
        const double oracle = simpson([&](double t) { return evaluate_f(src, 0, t); }, 0.0, s);
        CHECK(primitive_F(src, 0, s) == doctest::Approx(oracle).epsilon(1e-10));
    }
}

TEST_CASE("shifted source lands in the admissible band") {
    const Grid g = Grid::unit_square(3, 3);
    const ReactionSource src = constant_logistic(g, 1.0, 2.0);
    const std::size_t n = static_cast<std::size_t>(g.cells());

    const GridFunction zero = shifted_source(g, src, GridFunction(n, 0.0));
    for (double v : zero) CHECK(v == 0.0);

    const GridFunction top = shifted_source(g, src, GridFunction(n, 1.0));
    for (double v : top) CHECK(v == doctest::Approx(2.0));

    const GridFunction mid = shifted_source(g, src, GridFunction(n, 0.5));
    for (double v : mid) {
        CHECK(v == doctest::Approx(1.25));
        CHECK(v >= 0.0);
        CHECK(v <= src.lambda0);
    }

    std::mt19937_64 rng(3);
    const GridFunction u = random_field(rng, g, 0.0, 1.0);
    for (double v : shifted_source(g, src, u)) {
        CHECK(v >= -1e-12);
        CHECK(v <= src.lambda0 + 1e-12);
    }

    CHECK_THROWS_AS(shifted_source(g, src, GridFunction(n, 1.1)), BoxViolation);
}

TEST_CASE("hypothesis audit") {
    const Grid g = Grid::unit_square(3, 3);
    CHECK(hypothesis_audit(constant_logistic(g, 1.0)).pass);
    CHECK(hypothesis_audit(constant_source(g, 1.0, 1.0, 1.0, 0.0, 0.0)).pass); // f = 0

    // r > kappa makes f(x,1) = alpha (r - kappa) > 0.
    const ReactionSource bad = constant_source(g, 1.0, 1.0, 1.0, 1.5, 1.0);
    CHECK_THROWS_AS(hypothesis_audit(bad), HypothesisViolation);
}

TEST_CASE("extension is globally gamma-Lipschitz and bounded") {
    const Grid g = Grid::unit_square(3, 3);
    std::mt19937_64 rng(7);
    const ReactionSource src = make_reaction_source(
        g, 1.3, random_field(rng, g, 1.0, 2.0), random_field(rng, g, 0.5, 2.0),
        random_field(rng, g, 0.2, 0.8), random_field(rng, g, 0.8, 1.5));
    double sup_f0 = 0.0;
    for (int c = 0; c < g.cells(); ++c)
        sup_f0 = std::max(sup_f0, std::abs(evaluate_f(src, c, 0.0)));
    for (int k = 0; k < 5000; ++k) {
        const int c = static_cast<int>(uniform01(rng) * g.cells()) % g.cells();
        const double s1 = uniform(rng, -3.0, 4.0);
        const double s2 = uniform(rng, -3.0, 4.0);
        const double lhs = std::abs(extend_fbar(src, c, s1) - extend_fbar(src, c, s2));
        CHECK(lhs <= src.gamma * std::abs(s1 - s2) * (1 + 1e-9) + 1e-12);
        CHECK(std::abs(extend_fbar(src, c, s1)) <= src.gamma * std::abs(s1) + sup_f0 + 1e-12);
    }
}

TEST_CASE("shifted extension stays strictly increasing") {
    const Grid g = Grid::unit_square(2, 2);
    const ReactionSource src = constant_logistic(g, 1.0);
    const double shift = 1.5 * src.gamma; // any shift above gamma works
    double prev = extend_fbar(src, 0, -2.0) + shift * -2.0;
    for (int k = 1; k <= 100; ++k) {
        const double s = -2.0 + 5.0 * k / 100.0;
        const double cur = extend_fbar(src, 0, s) + shift * s;
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("extension restricted to the unit interval is the primitive") {
    const Grid g = Grid::unit_square(2, 2);
    const ReactionSource src = constant_logistic(g, 2.0);
    for (int k = 0; k <= 10; ++k) {
        const double s = k / 10.0;
        CHECK(extend_fbar(src, 0, s) == evaluate_f(src, 0, s));
    }
}
