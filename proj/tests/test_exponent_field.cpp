#include <doctest.h>

#include <cmath>

#include "mphase/exponent_field.hpp"
#include "mphase/random.hpp"

using namespace mphase;

TEST_CASE("constant field has trivial range") {
    const Grid g = Grid::unit_square(4, 4);
    const ExponentField p = constant_exponent(g, 2.0);
    CHECK(p.p_minus == 2.0);
    CHECK(p.p_plus == 2.0);
}

TEST_CASE("range of a two-value field") {
    const Grid g(2, 1, 0.5, 1.0);
    const ExponentField p = build_exponent_field({1.5, 3.0}, g);
    CHECK(p.p_minus == 1.5);
    CHECK(p.p_plus == 3.0);
}

TEST_CASE("values at or below one are rejected") {
    const Grid g(2, 1, 0.5, 1.0);
    CHECK_THROWS_AS(build_exponent_field({1.0, 2.0}, g), ExponentOutOfRange);
    CHECK_THROWS_AS(build_exponent_field({0.5, 2.0}, g), ExponentOutOfRange);
    CHECK_THROWS_AS(build_exponent_field({2.0}, g), ExponentOutOfRange); // wrong size
}

TEST_CASE("conjugate exponent") {
    const Grid g = Grid::unit_square(3, 3);
    CHECK(conjugate_exponent(constant_exponent(g, 2.0), g).values[0] == doctest::Approx(2.0));
    CHECK(conjugate_exponent(constant_exponent(g, 3.0), g).values[0] == doctest::Approx(1.5));
    CHECK(conjugate_exponent(constant_exponent(g, 1.5), g).values[0] == doctest::Approx(3.0));
}

TEST_CASE("conjugate is an involution and pairs to one") {
    std::mt19937_64 rng(5);
    const Grid g = Grid::unit_square(6, 6);
    const ExponentField p = build_exponent_field(random_field(rng, g, 1.2, 4.0), g);
    const ExponentField pc = conjugate_exponent(p, g);
    const ExponentField pcc = conjugate_exponent(pc, g);
    for (int i = 0; i < g.cells(); ++i) {
        CHECK(pcc.values[i] == doctest::Approx(p.values[i]).epsilon(1e-13));
        CHECK(1.0 / p.values[i] + 1.0 / pc.values[i] == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("critical exponent branches") {
    const Grid g = Grid::unit_square(3, 3);
    const ExponentField p2 = constant_exponent(g, 2.0);
    CHECK(std::isinf(sobolev_critical(p2, 2)[0]));
    CHECK(sobolev_critical(p2, 3)[0] == doctest::Approx(6.0));
    CHECK(sobolev_critical(constant_exponent(g, 1.5), 2)[0] == doctest::Approx(6.0));
}

TEST_CASE("critical exponent exceeds two in the plane") {
    std::mt19937_64 rng(9);
    const Grid g = Grid::unit_square(5, 5);
    const ExponentField p = build_exponent_field(random_field(rng, g, 1.05, 6.0), g);
    for (double v : sobolev_critical(p, 2)) CHECK(v >= 2.0);
}

TEST_CASE("log-Holder estimate") {
    const Grid g1(4, 4, 0.25, 0.25);
    CHECK(log_holder_estimate(constant_exponent(g1, 2.3), g1) == 0.0);

    // Two cells one unit apart with exponent jump 0.5.
    const Grid g2(2, 1, 1.0, 1.0);
    const ExponentField p = build_exponent_field({2.0, 2.5}, g2);
    CHECK(log_holder_estimate(p, g2) ==
          doctest::Approx(0.5 * std::log(std::exp(1.0) + 1.0)).epsilon(1e-14));

    // Linear ramp: compare against an independent all-pairs sweep.
    const Grid g3(6, 1, 0.2, 1.0);
    std::vector<double> ramp(6);
    for (int i = 0; i < 6; ++i) ramp[i] = 1.5 + 0.1 * i;
    const ExponentField pr = build_exponent_field(ramp, g3);
    double oracle = 0.0;
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) {
            const double dist = std::abs(g3.center(i)[0] - g3.center(j)[0]);
            oracle = std::max(oracle, std::abs(ramp[i] - ramp[j]) *
                                          std::log(std::exp(1.0) + 1.0 / dist));
        }
    CHECK(log_holder_estimate(pr, g3) == doctest::Approx(oracle).epsilon(1e-14));
    CHECK(log_holder_estimate(pr, g3) > 0.0);
}
