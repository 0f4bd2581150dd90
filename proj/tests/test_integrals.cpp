#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lienard/errors.hpp"
#include "lienard/integrals.hpp"
#include "oracles.hpp"

using namespace lienard;

namespace {

LienardSystem make(int n, int m, std::vector<double> b, std::vector<double> a, double A = 1.0) {
    LienardSystem sys;
    sys.n = n;
    sys.m = m;
    sys.A = A;
    sys.b = std::move(b);
    sys.a = std::move(a);
    return sys;
}

const LienardSystem sym11 = make(1, 1, {0, 0}, {0});                    // F = x^2, G = -x
const LienardSystem quartic = make(3, 1, {0, 0, 1, -0.5}, {0});         // F = x^4 + x^2 - x^3/2
const LienardSystem sym15 = make(1, 5, {0, 0}, {0, 1, 0, 0, 0});        // G = -x^5 - x
const LienardSystem crit21 = make(1, 3, {0, 0}, {0, 1, 0.05});          // m = 2n+1, asymmetric

}  // namespace

TEST_CASE("branch integral closed form for F = x^2, G = -x") {
    // F'^2/G = -4x, so I_-(y) = -2y
    CHECK(sdi_branch(sym11, 1.0, Side::Minus).value == doctest::Approx(-2.0).epsilon(1e-12));
    for (double y : {0.25, 3.0, 50.0})
        CHECK(sdi_branch(sym11, y, Side::Minus).value ==
              doctest::Approx(-2.0 * y).epsilon(1e-12));
    CHECK(sdi_branch(sym11, 1.0, Side::Plus).value == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(sdi_total(sym11, 7.0).value == doctest::Approx(0.0));
}

TEST_CASE("branch integrals match the Simpson oracle") {
    CHECK(sdi_branch(quartic, 10.0, Side::Plus).value ==
          doctest::Approx(oracles::sdi_branch_simpson(quartic, 10.0, Side::Plus)).epsilon(1e-8));
    oracles::SystemGen gen(99);
    for (int t = 0; t < 20; ++t) {
        const LienardSystem sys = gen.random_valid(7, 7);
        const double y = std::pow(10.0, 1.0 + 0.1 * t);  // up to 1e3
        for (Side side : {Side::Minus, Side::Plus}) {
            const double got = sdi_branch(sys, y, side).value;
            const double ref = oracles::sdi_branch_simpson(sys, y, side);
            CHECK(std::fabs(got - ref) <= 1e-8 * std::max(1.0, std::fabs(ref)));
        }
    }
}

TEST_CASE("branch integrals are negative and strictly decreasing") {
    oracles::SystemGen gen(5);
    for (int t = 0; t < 5; ++t) {
        const LienardSystem sys = gen.random_valid(5, 5);
        for (Side side : {Side::Minus, Side::Plus}) {
            double prev = 0.0;
            for (int i = 1; i <= 50; ++i) {
                const double y = 0.3 * i;
                const double v = sdi_branch(sys, y, side).value;
                CHECK(v < 0.0);
                CHECK(v < prev);
                prev = v;
            }
        }
    }
}

TEST_CASE("total integral equals the branch difference and vanishes under symmetry") {
    for (double y : {1.0, 10.0, 200.0}) {
        const double direct =
            sdi_branch(quartic, y, Side::Minus).value - sdi_branch(quartic, y, Side::Plus).value;
        CHECK(sdi_total(quartic, y).value == doctest::Approx(direct).epsilon(1e-9));
    }
    oracles::SystemGen gen(17);
    for (int t = 0; t < 5; ++t) {
        const LienardSystem sys = gen.random_valid(7, 7, /*symmetric=*/true);
        for (double y : {0.5, 5.0, 500.0, 1e6})
            CHECK(std::fabs(sdi_total(sys, y).value) <= 1e-9);
    }
}

TEST_CASE("folded numerator is identically zero under symmetry and odd otherwise") {
    oracles::SystemGen gen(23);
    const Poly rsym = folded_numerator(gen.random_valid(7, 7, /*symmetric=*/true));
    for (double c : rsym) CHECK(c == 0.0);
    const Poly r = folded_numerator(quartic);
    for (double x : {0.3, 1.1, 2.7})
        CHECK(poly_eval(r, -x) == doctest::Approx(-poly_eval(r, x)).epsilon(1e-12));
}

TEST_CASE("limit behavior below the critical balance") {
    const InfinityBehavior sym = infinity_behavior(sym11);
    CHECK(sym.branch_minus == LimitKind::DivergesToMinusInfinity);
    CHECK(sym.branch_plus == LimitKind::DivergesToMinusInfinity);
    CHECK(sym.total == LimitKind::Converges);
    REQUIRE(sym.i_star.has_value());
    CHECK(*sym.i_star == doctest::Approx(0.0));

    // dominant odd coefficient with b_3 (m-n+2j_b+1) < 0 drives I to +infinity
    const InfinityBehavior q = infinity_behavior(quartic);
    CHECK(q.total == LimitKind::DivergesToPlusInfinity);
    CHECK(!q.i_star.has_value());
    // corroborate numerically on the finite-plane oracle
    double prev = 0.0;
    for (double y : {1e3, 1e4, 1e5}) {
        const double iy = sdi_total(quartic, y).value;
        CHECK(iy > prev);
        prev = iy;
    }
}

TEST_CASE("limit behavior at and above the critical balance") {
    const InfinityBehavior c = infinity_behavior(crit21);
    CHECK(c.total == LimitKind::Converges);
    REQUIRE(c.i_star.has_value());
    CHECK(!c.numerically_unresolved);
    // the ladder limit agrees with large-y evaluations
    CHECK(sdi_total(crit21, 1e10).value == doctest::Approx(*c.i_star).epsilon(1e-4));

    const InfinityBehavior s = infinity_behavior(sym15);
    CHECK(s.branch_minus == LimitKind::Converges);
    CHECK(s.branch_plus == LimitKind::Converges);
    REQUIRE(s.branch_minus_limit.has_value());
    REQUIRE(s.branch_plus_limit.has_value());
    CHECK(*s.branch_minus_limit == doctest::Approx(*s.branch_plus_limit).epsilon(1e-10));
    REQUIRE(s.i_star.has_value());
    CHECK(*s.i_star == doctest::Approx(0.0));

    // branch integrals approach their limits monotonically along a 2^k ladder
    double gap_prev = std::fabs(sdi_branch(sym15, 4.0, Side::Minus).value - *s.branch_minus_limit);
    for (double y = 8.0; y <= 4096.0; y *= 2.0) {
        const double gap = std::fabs(sdi_branch(sym15, y, Side::Minus).value - *s.branch_minus_limit);
        CHECK(gap < gap_prev);
        gap_prev = gap;
    }
}

TEST_CASE("infinity behavior of an asymmetric convergent system above the balance") {
    const LienardSystem t3 = make(1, 5, {0, 0}, {0, 1, -0.5, 0, 0.2});
    const InfinityBehavior ib = infinity_behavior(t3);
    CHECK(ib.total == LimitKind::Converges);
    REQUIRE(ib.i_star.has_value());
    CHECK(*ib.i_star < 0.0);
    // finite-plane corroboration at large y
    CHECK(sdi_total(t3, 1e12).value == doctest::Approx(*ib.i_star).epsilon(1e-4));
}
