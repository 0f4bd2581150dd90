#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lienard/charts.hpp"
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

const LienardSystem sym11 = make(1, 1, {0, 0}, {0});
const LienardSystem quartic = make(3, 1, {0, 0, 1, -0.5}, {0});
const LienardSystem sys15 = make(1, 5, {0, 0}, {0, 1, 0, 0, 0});
const LienardSystem sys15neg = make(1, 5, {0, 0}, {0, 1, 0, 0, 0}, -1.0);

void check_catalog_consistency(const LienardSystem& sys, double tol = 1e-8) {
    const auto cat = singularity_catalog(sys);
    REQUIRE(!cat.empty());
    for (const auto& e : cat) {
        REQUIRE(e.eigen_symbolic.size() == e.eigen_numeric.size());
        for (std::size_t i = 0; i < e.eigen_symbolic.size(); ++i)
            CHECK(std::fabs(e.eigen_symbolic[i] - e.eigen_numeric[i]) <= tol);
    }
}

const SingularityInfo* find_entry(const std::vector<SingularityInfo>& cat, ChartKind chart,
                                  const std::array<double, 3>& loc) {
    for (const auto& e : cat) {
        bool same = e.chart == chart;
        for (int i = 0; i < 3; ++i) same = same && std::fabs(e.location[i] - loc[i]) < 1e-12;
        if (same) return &e;
    }
    return nullptr;
}

}  // namespace

TEST_CASE("chart dimensions") {
    CHECK(chart_dimension(ChartKind::MainPosX) == 2);
    CHECK(chart_dimension(ChartKind::FamilyNegX) == 2);
    CHECK(chart_dimension(ChartKind::PhaseYPosPosX) == 3);
    CHECK(chart_dimension(ChartKind::PhaseRNegX) == 3);
}

TEST_CASE("main chart field vanishes at the origin below the critical balance") {
    const auto v = chart_vector_field(sym11, ChartKind::MainPosX, 0.0, {0.0, 0.0, 0.0});
    CHECK(v[0] == doctest::Approx(0.0));
    CHECK(v[1] == doctest::Approx(0.0));
    CHECK_THROWS_AS(chart_vector_field(sym11, ChartKind::PhaseYPosPosX, 0.0, {0.1, 0.1, 0.1}),
                    ChartMismatch);
    CHECK_THROWS_AS(chart_vector_field(sys15, ChartKind::MainPosY, 0.0, {0.1, 0.1, 0.0}),
                    ChartMismatch);
}

TEST_CASE("catalog for the minimal system matches the printed tuples") {
    const auto cat = singularity_catalog(sym11);
    const auto* node = find_entry(cat, ChartKind::MainPosX, {0.0, 0.0, 0.0});
    REQUIRE(node != nullptr);
    CHECK(node->eigen_symbolic == std::vector<double>{1.0, 2.0});
    CHECK(node->kind == "repelling node");
    const auto* semi = find_entry(cat, ChartKind::MainPosX, {0.0, 1.0, 0.0});
    REQUIRE(semi != nullptr);
    CHECK(semi->eigen_symbolic == std::vector<double>{-2.0, 0.0});
    CHECK(semi->kind == "semi-hyperbolic");
    check_catalog_consistency(sym11);
}

TEST_CASE("catalog above the critical balance, odd m") {
    const auto cat = singularity_catalog(sys15);
    // phase-directional chart over positive y: saddle (2, -3, 6) for n=1, m=5
    const auto* saddle = find_entry(cat, ChartKind::PhaseYPosPosX, {0.0, 0.0, 0.0});
    REQUIRE(saddle != nullptr);
    CHECK(saddle->eigen_symbolic == std::vector<double>{-3.0, 2.0, 6.0});
    CHECK(saddle->kind == "saddle");
    check_catalog_consistency(sys15);
}

TEST_CASE("family chart singularities appear only for A < 0 (odd m)") {
    const auto cat = singularity_catalog(sys15neg);
    const double s = std::sqrt(2.0 / 6.0);
    const auto* attract = find_entry(cat, ChartKind::FamilyPosX, {0.0, s, 0.0});
    REQUIRE(attract != nullptr);
    CHECK(attract->eigen_symbolic[0] == doctest::Approx(-std::sqrt(12.0)).epsilon(1e-14));
    CHECK(attract->eigen_symbolic[1] == doctest::Approx(-std::sqrt(1.0 / 3.0)).epsilon(1e-14));
    CHECK(attract->kind == "attracting node");
    check_catalog_consistency(sys15neg);

    for (const auto& e : singularity_catalog(sys15)) {
        CHECK(e.chart != ChartKind::FamilyPosX);
        CHECK(e.chart != ChartKind::FamilyNegX);
    }
}

TEST_CASE("catalog numeric eigenvalues match across case and parity cells") {
    check_catalog_consistency(quartic);                               // m < 2n+1
    check_catalog_consistency(make(1, 3, {0, 0}, {0, 1, 0.05}));      // m = 2n+1
    check_catalog_consistency(make(1, 6, {0, 0}, {0, 1, 0, 0, 0, 0}));  // m even above
    check_catalog_consistency(make(2, 3, {0, 0, 0.1}, {0, 1, 0}));    // n even
    check_catalog_consistency(make(2, 8, {0, 0, 0.1}, {0, 1, 0, 0, 0, 0, 0, 0}));
}

TEST_CASE("canard feasibility at infinity") {
    CHECK(canard_at_infinity_feasible(sym11));
    CHECK(canard_at_infinity_feasible(sys15));
    CHECK(!canard_at_infinity_feasible(make(2, 3, {0, 0, 0.1}, {0, 1, 0})));   // n even
    CHECK(!canard_at_infinity_feasible(make(1, 6, {0, 0}, {0, 1, 0, 0, 0, 0})));  // m even above
    CHECK(!canard_at_infinity_feasible(sys15neg));  // A != 1
    CHECK(canard_at_infinity_feasible(make(1, 3, {0, 0}, {0, 1, 0}, 0.7)));  // A > 0 at m = 2n+1
}

TEST_CASE("phi branches") {
    for (double r : {0.0, 0.05, 0.2}) {
        CHECK(phi(sym11, r, Side::Minus) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(phi(sym11, r, Side::Plus) == doctest::Approx(-1.0).epsilon(1e-12));
    }
    CHECK(phi(quartic, 0.0, Side::Minus) == doctest::Approx(1.0));
    CHECK(phi(quartic, 0.0, Side::Plus) == doctest::Approx(-1.0));

    // defining-equation residual on a 200-point grid
    const double rmax = rtilde_max(quartic);
    CHECK(rmax > 0.0);
    for (int i = 0; i < 200; ++i) {
        const double r = rmax * 0.5 * (i / 199.0);
        for (Side side : {Side::Minus, Side::Plus}) {
            const double p = phi(quartic, r, side);
            double res = 1.0 - std::pow(p, 4);
            for (int k = 0; k <= 3; ++k)
                res -= quartic.b[static_cast<std::size_t>(k)] * std::pow(r, 4 - k) *
                       std::pow(p, k);
            CHECK(std::fabs(res) <= 1e-12);
        }
    }
}

TEST_CASE("phi sum leading term (single odd coefficient)") {
    // phi_- + phi_+ ~ -(2/(n+1)) b_{2j+1} r^{n-2j}
    const double r = 1e-3;
    const double sum = phi(quartic, r, Side::Minus) + phi(quartic, r, Side::Plus);
    const double lead = -(2.0 / 4.0) * (-0.5) * r;  // n=3, j_b=1
    CHECK(sum / lead == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("psi branches and their inverse") {
    // all b = 0: exact power law
    for (double hr : {1e-4, 1e-2, 0.2}) {
        const double expect = std::pow(hr, 6.0 / 4.0);  // (m+1)/(2(n+1)) with n=1, m=5
        CHECK(psi(sys15, hr, Side::Minus) == doctest::Approx(expect).epsilon(1e-12));
        CHECK(psi(sys15, hr, Side::Plus) == doctest::Approx(expect).epsilon(1e-12));
    }
    CHECK(psi(sys15, 0.0, Side::Minus) == doctest::Approx(0.0));

    // fixed-point oracle for a well-formed (not validated) system with b_0 = 0.1
    const LienardSystem wf = make(1, 5, {0.1, 0.0}, {0, 1, 0, 0, 0});
    const double hr = 1e-3;
    for (Side side : {Side::Minus, Side::Plus}) {
        const double sigma = side == Side::Minus ? 1.0 : -1.0;
        const double t = std::pow(hr, 3.0);  // hr^{(m+1)/2}
        double r = std::sqrt(t);
        for (int it = 0; it < 200; ++it)
            r = std::sqrt(t * (1.0 + 0.1 * r * r * 1.0 * std::pow(sigma, 0)));
        CHECK(psi(wf, hr, side) == doctest::Approx(r).epsilon(1e-12));
        CHECK(psi_inverse(wf, psi(wf, hr, side), side) == doctest::Approx(hr).epsilon(1e-10));
    }
}

TEST_CASE("psi difference leading term (single odd coefficient)") {
    // psi_- - psi_+ ~ (2/(n+1)) b_{2j+1} hr^{(n+1-2j)(m+1)/(2(n+1))}
    const LienardSystem sys = make(3, 9, {0, 0, 1, 0.2}, {0, 1, 0, 0, 0, 0, 0, 0, 0});
    const double hr = 1e-3;
    const double diff = psi(sys, hr, Side::Minus) - psi(sys, hr, Side::Plus);
    const double lead = (2.0 / 4.0) * 0.2 * std::pow(hr, 2.0 * 10.0 / 8.0);
    CHECK(diff / lead == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("compactified integrals below the critical balance") {
    const double rt = 0.5 * rtilde_max(quartic);
    // anchored at rtilde: J(rtilde) = 0 and J < 0 inside
    for (Side side : {Side::Minus, Side::Plus}) {
        CHECK(std::fabs(J_branch(quartic, rt * (1.0 - 1e-12), side, rt).value) <= 1e-6);
        double prev = 0.0;
        for (double r : {0.8 * rt, 0.5 * rt, 0.2 * rt, 0.05 * rt}) {
            const double v = J_branch(quartic, r, side, rt).value;
            CHECK(v < 0.0);
            CHECK(v < prev);
            prev = v;
        }
    }
    // symmetric system: both branches agree
    const double rts = 0.5 * rtilde_max(sym11);
    for (double r : {0.3 * rts, 0.7 * rts})
        CHECK(J_branch(sym11, r, Side::Minus, rts).value ==
              doctest::Approx(J_branch(sym11, r, Side::Plus, rts).value).epsilon(1e-10));

    // finite-plane oracle: J_-(r) = I_-(r^{-(n+1)}) - I_-(rtilde^{-(n+1)})
    for (double r : {0.3 * rt, 0.6 * rt}) {
        const double lhs = J_branch(quartic, r, Side::Minus, rt).value;
        const double rhs = sdi_branch(quartic, std::pow(r, -4.0), Side::Minus).value -
                           sdi_branch(quartic, std::pow(rt, -4.0), Side::Minus).value;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
    }
    CHECK_THROWS_AS(J_branch(sys15, 0.01, Side::Minus, 0.1), ChartMismatch);
}

TEST_CASE("compactified integrals above the critical balance") {
    const LienardSystem t3 = make(1, 5, {0, 0}, {0, 1, -0.2, 0.5, 0.2});
    // tends to zero from below, strictly decreasing in hr
    double prev = 0.0;
    for (double hr : {1e-6, 1e-4, 1e-2, 0.05}) {
        const double v = Jhat_branch(t3, hr, Side::Minus).value;
        CHECK(v < 0.0);
        CHECK(v < prev);
        prev = v;
    }
    // symmetric system: branches agree
    for (double hr : {1e-3, 0.02})
        CHECK(Jhat_branch(sys15, hr, Side::Minus).value ==
              doctest::Approx(Jhat_branch(sys15, hr, Side::Plus).value).epsilon(1e-10));

    // tail identity against the finite plane: Jhat(hr) = I(+inf) - I(y(hr))
    const InfinityBehavior ib = infinity_behavior(t3);
    REQUIRE(ib.branch_minus_limit.has_value());
    for (double hr : {0.01, 0.05}) {
        const double y = std::pow(hr, -3.0);  // hr^{-(m+1)/2}
        const double lhs = Jhat_branch(t3, hr, Side::Minus).value;
        const double rhs = *ib.branch_minus_limit - sdi_branch(t3, y, Side::Minus).value;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-7));
    }
    CHECK_THROWS_AS(Jhat_branch(quartic, 0.01, Side::Minus), ChartMismatch);
}

TEST_CASE("slow dynamics at infinity: printed signs") {
    // m < 2n+1, positive-x chart, A = 1: points away from r = 0
    CHECK(slow_dynamics_at_infinity(quartic, 0.05, Side::Minus) > 0.0);
    // m = 2n+1, positive-x chart, A < 0: towards r = 0
    const LienardSystem critneg = make(1, 3, {0, 0}, {0, 1, 0}, -0.5);
    CHECK(slow_dynamics_at_infinity(critneg, 0.05, Side::Minus) < 0.0);
    // m > 2n+1 odd, positive-x chart, A = -1: towards r = 0
    CHECK(slow_dynamics_at_infinity(sys15neg, 0.05, Side::Minus) < 0.0);
}
