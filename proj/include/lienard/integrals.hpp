#pragma once

#include <optional>

#include "lienard/model.hpp"
#include "lienard/quadrature.hpp"

namespace lienard {

// Branch integral I_-(y) (side Minus, over [0, omega]) or I_+(y) (side Plus,
// over [0, alpha]); both are negative for y > 0.  The integrand is written as
// -x p(x)^2 / q(x) with p = F'/x, q = -G/x, which is smooth through 0.
IntegralValue sdi_branch(const LienardSystem& sys, double y, Side side, double abs_tol = 1e-10,
                         double rel_tol = 1e-12);

// Total integral I(y) = I_-(y) - I_+(y), computed from the folded integrand
// over [0, min(omega, |alpha|)] plus a bridge term; the fold cancels the
// symmetric parts in exact coefficient arithmetic.
IntegralValue sdi_total(const LienardSystem& sys, double y, double abs_tol = 1e-10,
                        double rel_tol = 1e-12);

// Numerator R of the folded integrand -x R(x) / (q(x) q(-x)); identically zero
// for symmetric systems (odd F odd part absent, even G part absent).
Poly folded_numerator(const LienardSystem& sys);

enum class LimitKind { DivergesToMinusInfinity, DivergesToPlusInfinity, Converges };

struct InfinityBehavior {
    LimitKind branch_minus = LimitKind::Converges;  // I_-(y) as y -> +inf
    LimitKind branch_plus = LimitKind::Converges;   // I_+(y) as y -> +inf
    std::optional<double> branch_minus_limit;       // finite only above the critical balance
    std::optional<double> branch_plus_limit;
    LimitKind total = LimitKind::Converges;  // I(y) as y -> +inf
    std::optional<double> i_star;            // limit of I(y) when it converges
    bool numerically_unresolved = false;     // extrapolation could not be trusted
};

// Limit behavior of I_-, I_+ and I as y -> +inf.  Divergence directions come
// from the leading coefficient of the asymptotic expansion, never from raw
// numerics; finite limits use direct improper integrals where the fold decays,
// and a doubling ladder with Aitken extrapolation otherwise.
InfinityBehavior infinity_behavior(const LienardSystem& sys, double abs_tol = 1e-10,
                                   double rel_tol = 1e-12);

}  // namespace lienard
