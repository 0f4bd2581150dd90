#pragma once

#include <optional>
#include <string>

#include "lienard/integrals.hpp"
#include "lienard/model.hpp"
#include "lienard/relation.hpp"

namespace lienard {

enum class TheoremCase {
    T1_1a,
    T1_1b,
    T1_2a,
    T1_2b,
    T1_3a,
    T1_3b,
    T2_1,
    T2_2,
    T2_3,
    T2_4,
    T3_1,
    T3_2,
    T3_3,
    Symmetric,
    OpenCaseCZero,
    UnbalancedAbove
};

std::string theorem_case_name(TheoremCase c);

struct Rational {
    long long num = 0;
    long long den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};
Rational make_rational(long long num, long long den);

struct Prediction {
    TheoremCase theorem_case = TheoremCase::Symmetric;
    std::optional<Rational> predicted_dim;      // box dimension of the escaping orbit
    std::optional<Rational> gap_exponent;       // gap ~ radius^{gap_exponent} along the tail
    Direction direction = Direction::ForwardS;  // which relation iterate escapes
    InfinityBehavior i_behavior;
    std::optional<double> i_star;
    std::optional<double> predicted_ratio;  // geometric radius ratio in the dim-0 case
    bool nondegenerate_predicted = false;
    bool numerically_unresolved = false;
    std::string detail;
};

// Decides the asymptotic case from parity data and the limit of I, and fills
// in the exact predicted dimension.  tol is the threshold below which the
// limit value of I counts as zero.
Prediction classify(const LienardSystem& sys, double tol = 1e-6);

struct VerifyBudget {
    int max_iter = 20000;
    double r_floor = 1e-8;
    double tol = 1e-10;
    double dim_tolerance = 0.05;
};

struct VerifyReport {
    bool ok = false;
    Prediction prediction;
    Orbit orbit;
    double dim_neighborhood = 0.0;
    double dim_gap_law = 0.0;
    double gap_exponent_estimate = 0.0;
    double nondegeneracy = 0.0;
    std::string message;
};

// Generates the escaping orbit the classification predicts and measures its
// dimension; ok when measurement and prediction agree within dim_tolerance.
VerifyReport verify(const LienardSystem& sys, const Prediction& pred,
                    const VerifyBudget& budget = {});

enum class CoefFamily { A, B };

// Tunes one coefficient by bisection until the limit of I at infinity
// vanishes (|I*| <= tol).  Requires a sign change over [lo, hi].
LienardSystem balance_search(LienardSystem sys, CoefFamily family, int index, double lo,
                             double hi, double tol = 1e-10);

}  // namespace lienard
