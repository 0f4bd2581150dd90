#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lienard/poly.hpp"

namespace lienard {

// Minus: attracting branch (x > 0).  Plus: repelling branch (x < 0).
enum class Side { Minus, Plus };

// Relation of m to 2n+1.
enum class CaseTag { Below, Critical, Above };

// x' = y - F(x), y' = eps * G(x) with
//   F(x) = x^{n+1} + sum_{k=0}^{n} b[k] x^k,
//   G(x) = -A x^m - sum_{k=0}^{m-1} a[k] x^k.
struct LienardSystem {
    int n = 1;
    int m = 1;
    double A = 1.0;
    std::vector<double> b;  // size n+1
    std::vector<double> a;  // size m

    double F(double x) const;
    double dF(double x) const;
    double G(double x) const;

    Poly shape_p() const;  // F'(x)/x, exact coefficient division
    Poly shape_q() const;  // -G(x)/x

    CaseTag case_tag() const;
};

LienardSystem system_from_json(const std::string& text);
std::string system_to_json(const LienardSystem& sys);

struct ValidationReport {
    bool ok = false;
    std::vector<std::string> violations;
};

// Decides the standing assumptions exactly (Sturm-based positivity, parity of n and m,
// sign and normalization of A).  Violations are data, not exceptions.
ValidationReport validate(const LienardSystem& sys);

// Throws AssumptionViolation listing every violated condition.
void require_valid(const LienardSystem& sys);

// Coefficient arrays sized and finite; enough for chart evaluation.
void require_well_formed(const LienardSystem& sys);

struct ParityProfile {
    std::optional<int> j_b;  // max j with b[2j+1] != 0
    std::optional<int> j_a;  // max j with a[2j] != 0
    bool b_o_zero = true;
    bool a_e_zero = true;
    std::optional<double> C;  // b[2j_b+1](m-n+2j_b+1) - a[2j_a](n+1) when n-2j_b == m-2j_a
};
ParityProfile parity_profile(const LienardSystem& sys);

// Solves F(x) = y on the requested branch; omega(y) > 0 for Minus, alpha(y) < 0 for Plus.
double branch_inverse(const LienardSystem& sys, double y, Side side, double rtol = 1e-12);

}  // namespace lienard
