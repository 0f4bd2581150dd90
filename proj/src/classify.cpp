#include "lienard/classify.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "lienard/charts.hpp"
#include "lienard/errors.hpp"
#include "lienard/fractal.hpp"

namespace lienard {

std::string theorem_case_name(TheoremCase c) {
    switch (c) {
        case TheoremCase::T1_1a: return "T1.1a";
        case TheoremCase::T1_1b: return "T1.1b";
        case TheoremCase::T1_2a: return "T1.2a";
        case TheoremCase::T1_2b: return "T1.2b";
        case TheoremCase::T1_3a: return "T1.3a";
        case TheoremCase::T1_3b: return "T1.3b";
        case TheoremCase::T2_1: return "T2.1";
        case TheoremCase::T2_2: return "T2.2";
        case TheoremCase::T2_3: return "T2.3";
        case TheoremCase::T2_4: return "T2.4";
        case TheoremCase::T3_1: return "T3.1";
        case TheoremCase::T3_2: return "T3.2";
        case TheoremCase::T3_3: return "T3.3";
        case TheoremCase::Symmetric: return "symmetric";
        case TheoremCase::OpenCaseCZero: return "open-case-C-zero";
        case TheoremCase::UnbalancedAbove: return "unbalanced";
    }
    return "?";
}

Rational make_rational(long long num, long long den) {
    if (den == 0) throw InvalidInput("make_rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    return {g ? num / g : num, g ? den / g : den};
}

namespace {

// gap exponent beta with gap ~ radius^beta; beta = 1/(1 - dim)
Rational gap_from_dim(const Rational& d) { return make_rational(d.den, d.den - d.num); }

void set_dim(Prediction& p, Rational d) {
    p.predicted_dim = d;
    p.gap_exponent = gap_from_dim(d);
    p.nondegenerate_predicted = true;
}

}  // namespace

Prediction classify(const LienardSystem& sys, double tol) {
    require_valid(sys);
    Prediction pred;
    const ParityProfile pp = parity_profile(sys);
    const long long n = sys.n, m = sys.m;
    std::ostringstream detail;

    if (pp.b_o_zero && pp.a_e_zero) {
        pred.theorem_case = TheoremCase::Symmetric;
        pred.direction = Direction::ForwardS;
        pred.i_star = 0.0;
        pred.detail = "symmetric coefficients: the slow relation is the identity";
        return pred;
    }

    pred.i_behavior = infinity_behavior(sys);
    pred.i_star = pred.i_behavior.i_star;
    pred.numerically_unresolved = pred.i_behavior.numerically_unresolved;
    const bool istar_zero = pred.i_star && std::fabs(*pred.i_star) <= tol;

    const long long jb = pp.j_b ? *pp.j_b : 0;
    const long long ja = pp.j_a ? *pp.j_a : 0;
    const double b_lead = pp.j_b ? sys.b[static_cast<std::size_t>(2 * jb + 1)] : 0.0;
    const double a_lead = pp.j_a ? sys.a[static_cast<std::size_t>(2 * ja)] : 0.0;
    const bool b_dominates = pp.j_b && (pp.a_e_zero || n - 2 * jb < m - 2 * ja);
    const bool a_dominates = pp.j_a && (pp.b_o_zero || (pp.j_b && n - 2 * jb > m - 2 * ja));
    const Rational dim_b = make_rational(n - 2 * jb, n + 1 - 2 * jb);
    const Rational dim_a = make_rational(m - 2 * ja, m + 1 - 2 * ja);

    if (m < 2 * n + 1) {
        const Rational dim_mid = make_rational(2 * n + 1 - m, 2 * n + 2 - m);
        const long long e = m - n - 2 * jb - 1;  // equals the a-side exponent in the tied case
        if (b_dominates) {
            if (e < 0) {
                pred.theorem_case = TheoremCase::T1_1a;
                pred.direction = b_lead * static_cast<double>(m - n + 2 * jb + 1) > 0.0
                                     ? Direction::ForwardS
                                     : Direction::InverseS;
                set_dim(pred, dim_b);
            } else {
                pred.theorem_case = TheoremCase::T1_1b;
                if (!istar_zero) {
                    pred.direction = *pred.i_star < 0.0 ? Direction::ForwardS : Direction::InverseS;
                    set_dim(pred, dim_mid);
                } else {
                    pred.direction = b_lead < 0.0 ? Direction::ForwardS : Direction::InverseS;
                    set_dim(pred, dim_b);
                }
            }
            detail << "dominant odd coefficient b[" << 2 * jb + 1 << "]";
        } else if (a_dominates) {
            const long long ea = 2 * (m - n - ja) - 1;
            if (ea < 0) {
                pred.theorem_case = TheoremCase::T1_2a;
                pred.direction = a_lead < 0.0 ? Direction::ForwardS : Direction::InverseS;
                set_dim(pred, dim_a);
            } else {
                pred.theorem_case = TheoremCase::T1_2b;
                if (!istar_zero) {
                    pred.direction = *pred.i_star < 0.0 ? Direction::ForwardS : Direction::InverseS;
                    set_dim(pred, dim_mid);
                } else {
                    pred.direction = a_lead > 0.0 ? Direction::ForwardS : Direction::InverseS;
                    set_dim(pred, dim_a);
                }
            }
            detail << "dominant even coefficient a[" << 2 * ja << "]";
        } else {
            const double C = *pp.C;
            if (C == 0.0) {
                pred.theorem_case = TheoremCase::OpenCaseCZero;
                pred.numerically_unresolved = true;
                pred.detail = "tied leading coefficients cancel exactly";
                return pred;
            }
            if (e < 0) {
                pred.theorem_case = TheoremCase::T1_3a;
                pred.direction = C > 0.0 ? Direction::ForwardS : Direction::InverseS;
                set_dim(pred, dim_b);
            } else {
                pred.theorem_case = TheoremCase::T1_3b;
                if (!istar_zero) {
                    pred.direction = *pred.i_star < 0.0 ? Direction::ForwardS : Direction::InverseS;
                    set_dim(pred, dim_mid);
                } else {
                    pred.direction = C < 0.0 ? Direction::ForwardS : Direction::InverseS;
                    set_dim(pred, dim_b);
                }
            }
            detail << "tied leading coefficients, C = " << C;
        }
        pred.detail = detail.str();
        return pred;
    }

    if (m == 2 * n + 1) {
        if (!istar_zero) {
            pred.theorem_case = TheoremCase::T2_1;
            pred.direction = *pred.i_star < 0.0 ? Direction::ForwardS : Direction::InverseS;
            pred.predicted_dim = make_rational(0, 1);
            pred.gap_exponent = make_rational(1, 1);
            pred.predicted_ratio =
                std::exp(-sys.A * std::fabs(*pred.i_star) / static_cast<double>((n + 1) * (n + 1)));
            pred.detail = "nonzero limit of I: geometric accumulation";
            return pred;
        }
        if (b_dominates) {
            pred.theorem_case = TheoremCase::T2_2;
            pred.direction = b_lead < 0.0 ? Direction::ForwardS : Direction::InverseS;
            set_dim(pred, dim_b);
        } else if (a_dominates) {
            pred.theorem_case = TheoremCase::T2_3;
            pred.direction = a_lead > 0.0 ? Direction::ForwardS : Direction::InverseS;
            set_dim(pred, dim_a);
        } else {
            const double C2 = b_lead * static_cast<double>(n + 2 * jb + 2) -
                              a_lead * static_cast<double>(n + 1) / sys.A;
            if (C2 == 0.0) {
                pred.theorem_case = TheoremCase::OpenCaseCZero;
                pred.numerically_unresolved = true;
                pred.detail = "tied leading coefficients cancel exactly";
                return pred;
            }
            pred.theorem_case = TheoremCase::T2_4;
            pred.direction = C2 < 0.0 ? Direction::ForwardS : Direction::InverseS;
            set_dim(pred, dim_b);
        }
        pred.detail = "vanishing limit of I at the critical balance";
        return pred;
    }

    // above the critical balance an escaping orbit needs a balanced system
    if (!istar_zero) {
        pred.theorem_case = TheoremCase::UnbalancedAbove;
        pred.detail = "nonzero limit of I: no escaping orbit above the critical balance";
        return pred;
    }
    const Rational dim3_b =
        make_rational((n - 2 * jb) * (m + 1), (n - 2 * jb) * (m + 1) + 2 * (n + 1));
    const Rational dim3_a =
        make_rational((m - 2 * ja) * (m + 1), (m - 2 * ja) * (m + 1) + 2 * (n + 1));
    if (b_dominates) {
        pred.theorem_case = TheoremCase::T3_1;
        pred.direction = b_lead < 0.0 ? Direction::ForwardS : Direction::InverseS;
        set_dim(pred, dim3_b);
    } else if (a_dominates) {
        pred.theorem_case = TheoremCase::T3_2;
        pred.direction = a_lead > 0.0 ? Direction::ForwardS : Direction::InverseS;
        set_dim(pred, dim3_a);
    } else {
        const double C = *pp.C;
        if (C == 0.0) {
            pred.theorem_case = TheoremCase::OpenCaseCZero;
            pred.numerically_unresolved = true;
            pred.detail = "tied leading coefficients cancel exactly";
            return pred;
        }
        pred.theorem_case = TheoremCase::T3_3;
        pred.direction = C < 0.0 ? Direction::ForwardS : Direction::InverseS;
        set_dim(pred, dim3_b);
    }
    pred.detail = "balanced system above the critical balance";
    return pred;
}

VerifyReport verify(const LienardSystem& sys, const Prediction& pred, const VerifyBudget& budget) {
    require_valid(sys);
    VerifyReport rep;
    rep.prediction = pred;
    if (!pred.predicted_dim) {
        rep.message = "no dimension predicted for this case";
        return rep;
    }
    const bool below = (sys.m <= 2 * sys.n + 1);
    double rtilde = 1.0, jtilde = 0.0;
    if (below) {
        rtilde = 0.5 * rtilde_max(sys);
        jtilde = -sdi_total(sys, std::pow(rtilde, -(sys.n + 1))).value;
    } else {
        jtilde = pred.i_star.value_or(0.0);
    }
    auto r_of_y = [&](double y) {
        return below ? std::pow(y, -1.0 / (sys.n + 1)) : std::pow(y, -2.0 / (sys.m + 1));
    };
    double y0 = 1e3;
    if (below) y0 = std::max(y0, std::pow(0.5 * rtilde, -static_cast<double>(sys.n + 1)));
    Orbit orb;
    for (;; y0 *= 2.0) {
        if (y0 > 1e9) {
            rep.message = "no escaping start height found up to 1e9";
            return rep;
        }
        Orbit probe = generate_orbit_compactified(sys, r_of_y(y0), jtilde, pred.direction, 5,
                                                  budget.r_floor, rtilde, budget.tol);
        if (probe.termination == Termination::NotDivergent || probe.r.size() < 6) continue;
        break;
    }
    orb = generate_orbit_compactified(sys, r_of_y(y0), jtilde, pred.direction, budget.max_iter,
                                      budget.r_floor, rtilde, budget.tol);
    rep.orbit = orb;
    if (orb.r.size() < 100) {
        rep.message = "orbit too short for a dimension estimate";
        return rep;
    }
    try {
        const DimensionEstimate dn = dimension_neighborhood(orb.r);
        rep.dim_neighborhood = dn.value;
        rep.nondegeneracy =
            dn.method == "geometric" ? 0.0 : nondegeneracy_diagnostic(orb.r, pred.predicted_dim->value());
    } catch (const NumericalFailure& e) {
        rep.message = std::string("neighborhood estimate failed: ") + e.what();
        return rep;
    }
    try {
        const DimensionEstimate dg = dimension_gap_law(orb.r);
        rep.dim_gap_law = dg.value;
        rep.gap_exponent_estimate = dg.value < 1.0 ? 1.0 / (1.0 - dg.value) : 0.0;
    } catch (const NumericalFailure&) {
        rep.dim_gap_law = rep.dim_neighborhood;
        rep.gap_exponent_estimate =
            rep.dim_gap_law < 1.0 ? 1.0 / (1.0 - rep.dim_gap_law) : 0.0;
    }
    const double err = std::fabs(rep.dim_neighborhood - pred.predicted_dim->value());
    rep.ok = err <= budget.dim_tolerance;
    std::ostringstream msg;
    msg << "measured " << rep.dim_neighborhood << " vs predicted " << pred.predicted_dim->value()
        << " (|diff| = " << err << ")";
    rep.message = msg.str();
    return rep;
}

LienardSystem balance_search(LienardSystem sys, CoefFamily family, int index, double lo,
                             double hi, double tol) {
    auto istar_at = [&](double c) {
        if (family == CoefFamily::A)
            sys.a.at(static_cast<std::size_t>(index)) = c;
        else
            sys.b.at(static_cast<std::size_t>(index)) = c;
        const ValidationReport rep = validate(sys);
        if (!rep.ok)
            throw AssumptionBrokenByTuning("balance_search: trial coefficient " +
                                           std::to_string(c) + " violates the assumptions");
        const InfinityBehavior ib = infinity_behavior(sys);
        if (!ib.i_star)
            throw NumericalFailure("balance_search: I has no finite limit for this system");
        return *ib.i_star;
    };
    const double flo = istar_at(lo);
    if (std::fabs(flo) <= tol) return sys;
    const double fhi = istar_at(hi);
    if (std::fabs(fhi) <= tol) return sys;
    if (flo * fhi > 0.0)
        throw NoBalancedSystemInBracket("balance_search: no sign change over the bracket");
    double a = lo, fa = flo, b = hi;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = istar_at(mid);
        if (std::fabs(fm) <= tol) return sys;
        if (fa * fm < 0.0) {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
    }
    throw NonConvergence("balance_search: bisection did not reach the target");
}

}  // namespace lienard
