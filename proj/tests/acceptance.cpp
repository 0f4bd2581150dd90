// End-to-end acceptance checks; prints one PASS/FAIL line per criterion and
// returns the number of failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lienard/charts.hpp"
#include "lienard/classify.hpp"
#include "lienard/fractal.hpp"
#include "lienard/integrals.hpp"
#include "lienard/relation.hpp"
#include "oracles.hpp"

using namespace lienard;
using Clock = std::chrono::steady_clock;

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

const LienardSystem quartic = make(3, 1, {0, 0, 1, -0.5}, {0});
const LienardSystem crit21 = make(1, 3, {0, 0}, {0, 1, 0.05});

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Checker {
    bool ok = true;
    std::ostringstream log;
    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            log << "    failed: " << what << "\n";
        }
    }
    void near(double got, double want, double tol, const std::string& what) {
        expect(std::fabs(got - want) <= tol,
               what + " (got " + std::to_string(got) + ", want " + std::to_string(want) +
                   " +/- " + std::to_string(tol) + ")");
    }
};

std::vector<double> power_law_sequence(double beta, double c, double r0, int count) {
    std::vector<double> r{r0};
    while (static_cast<int>(r.size()) < count) {
        const double next = r.back() - c * std::pow(r.back(), beta);
        if (!(next > 0.0) || next >= r.back()) break;
        r.push_back(next);
    }
    return r;
}

// 1. calibration of both estimators on synthetic power-law recursions
bool criterion1(Checker& ck) {
    for (double beta : {1.5, 2.0, 3.0, 4.0}) {
        for (double c : {1.0, 0.1}) {
            const auto t0 = Clock::now();
            const auto seq = power_law_sequence(beta, c, 0.5, 100000);
            const double want = 1.0 - 1.0 / beta;
            const std::string tag =
                "beta=" + std::to_string(beta) + " c=" + std::to_string(c);
            ck.near(dimension_neighborhood(seq).value, want, 0.02, tag + " neighborhood");
            ck.near(dimension_gap_law(seq).value, want, 0.02, tag + " gap law");
            ck.expect(seconds_since(t0) <= 10.0, tag + " within 10 s");
        }
    }
    return ck.ok;
}

// 2. dominant-odd-coefficient system end to end
bool criterion2(Checker& ck) {
    const auto t0 = Clock::now();
    const Prediction p = classify(quartic);
    ck.expect(p.theorem_case == TheoremCase::T1_1a, "case T1.1a");
    ck.expect(p.direction == Direction::InverseS, "direction InverseS");
    ck.expect(p.predicted_dim && p.predicted_dim->num == 1 && p.predicted_dim->den == 2,
              "predicted dim 1/2");
    const VerifyReport rep = verify(quartic, p);
    ck.expect(rep.orbit.r.size() >= 10000, "orbit of at least 1e4 terms");
    ck.near(rep.gap_exponent_estimate, 2.0, 0.05, "gap-law exponent");
    ck.near(rep.dim_neighborhood, 0.50, 0.05, "dimension estimate");
    ck.expect(rep.nondegeneracy <= 100.0, "nondegeneracy ratio <= 1e2");
    ck.expect(rep.ok, "verify agreement");
    ck.expect(seconds_since(t0) <= 120.0, "within 2 min");
    return ck.ok;
}

// 3. critical balance with nonzero limit: geometric accumulation
bool criterion3(Checker& ck) {
    const Prediction p = classify(crit21);
    ck.expect(p.theorem_case == TheoremCase::T2_1, "case T2.1");
    ck.expect(p.predicted_ratio && *p.predicted_ratio > 0.0 && *p.predicted_ratio < 1.0,
              "predicted ratio in (0,1)");
    const double rtilde = 0.5 * rtilde_max(crit21);
    const double jtilde = -sdi_total(crit21, std::pow(rtilde, -2.0)).value;
    const Orbit orb =
        generate_orbit_compactified(crit21, 0.05, jtilde, p.direction, 1000, 1e-12, rtilde);
    ck.expect(orb.r.size() > 150, "orbit long enough");
    std::size_t checked = 0;
    for (std::size_t l = orb.r.size() > 101 ? orb.r.size() - 101 : 0; l + 1 < orb.r.size(); ++l) {
        const double ratio = orb.r[l + 1] / orb.r[l];
        if (std::fabs(ratio / *p.predicted_ratio - 1.0) > 0.01) {
            ck.expect(false, "ratio within 1% at step " + std::to_string(l));
            break;
        }
        ++checked;
    }
    ck.expect(checked >= 100, "100 tail ratios checked");
    ck.expect(dimension_neighborhood(orb.r).value <= 0.05, "dimension estimate <= 0.05");
    return ck.ok;
}

// 4. balanced system above the critical balance end to end
bool criterion4(Checker& ck) {
    const LienardSystem tmpl = make(1, 5, {0, 0}, {0, 1, -0.2, 0.5, 0.2});
    const LienardSystem bal = balance_search(tmpl, CoefFamily::A, 3, 0.5, 1.5, 1e-6);
    const Prediction p = classify(bal);
    ck.expect(p.i_star && std::fabs(*p.i_star) <= 1e-6, "balanced to |I*| <= 1e-6");
    ck.expect(p.theorem_case == TheoremCase::T3_2, "case T3.2");
    ck.expect(p.predicted_dim && p.predicted_dim->num == 3 && p.predicted_dim->den == 5,
              "predicted dim 3/5");
    const VerifyReport rep = verify(bal, p);
    ck.near(rep.dim_neighborhood, 0.60, 0.05, "dimension estimate");
    // gap ~ hr^{(m-2j_a)(m+1)/(2(n+1)) + 1} = hr^{5/2}
    ck.near(rep.gap_exponent_estimate, 2.5, 0.1, "gap exponent");
    ck.expect(rep.ok, "verify agreement");
    return ck.ok;
}

// 5. symmetric systems: identity relation and constant recursions
bool criterion5(Checker& ck) {
    oracles::SystemGen gen(2026);
    for (int t = 0; t < 10; ++t) {
        const LienardSystem sys = gen.random_valid(7, 7, /*symmetric=*/true);
        const std::string tag = "symmetric system " + std::to_string(t);
        for (double y : {1.0, 10.0, 1e3, 1e5})
            ck.expect(std::fabs(sdi_total(sys, y).value) <= 1e-9, tag + " total integral 0");
        for (double y : {2.0, 40.0, 900.0}) {
            const double s = slow_relation(sys, y, Direction::ForwardS);
            ck.expect(std::fabs(s - y) <= 1e-8 * std::max(1.0, y), tag + " S(y) = y");
        }
        const bool below = sys.m <= 2 * sys.n + 1;
        const double rtilde = below ? 0.5 * rtilde_max(sys) : 0.0;
        const double r0 = below ? 0.5 * rtilde : 0.05;
        const Orbit orb =
            generate_orbit_compactified(sys, r0, 0.0, Direction::ForwardS, 30, 1e-10, rtilde);
        ck.expect(orb.r.size() == 31, tag + " constant orbit length");
        for (double r : orb.r)
            ck.expect(r == r0, tag + " constant sequence");
    }
    return ck.ok;
}

// 6. invariance of the divergence integral under the change to chart variables
bool criterion6(Checker& ck) {
    const std::vector<LienardSystem> systems = {
        quartic,
        crit21,
        make(3, 3, {0, 0, 1, 1}, {0, 3, 1}),
        make(3, 3, {0, 0, 1, 0}, {0, 3, 1}),
        make(3, 7, {0, 0, 1, 0.1}, {0, 1, 0.3, 0, 0, 0, 0}),
    };
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(0.05, 0.95);
    for (std::size_t i = 0; i < systems.size(); ++i) {
        const LienardSystem& sys = systems[i];
        const double rtilde = 0.5 * rtilde_max(sys);
        const double np1 = static_cast<double>(sys.n + 1);
        const double itilde = sdi_total(sys, std::pow(rtilde, -np1)).value;
        for (int t = 0; t < 50; ++t) {
            const double r = U(rng) * rtilde, rp = U(rng) * rtilde;
            const double lhs = sdi_branch(sys, std::pow(r, -np1), Side::Minus).value -
                               sdi_branch(sys, std::pow(rp, -np1), Side::Plus).value;
            const double rhs = J_branch(sys, r, Side::Minus, rtilde).value -
                               J_branch(sys, rp, Side::Plus, rtilde).value + itilde;
            const double scale = std::max(1.0, std::fabs(lhs));
            ck.expect(std::fabs(lhs - rhs) <= 1e-9 * scale,
                      "identity on system " + std::to_string(i) + " pair " + std::to_string(t));
        }
    }
    return ck.ok;
}

// 7. leading-term asymptotics of the branch parametrizations
bool criterion7(Checker& ck) {
    // phi_- + phi_+ ~ -(2/(n+1)) b_3 r for the quartic system (n=3, j_b=1)
    const double r = 1e-3;
    const double sum = phi(quartic, r, Side::Minus) + phi(quartic, r, Side::Plus);
    ck.near(sum / (-(2.0 / 4.0) * (-0.5) * r), 1.0, 0.05, "phi sum ratio");

    // psi_- - psi_+ ~ (2/(n+1)) b_3 hr^{(n-1)(m+1)/(2(n+1))} for n=3, m=9
    const LienardSystem sys = make(3, 9, {0, 0, 1, 0.2}, {0, 1, 0, 0, 0, 0, 0, 0, 0});
    const double hr = 1e-3;
    const double diff = psi(sys, hr, Side::Minus) - psi(sys, hr, Side::Plus);
    ck.near(diff / ((2.0 / 4.0) * 0.2 * std::pow(hr, 2.5)), 1.0, 0.05, "psi difference ratio");
    return ck.ok;
}

// 8. singularity catalog: closed-form vs finite-difference eigenvalues
bool criterion8(Checker& ck) {
    const std::vector<LienardSystem> systems = {
        quartic,                                           // m < 2n+1
        crit21,                                            // m = 2n+1
        make(1, 5, {0, 0}, {0, 1, 0, 0, 0}),               // m > 2n+1 odd, A = 1
        make(1, 5, {0, 0}, {0, 1, 0, 0, 0}, -1.0),         // m > 2n+1 odd, A = -1
        make(1, 6, {0, 0}, {0, 1, 0, 0, 0, 0}),            // m even
        make(2, 3, {0, 0, 0.1}, {0, 1, 0}),                // n even, m = 2n-1
        make(2, 8, {0, 0, 0.1}, {0, 1, 0, 0, 0, 0, 0, 0}),  // n even, m > 2n+1 even
    };
    for (std::size_t i = 0; i < systems.size(); ++i) {
        const auto cat = singularity_catalog(systems[i]);
        ck.expect(!cat.empty(), "catalog nonempty for system " + std::to_string(i));
        for (const auto& e : cat) {
            ck.expect(e.eigen_symbolic.size() == e.eigen_numeric.size(),
                      "eigenvalue counts for system " + std::to_string(i));
            for (std::size_t k = 0; k < e.eigen_symbolic.size(); ++k)
                ck.expect(std::fabs(e.eigen_symbolic[k] - e.eigen_numeric[k]) <= 1e-8,
                          "eigenvalue match for system " + std::to_string(i));
        }
    }
    return ck.ok;
}

// 9. trichotomy between the predicted dimension and the limit behavior of I
bool criterion9(Checker& ck) {
    const LienardSystem mid = make(5, 9, {0, 0, 1, 0.1, 0, 0}, {0, 1, 0, 0, 0, 0, 0, 0, 0});
    const LienardSystem balanced = balance_search(mid, CoefFamily::A, 2, 0.2, 0.5, 1e-8);
    const std::vector<LienardSystem> systems = {
        quartic, mid, balanced,
        make(3, 3, {0, 0, 1, 0}, {0, 3, 1}),
        make(3, 3, {0, 0, 1, 1}, {0, 3, 1}),
        make(3, 5, {0, 0, 1, 0}, {0, 1, 0.3, 0, 0}),
    };
    for (std::size_t i = 0; i < systems.size(); ++i) {
        const LienardSystem& sys = systems[i];
        const std::string tag = "system " + std::to_string(i);
        ck.expect(sys.m < 2 * sys.n + 1, tag + " is below the critical balance");
        const Prediction p = classify(sys);
        if (!p.predicted_dim) {
            ck.expect(false, tag + " has a predicted dimension");
            continue;
        }
        const Rational thr = make_rational(2 * sys.n + 1 - sys.m, 2 * sys.n + 2 - sys.m);
        const double d = p.predicted_dim->value(), t = thr.value();
        const bool diverges = p.i_behavior.total != LimitKind::Converges;
        const bool zero = p.i_star && std::fabs(*p.i_star) <= 1e-6;
        if (d < t - 1e-15)
            ck.expect(diverges, tag + ": dim below threshold needs divergent I");
        else if (std::fabs(d - t) <= 1e-15)
            ck.expect(!diverges && !zero, tag + ": dim at threshold needs nonzero I*");
        else
            ck.expect(!diverges && zero, tag + ": dim above threshold needs vanishing I*");
    }
    return ck.ok;
}

// 10. determinism: repeated CLI runs produce byte-identical outputs
std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool criterion10(Checker& ck) {
    const std::string cli = LIENARD_CLI_PATH;
    const std::string dir = "acceptance_tmp";
    ck.expect(std::system(("mkdir -p " + dir).c_str()) == 0, "scratch directory");
    {
        std::ofstream sys(dir + "/t11a.json");
        sys << R"({"n":3,"m":1,"A":1.0,"b":[0,0,1,-0.5],"a":[0]})";
    }
    const std::vector<std::pair<std::string, std::string>> runs = {
        {"classify --system " + dir + "/t11a.json", "classify.json"},
        {"orbit --system " + dir + "/t11a.json --max-iter 2000", "orbit.csv"},
        {"portrait --system " + dir + "/t11a.json --format json", "portrait.json"},
        {"dim --system " + dir + "/t11a.json --max-iter 4000", "dim.csv"},
        {"verify --system " + dir + "/t11a.json --max-iter 4000 --format json", "verify.json"},
    };
    for (const auto& [args, name] : runs) {
        const std::string f1 = dir + "/run1_" + name, f2 = dir + "/run2_" + name;
        const int rc1 = std::system((cli + " " + args + " --out " + f1 + " > /dev/null").c_str());
        const int rc2 = std::system((cli + " " + args + " --out " + f2 + " > /dev/null").c_str());
        ck.expect(rc1 == 0 && rc2 == 0, name + " exit status");
        const std::string b1 = slurp(f1), b2 = slurp(f2);
        ck.expect(!b1.empty(), name + " nonempty");
        ck.expect(b1 == b2, name + " byte-identical rerun");
    }
    return ck.ok;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<bool(Checker&)>>> criteria = {
        {"estimator calibration on synthetic recursions", criterion1},
        {"dominant-odd-coefficient system end to end", criterion2},
        {"geometric accumulation at the critical balance", criterion3},
        {"balanced system above the critical balance", criterion4},
        {"symmetric systems stay fixed", criterion5},
        {"invariance identity for the divergence integral", criterion6},
        {"leading-term asymptotics of the branch maps", criterion7},
        {"singularity catalog eigenvalues", criterion8},
        {"dimension / integral-limit trichotomy", criterion9},
        {"deterministic CLI outputs", criterion10},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Checker ck;
        bool ok = false;
        std::string error;
        try {
            ok = criteria[i].second(ck);
        } catch (const std::exception& e) {
            ok = false;
            error = e.what();
        }
        std::cout << "criterion " << (i + 1) << " [" << criteria[i].first << "]: "
                  << (ok ? "PASS" : "FAIL") << "\n";
        if (!ok) {
            ++failures;
            std::cout << ck.log.str();
            if (!error.empty()) std::cout << "    exception: " << error << "\n";
        }
    }
    std::cout << (failures == 0 ? "all criteria passed" : "criteria failed") << "\n";
    return failures;
}
