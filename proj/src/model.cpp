#include "lienard/model.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "lienard/errors.hpp"

namespace lienard {

double LienardSystem::F(double x) const {
    double acc = 1.0;  // leading x^{n+1}
    for (int k = n; k >= 0; --k) acc = acc * x + b[static_cast<std::size_t>(k)];
    return acc;
}

double LienardSystem::dF(double x) const {
    double acc = static_cast<double>(n + 1);
    for (int k = n; k >= 1; --k) acc = acc * x + static_cast<double>(k) * b[static_cast<std::size_t>(k)];
    return acc;
}

double LienardSystem::G(double x) const {
    double acc = -A;
    for (int k = m - 1; k >= 0; --k) acc = acc * x - a[static_cast<std::size_t>(k)];
    return acc;
}

Poly LienardSystem::shape_p() const {
    // F'(x) = (n+1)x^n + sum_{k>=1} k b[k] x^{k-1}; b[1] = 0 under the assumptions,
    // but the quotient is formed from the k >= 2 terms regardless and b[1] is
    // reported by validate() separately.
    Poly p(static_cast<std::size_t>(n), 0.0);
    p.resize(static_cast<std::size_t>(n) + 1, 0.0);
    p[static_cast<std::size_t>(n) - 1] = static_cast<double>(n + 1);
    for (int k = 2; k <= n; ++k) p[static_cast<std::size_t>(k - 2)] += static_cast<double>(k) * b[static_cast<std::size_t>(k)];
    return poly_trim(p, 0.0);
}

Poly LienardSystem::shape_q() const {
    // -G(x)/x = A x^{m-1} + sum_{k>=1} a[k] x^{k-1}
    Poly q(static_cast<std::size_t>(m), 0.0);
    q[static_cast<std::size_t>(m - 1)] = A;
    for (int k = 1; k <= m - 1; ++k) q[static_cast<std::size_t>(k - 1)] += a[static_cast<std::size_t>(k)];
    return poly_trim(q, 0.0);
}

CaseTag LienardSystem::case_tag() const {
    if (m < 2 * n + 1) return CaseTag::Below;
    if (m == 2 * n + 1) return CaseTag::Critical;
    return CaseTag::Above;
}

LienardSystem system_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("system JSON parse error: ") + e.what());
    }
    for (const auto& item : j.items()) {
        const std::string& key = item.key();
        if (key != "n" && key != "m" && key != "A" && key != "b" && key != "a")
            throw InvalidInput("unknown key in system JSON: " + key);
    }
    LienardSystem sys;
    try {
        sys.n = j.at("n").get<int>();
        sys.m = j.at("m").get<int>();
        sys.A = j.value("A", 1.0);
        sys.b = j.at("b").get<std::vector<double>>();
        sys.a = j.at("a").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("system JSON field error: ") + e.what());
    }
    require_well_formed(sys);
    return sys;
}

std::string system_to_json(const LienardSystem& sys) {
    nlohmann::json j;
    j["n"] = sys.n;
    j["m"] = sys.m;
    j["A"] = sys.A;
    j["b"] = sys.b;
    j["a"] = sys.a;
    return j.dump();
}

void require_well_formed(const LienardSystem& sys) {
    if (sys.n < 1 || sys.m < 1) throw InvalidInput("n and m must be positive");
    if (sys.b.size() != static_cast<std::size_t>(sys.n) + 1)
        throw InvalidInput("b must have n+1 entries");
    if (sys.a.size() != static_cast<std::size_t>(sys.m))
        throw InvalidInput("a must have m entries");
    if (!std::isfinite(sys.A)) throw InvalidInput("A must be finite");
    for (double v : sys.b)
        if (!std::isfinite(v)) throw InvalidInput("b coefficients must be finite");
    for (double v : sys.a)
        if (!std::isfinite(v)) throw InvalidInput("a coefficients must be finite");
}

ValidationReport validate(const LienardSystem& sys) {
    ValidationReport rep;
    try {
        require_well_formed(sys);
    } catch (const InvalidInput& e) {
        rep.violations.emplace_back(e.what());
        return rep;
    }
    if (sys.b[0] != 0.0) rep.violations.emplace_back("F(0) != 0 (b_0 must be 0)");
    if (sys.b[1] != 0.0) rep.violations.emplace_back("F'(0) != 0 (b_1 must be 0)");
    if (sys.a[0] != 0.0) rep.violations.emplace_back("G(0) != 0 (a_0 must be 0)");
    if (sys.n % 2 == 0) rep.violations.emplace_back("n must be odd");
    if (sys.m % 2 == 0) rep.violations.emplace_back("m must be odd");
    if (sys.A <= 0.0) rep.violations.emplace_back("A must be positive");
    if (sys.m != 2 * sys.n + 1 && sys.A != 1.0)
        rep.violations.emplace_back("A must equal 1 when m != 2n+1");
    if (!poly_positive_everywhere(sys.shape_p()))
        rep.violations.emplace_back("F'(x)/x > 0 fails");
    if (!poly_positive_everywhere(sys.shape_q()))
        rep.violations.emplace_back("G(x)/x < 0 fails");
    rep.ok = rep.violations.empty();
    return rep;
}

void require_valid(const LienardSystem& sys) {
    ValidationReport rep = validate(sys);
    if (rep.ok) return;
    std::ostringstream oss;
    oss << "assumption violations:";
    for (const auto& v : rep.violations) oss << " [" << v << "]";
    throw AssumptionViolation(oss.str());
}

ParityProfile parity_profile(const LienardSystem& sys) {
    ParityProfile pp;
    for (int j = 0; 2 * j + 1 <= sys.n; ++j)
        if (sys.b[static_cast<std::size_t>(2 * j + 1)] != 0.0) pp.j_b = j;
    for (int j = 0; 2 * j <= sys.m - 1; ++j)
        if (sys.a[static_cast<std::size_t>(2 * j)] != 0.0) pp.j_a = j;
    pp.b_o_zero = !pp.j_b.has_value();
    pp.a_e_zero = !pp.j_a.has_value();
    if (pp.j_b && pp.j_a && sys.n - 2 * *pp.j_b == sys.m - 2 * *pp.j_a) {
        pp.C = sys.b[static_cast<std::size_t>(2 * *pp.j_b + 1)] * (sys.m - sys.n + 2 * *pp.j_b + 1) -
               sys.a[static_cast<std::size_t>(2 * *pp.j_a)] * (sys.n + 1);
    }
    return pp;
}

double branch_inverse(const LienardSystem& sys, double y, Side side, double rtol) {
    if (!(y > 0.0)) throw InvalidInput("branch_inverse requires y > 0");
    const double sgn = (side == Side::Minus) ? 1.0 : -1.0;
    // F is strictly monotone on each side of 0; bracket geometrically, then
    // Newton with a bisection fallback (Numerical Recipes rtsafe pattern).
    double hi = sgn;
    for (int i = 0; i < 2048 && sys.F(hi) < y; ++i) hi *= 2.0;
    double xl = 0.0, xh = hi;  // F - y < 0 at xl, > 0 at xh; ordering of xl,xh is irrelevant
    auto f = [&](double x) { return sys.F(x) - y; };
    double rts = 0.5 * (xl + xh);
    double dxold = std::fabs(xh - xl), dx = dxold;
    double fv = f(rts), dfv = sys.dF(rts);
    for (int it = 0; it < 200; ++it) {
        const bool newton_bad =
            ((rts - xh) * dfv - fv) * ((rts - xl) * dfv - fv) > 0.0 || std::fabs(2.0 * fv) > std::fabs(dxold * dfv);
        if (newton_bad || dfv == 0.0) {
            dxold = dx;
            dx = 0.5 * (xh - xl);
            rts = xl + dx;
        } else {
            dxold = dx;
            dx = fv / dfv;
            rts -= dx;
        }
        fv = f(rts);
        if (std::fabs(fv) <= rtol * y) return rts;
        dfv = sys.dF(rts);
        if (fv < 0.0)
            xl = rts;
        else
            xh = rts;
    }
    throw NonConvergence("branch_inverse: no convergence (validation gap?)");
}

}  // namespace lienard
