#include "lienard/poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace lienard {

double poly_eval(const Poly& p, double x) {
    double acc = 0.0;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

Poly poly_derivative(const Poly& p) {
    if (p.size() <= 1) return {};
    Poly d(p.size() - 1);
    for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = static_cast<double>(k) * p[k];
    return d;
}

Poly poly_add(const Poly& p, const Poly& q) {
    Poly r(std::max(p.size(), q.size()), 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) r[i] += p[i];
    for (std::size_t i = 0; i < q.size(); ++i) r[i] += q[i];
    return r;
}

Poly poly_sub(const Poly& p, const Poly& q) {
    Poly r(std::max(p.size(), q.size()), 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) r[i] += p[i];
    for (std::size_t i = 0; i < q.size(); ++i) r[i] -= q[i];
    return r;
}

Poly poly_mul(const Poly& p, const Poly& q) {
    if (p.empty() || q.empty()) return {};
    Poly r(p.size() + q.size() - 1, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
    return r;
}

Poly poly_scale(const Poly& p, double c) {
    Poly r = p;
    for (double& v : r) v *= c;
    return r;
}

Poly poly_reflect(const Poly& p) {
    Poly r = p;
    for (std::size_t k = 1; k < r.size(); k += 2) r[k] = -r[k];
    return r;
}

Poly poly_reverse(const Poly& p, int nominal_degree) {
    Poly r(static_cast<std::size_t>(nominal_degree) + 1, 0.0);
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] != 0.0) r[static_cast<std::size_t>(nominal_degree) - k] = p[k];
    }
    return r;
}

Poly poly_trim(const Poly& p, double rel_eps) {
    double big = 0.0;
    for (double v : p) big = std::max(big, std::fabs(v));
    if (big == 0.0) return {};
    Poly r = p;
    while (!r.empty() && std::fabs(r.back()) <= rel_eps * big) r.pop_back();
    return r;
}

int poly_degree(const Poly& p) {
    Poly t = poly_trim(p);
    return t.empty() ? -1 : static_cast<int>(t.size()) - 1;
}

namespace {

// Remainder of p mod q, then normalized to unit max-norm to keep the chain scaled.
Poly normalized_remainder(Poly p, const Poly& q) {
    const int dq = static_cast<int>(q.size()) - 1;
    const double lead = q.back();
    while (static_cast<int>(p.size()) - 1 >= dq) {
        const int dp = static_cast<int>(p.size()) - 1;
        const double factor = p.back() / lead;
        for (int i = 0; i <= dq; ++i) p[static_cast<std::size_t>(dp - dq + i)] -= factor * q[static_cast<std::size_t>(i)];
        p.pop_back();
        p = poly_trim(p, 1e-13);
        if (p.empty()) break;
    }
    double big = 0.0;
    for (double v : p) big = std::max(big, std::fabs(v));
    if (big > 0.0)
        for (double& v : p) v /= big;
    return p;
}

int sign_at_infinity(const Poly& p, bool plus_side) {
    if (p.empty()) return 0;
    double lead = p.back();
    int deg = static_cast<int>(p.size()) - 1;
    int s = lead > 0 ? 1 : -1;
    if (!plus_side && (deg % 2 == 1)) s = -s;
    return s;
}

int sign_changes(const std::vector<int>& signs) {
    int changes = 0;
    int prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

}  // namespace

int count_real_roots(const Poly& p_in) {
    Poly p = poly_trim(p_in);
    if (poly_degree(p) <= 0) return 0;
    // Sturm chain; early termination at the gcd still counts distinct roots.
    std::vector<Poly> chain;
    chain.push_back(p);
    chain.push_back(poly_trim(poly_derivative(p)));
    while (poly_degree(chain.back()) >= 1) {
        Poly rem = normalized_remainder(chain[chain.size() - 2], chain.back());
        if (rem.empty()) break;
        for (double& v : rem) v = -v;
        chain.push_back(rem);
    }
    std::vector<int> at_minus, at_plus;
    for (const Poly& q : chain) {
        at_minus.push_back(sign_at_infinity(q, false));
        at_plus.push_back(sign_at_infinity(q, true));
    }
    return sign_changes(at_minus) - sign_changes(at_plus);
}

bool poly_positive_everywhere(const Poly& p_in) {
    Poly p = poly_trim(p_in);
    if (p.empty()) return false;
    if (p.size() == 1) return p[0] > 0.0;
    int deg = static_cast<int>(p.size()) - 1;
    if (deg % 2 != 0) return false;
    if (p.back() <= 0.0 || p.front() <= 0.0) return false;
    return count_real_roots(p) == 0;
}

}  // namespace lienard
