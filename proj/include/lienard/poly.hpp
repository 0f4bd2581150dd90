#pragma once

#include <vector>

namespace lienard {

// Dense polynomial, coefficients in ascending powers; poly[k] multiplies x^k.
using Poly = std::vector<double>;

double poly_eval(const Poly& p, double x);
Poly poly_derivative(const Poly& p);
Poly poly_add(const Poly& p, const Poly& q);
Poly poly_sub(const Poly& p, const Poly& q);
Poly poly_mul(const Poly& p, const Poly& q);
Poly poly_scale(const Poly& p, double c);
Poly poly_reflect(const Poly& p);  // p(-x)
// Coefficients reversed against a nominal degree (>= actual degree): x^deg * p(1/x).
Poly poly_reverse(const Poly& p, int nominal_degree);
// Drop leading coefficients tiny relative to the largest one.
Poly poly_trim(const Poly& p, double rel_eps = 1e-13);
int poly_degree(const Poly& p);

// Number of distinct real roots, by a Sturm chain over (-inf, +inf).
int count_real_roots(const Poly& p);

// p(x) > 0 for all real x, decided exactly: even degree, positive leading and
// constant coefficients, and no real roots.
bool poly_positive_everywhere(const Poly& p);

}  // namespace lienard
