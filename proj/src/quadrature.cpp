#include "lienard/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "lienard/errors.hpp"

namespace lienard {

namespace {

// Kronrod 15 abscissae/weights and embedded Gauss 7 weights on [-1, 1].
constexpr double kx[8] = {0.991455371120812639206854697526329,
                          0.949107912342758524526189684047851,
                          0.864864423359769072789712788640926,
                          0.741531185599394439863864773280788,
                          0.586087235467691130294144838258730,
                          0.405845151377397166906606412076961,
                          0.207784955007898467600689403773245,
                          0.000000000000000000000000000000000};
constexpr double kw[8] = {0.022935322010529224963732008058970,
                          0.063092092629978553290700663189204,
                          0.104790010322250183839876322541518,
                          0.140653259715525918745189590510238,
                          0.169004726639267902826583426598550,
                          0.190350578064785409913256402421014,
                          0.204432940075298892414161999234649,
                          0.209482141084727828012999174891714};
constexpr double gw[4] = {0.129484966168869693270611432679082,
                          0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975,
                          0.417959183673469387755102040816327};

struct Panel {
    double lo, hi, value, error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel make_panel(const std::function<double(double)>& f, double lo, double hi) {
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    double fc[15];
    for (int i = 0; i < 7; ++i) {
        fc[i] = f(c - h * kx[i]);
        fc[14 - i] = f(c + h * kx[i]);
    }
    fc[7] = f(c);
    double resk = kw[7] * fc[7];
    for (int i = 0; i < 7; ++i) resk += kw[i] * (fc[i] + fc[14 - i]);
    double resg = gw[3] * fc[7];
    for (int i = 0; i < 3; ++i) resg += gw[i] * (fc[2 * i + 1] + fc[13 - 2 * i]);
    Panel p;
    p.lo = lo;
    p.hi = hi;
    p.value = resk * h;
    // QUADPACK-style damped error estimate.
    const double raw = std::fabs((resk - resg) * h);
    double mean = 0.5 * resk;
    double asc = kw[7] * std::fabs(fc[7] - mean);
    for (int i = 0; i < 7; ++i) asc += kw[i] * (std::fabs(fc[i] - mean) + std::fabs(fc[14 - i] - mean));
    asc *= std::fabs(h);
    p.error = raw;
    if (asc != 0.0 && raw != 0.0) p.error = asc * std::min(1.0, std::pow(200.0 * raw / asc, 1.5));
    if (!std::isfinite(p.value) || !std::isfinite(p.error))
        throw QuadratureFailure("gk15: non-finite integrand value");
    return p;
}

}  // namespace

IntegralValue gk15(const std::function<double(double)>& f, double lo, double hi) {
    Panel p = make_panel(f, lo, hi);
    return {p.value, p.error};
}

IntegralValue integrate(const std::function<double(double)>& f, double lo, double hi,
                        double abs_tol, double rel_tol, int max_panels) {
    if (lo == hi) return {0.0, 0.0};
    std::priority_queue<Panel> heap;
    heap.push(make_panel(f, lo, hi));
    double total = heap.top().value, err = heap.top().error;
    int panels = 1;
    while (err > std::max(abs_tol, rel_tol * std::fabs(total))) {
        if (panels >= max_panels)
            throw QuadratureFailure("integrate: panel budget exhausted");
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (mid <= std::min(worst.lo, worst.hi) || mid >= std::max(worst.lo, worst.hi))
            throw QuadratureFailure("integrate: panel collapsed below machine resolution");
        Panel left = make_panel(f, worst.lo, mid);
        Panel right = make_panel(f, mid, worst.hi);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++panels;
    }
    return {total, err};
}

CumulativeTail::CumulativeTail(std::function<double(double)> f, double anchor, double abs_tol,
                               double rel_tol)
    : f_(std::move(f)), anchor_(anchor), abs_tol_(abs_tol), rel_tol_(rel_tol) {
    if (!(anchor > 0.0)) throw InvalidInput("CumulativeTail: anchor must be positive");
    breakpoints_.push_back(anchor);
    cum_.push_back(0.0);
}

void CumulativeTail::extend_to(double x) {
    while (breakpoints_.back() > x) {
        const double b = breakpoints_.back();
        const double nb = 0.5 * b;
        cum_.push_back(cum_.back() + integrate(f_, nb, b, abs_tol_, rel_tol_).value);
        breakpoints_.push_back(nb);
    }
}

double CumulativeTail::operator()(double x) {
    if (!(x > 0.0) || x > anchor_ * (1.0 + 1e-12))
        throw InvalidInput("CumulativeTail: query outside (0, anchor]");
    x = std::min(x, anchor_);
    extend_to(x);
    // locate the segment [b_{k+1}, b_k] containing x (breakpoints descending)
    auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x, std::greater<double>());
    std::size_t k = static_cast<std::size_t>(it - breakpoints_.begin());
    if (k > 0 && breakpoints_[k] < x) --k;
    if (breakpoints_[k] == x) return cum_[k];
    return cum_[k] + integrate(f_, x, breakpoints_[k], abs_tol_, rel_tol_).value;
}

}  // namespace lienard
