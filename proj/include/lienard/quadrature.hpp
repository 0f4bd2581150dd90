#pragma once

#include <functional>
#include <vector>

namespace lienard {

struct IntegralValue {
    double value = 0.0;
    double error_estimate = 0.0;
};

// One Gauss-Kronrod 7-15 panel over [lo, hi]; error from |K15 - G7|.
IntegralValue gk15(const std::function<double(double)>& f, double lo, double hi);

// Globally adaptive quadrature: repeatedly splits the panel with the largest
// error until the summed estimate meets max(abs_tol, rel_tol * |value|).
// Throws QuadratureFailure past max_panels.
IntegralValue integrate(const std::function<double(double)>& f, double lo, double hi,
                        double abs_tol = 1e-10, double rel_tol = 1e-12, int max_panels = 20000);

// Cached integrals of f over [x, anchor] for 0 < x <= anchor, extended lazily
// toward 0 along halving breakpoints.  Each query costs one partial panel set
// plus any newly uncovered segments.
class CumulativeTail {
  public:
    CumulativeTail(std::function<double(double)> f, double anchor, double abs_tol = 1e-10,
                   double rel_tol = 1e-12);

    double anchor() const { return anchor_; }
    // integral of f over [x, anchor]; requires 0 < x <= anchor.
    double operator()(double x);

  private:
    void extend_to(double x);

    std::function<double(double)> f_;
    double anchor_;
    double abs_tol_, rel_tol_;
    std::vector<double> breakpoints_;  // anchor, anchor/2, anchor/4, ...
    std::vector<double> cum_;          // cum_[k] = integral over [breakpoints_[k], anchor]
};

}  // namespace lienard
