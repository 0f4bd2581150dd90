#include "lienard/relation.hpp"

#include <cmath>
#include <functional>

#include "lienard/charts.hpp"
#include "lienard/errors.hpp"
#include "lienard/quadrature.hpp"

namespace lienard {

namespace {

// safeguarded Newton for a decreasing function with f(lo) >= 0 >= f(hi)
double solve_decreasing(const std::function<double(double)>& f,
                        const std::function<double(double)>& fp, double lo, double hi,
                        double ftol) {
    double xl = lo, xh = hi;
    double rts = 0.5 * (lo + hi);
    double dxold = std::fabs(hi - lo), dx = dxold;
    double fv = f(rts);
    for (int it = 0; it < 200; ++it) {
        if (std::fabs(fv) <= ftol) return rts;
        const double dfv = fp(rts);
        const bool newton_bad = dfv == 0.0 ||
                                ((rts - xh) * dfv - fv) * ((rts - xl) * dfv - fv) > 0.0 ||
                                std::fabs(2.0 * fv) > std::fabs(dxold * dfv);
        if (newton_bad) {
            dxold = dx;
            dx = 0.5 * (xh - xl);
            rts = xl + dx;
        } else {
            dxold = dx;
            dx = fv / dfv;
            rts -= dx;
        }
        if (std::fabs(dx) <= 1e-16 * std::fabs(rts)) return rts;
        fv = f(rts);
        if (fv > 0.0)
            xl = rts;
        else
            xh = rts;
    }
    throw NonConvergence("solve_decreasing: no convergence");
}

struct StepResult {
    double value;
    double residual;
};

StepResult relation_step(const LienardSystem& sys, double y, Direction dir, double tol) {
    const Side eval_side = (dir == Direction::ForwardS) ? Side::Plus : Side::Minus;
    const Side target_side = (dir == Direction::ForwardS) ? Side::Minus : Side::Plus;
    const double quad_tol = 0.1 * tol;
    const double target = sdi_branch(sys, y, target_side, quad_tol, 1e-13).value;
    double Y = y;
    double fv = sdi_branch(sys, Y, eval_side, quad_tol, 1e-13).value - target;
    const double ftol = tol * std::max(1.0, std::fabs(target));
    for (int it = 0; it < 100; ++it) {
        if (std::fabs(fv) <= ftol) return {Y, std::fabs(fv)};
        const double x = branch_inverse(sys, Y, eval_side);
        const double dfv = sys.dF(x) / sys.G(x);  // derivative of the branch integral
        double step = fv / dfv;
        while (Y - step <= 0.0) step *= 0.5;
        Y -= step;
        fv = sdi_branch(sys, Y, eval_side, quad_tol, 1e-13).value - target;
    }
    throw NonConvergence("slow_relation: no convergence");
}

double dim_radius(const LienardSystem& sys, double y) {
    if (sys.m <= 2 * sys.n + 1) return std::pow(y, -1.0 / (sys.n + 1));
    return std::pow(y, -2.0 / (sys.m + 1));
}

}  // namespace

double slow_relation(const LienardSystem& sys, double y, Direction dir, double tol) {
    require_valid(sys);
    if (!(y > 0.0)) throw InvalidInput("slow_relation: requires y > 0");
    return relation_step(sys, y, dir, tol).value;
}

Orbit generate_orbit(const LienardSystem& sys, double y0, Direction dir, int max_iter,
                     double y_ceiling, double tol) {
    require_valid(sys);
    if (!(y0 > 0.0)) throw InvalidInput("generate_orbit: requires y0 > 0");
    Orbit orb;
    orb.direction = dir;
    orb.y.push_back(y0);
    orb.r.push_back(dim_radius(sys, y0));
    orb.residual.push_back(0.0);
    orb.termination = Termination::MaxIterations;
    for (int l = 0; l < max_iter; ++l) {
        StepResult st = relation_step(sys, orb.y.back(), dir, tol);
        if (st.value <= orb.y.back()) {
            orb.termination = Termination::NotDivergent;
            return orb;
        }
        orb.y.push_back(st.value);
        orb.r.push_back(dim_radius(sys, st.value));
        orb.residual.push_back(st.residual);
        if (st.value >= y_ceiling) {
            orb.termination = Termination::FloorReached;
            return orb;
        }
    }
    return orb;
}

namespace {

Orbit orbit_below(const LienardSystem& sys, double r0, double jtilde, Direction dir, int max_iter,
                  double r_floor, double rtilde, double tol) {
    const int n = sys.n;
    auto g_side = [&](Side side) {
        return [&sys, side](double s) {
            const double p = phi(sys, s, side);
            double num = (sys.n + 1) * std::pow(p, sys.n);
            for (int k = 1; k <= sys.n; ++k)
                num += k * sys.b[static_cast<std::size_t>(k)] * std::pow(s, sys.n + 1 - k) *
                       std::pow(p, k - 1);
            double den = sys.A * std::pow(p, sys.m);
            for (int k = 0; k < sys.m; ++k)
                den += sys.a[static_cast<std::size_t>(k)] * std::pow(s, sys.m - k) * std::pow(p, k);
            return num / (std::pow(s, 2 * sys.n + 2 - sys.m) * den);
        };
    };
    auto gm = g_side(Side::Minus), gp = g_side(Side::Plus);
    const bool forward = (dir == Direction::ForwardS);
    std::function<double(double)> gstep = forward ? std::function<double(double)>(gp)
                                                  : std::function<double(double)>(gm);
    CumulativeTail tail_step(gstep, rtilde);
    CumulativeTail tail_diff([&](double s) { return gm(s) - gp(s); }, rtilde);

    Orbit orb;
    orb.direction = dir;
    orb.termination = Termination::MaxIterations;
    orb.r.push_back(r0);
    orb.y.push_back(std::pow(r0, -(n + 1)));
    orb.residual.push_back(0.0);
    for (int l = 0; l < max_iter; ++l) {
        const double rl = orb.r.back();
        const double D = -(n + 1) * tail_diff(rl);
        const double target = (forward ? (jtilde - D) : (D - jtilde)) / (n + 1);
        if (target == 0.0) {  // exact fixed point: the orbit is constant
            orb.r.push_back(rl);
            orb.y.push_back(orb.y.back());
            orb.residual.push_back(0.0);
            continue;
        }
        if (!(target > 0.0)) {
            orb.termination = Termination::NotDivergent;
            return orb;
        }
        const double base = tail_step(rl);
        const double C = base + target;
        double lo = 0.5 * rl;
        int guard = 0;
        while (tail_step(lo) < C) {
            lo *= 0.5;
            if (++guard > 1000) {
                orb.termination = Termination::EquationUnsolvable;
                return orb;
            }
        }
        const double ftol = std::max(tol * target, 1e-14);
        const double rnext = solve_decreasing([&](double x) { return tail_step(x) - C; },
                                              [&](double x) { return -gstep(x); }, lo, rl, ftol);
        orb.r.push_back(rnext);
        orb.y.push_back(std::pow(rnext, -(n + 1)));
        orb.residual.push_back(std::fabs(tail_step(rnext) - C));
        if (rnext < r_floor) {
            orb.termination = Termination::FloorReached;
            return orb;
        }
    }
    return orb;
}

Orbit orbit_above(const LienardSystem& sys, double hr0, double istar_offset, Direction dir,
                  int max_iter, double hr_floor, double tol) {
    const int n = sys.n, m = sys.m;
    auto f_side = [&](double sigma) {
        return [&sys, sigma](double s) {
            double num = sys.n + 1.0;
            for (int k = 1; k <= sys.n; ++k)
                num += k * sys.b[static_cast<std::size_t>(k)] * std::pow(sigma, k) *
                       std::pow(s, sys.n + 1 - k);
            double den = sys.A;
            for (int k = 0; k < sys.m; ++k)
                den += sys.a[static_cast<std::size_t>(k)] * std::pow(sigma, k + 1) *
                       std::pow(s, sys.m - k);
            return std::pow(s, sys.m - 2 * sys.n - 2) * num * num / den;
        };
    };
    auto fm = f_side(1.0), fp = f_side(-1.0);

    // exact difference f_- - f_+ by polynomial arithmetic, so the symmetric
    // bulk cancels in coefficients rather than in floating point
    auto num_poly = [&](double sigma) {
        Poly N(static_cast<std::size_t>(n) + 1, 0.0);
        N[0] = n + 1.0;
        for (int k = 1; k <= n; ++k)
            N[static_cast<std::size_t>(n + 1 - k)] += k * sys.b[static_cast<std::size_t>(k)] * std::pow(sigma, k);
        return N;
    };
    auto den_poly = [&](double sigma) {
        Poly D(static_cast<std::size_t>(m) + 1, 0.0);
        D[0] = sys.A;
        for (int k = 0; k < m; ++k)
            D[static_cast<std::size_t>(m - k)] += sys.a[static_cast<std::size_t>(k)] * std::pow(sigma, k + 1);
        return D;
    };
    const Poly N1 = num_poly(1.0), N2 = num_poly(-1.0), D1 = den_poly(1.0), D2 = den_poly(-1.0);
    const Poly dnum = poly_trim(
        poly_sub(poly_mul(poly_mul(N1, N1), D2), poly_mul(poly_mul(N2, N2), D1)));
    auto fdiff = [&](double s) {
        return std::pow(s, m - 2 * n - 2) * poly_eval(dnum, s) /
               (poly_eval(D1, s) * poly_eval(D2, s));
    };

    const bool forward = (dir == Direction::ForwardS);
    const double up0 = psi(sys, hr0, Side::Plus);
    const double um0 = psi(sys, hr0, Side::Minus);
    const double anchor = std::max(up0, um0);
    CumulativeTail tail_m(fm, anchor), tail_p(fp, anchor), tail_d(fdiff, anchor);
    const double T0_diff = integrate(fdiff, 0.0, anchor).value;
    const double T0_step = integrate(forward ? std::function<double(double)>(fp)
                                             : std::function<double(double)>(fm),
                                     0.0, anchor)
                               .value;
    CumulativeTail& tail_step = forward ? tail_p : tail_m;
    auto fstep = [&](double s) { return forward ? fp(s) : fm(s); };

    Orbit orb;
    orb.direction = dir;
    orb.termination = Termination::MaxIterations;
    orb.r.push_back(hr0);
    orb.y.push_back(std::pow(hr0, -0.5 * (m + 1)));
    orb.residual.push_back(0.0);
    for (int l = 0; l < max_iter; ++l) {
        const double hrl = orb.r.back();
        const double up = psi(sys, hrl, Side::Plus);
        const double um = psi(sys, hrl, Side::Minus);
        const double prefix_diff = T0_diff - tail_d(std::min(up, anchor));
        const double dhat = prefix_diff + integrate(fm, up, um).value;
        const double target = forward ? (istar_offset - dhat) : (dhat - istar_offset);
        if (target == 0.0) {  // exact fixed point: the orbit is constant
            orb.r.push_back(hrl);
            orb.y.push_back(orb.y.back());
            orb.residual.push_back(0.0);
            continue;
        }
        if (!(target > 0.0)) {
            orb.termination = Termination::NotDivergent;
            return orb;
        }
        const double ustart = forward ? up : um;
        const double base = tail_step(ustart);
        const double capacity = T0_step - base;  // integral remaining down to u = 0
        if (target >= capacity) {
            orb.termination = Termination::EquationUnsolvable;
            return orb;
        }
        const double C = base + target;
        double lo = 0.5 * ustart;
        int guard = 0;
        while (tail_step(lo) < C) {
            lo *= 0.5;
            if (++guard > 1000) {
                orb.termination = Termination::EquationUnsolvable;
                return orb;
            }
        }
        const double ftol = std::max(tol * target, 1e-14);
        const double unext = solve_decreasing([&](double x) { return tail_step(x) - C; },
                                              [&](double x) { return -fstep(x); }, lo, ustart, ftol);
        const double hrnext =
            psi_inverse(sys, unext, forward ? Side::Plus : Side::Minus);
        orb.r.push_back(hrnext);
        orb.y.push_back(std::pow(hrnext, -0.5 * (m + 1)));
        orb.residual.push_back(std::fabs(tail_step(unext) - C));
        if (hrnext < hr_floor) {
            orb.termination = Termination::FloorReached;
            return orb;
        }
    }
    return orb;
}

}  // namespace

Orbit generate_orbit_compactified(const LienardSystem& sys, double r0, double jtilde,
                                  Direction dir, int max_iter, double r_floor, double rtilde,
                                  double tol) {
    require_valid(sys);
    if (!(r0 > 0.0)) throw InvalidInput("generate_orbit_compactified: requires r0 > 0");
    if (sys.m <= 2 * sys.n + 1) {
        if (!(r0 < rtilde))
            throw InvalidInput("generate_orbit_compactified: requires r0 < rtilde");
        return orbit_below(sys, r0, jtilde, dir, max_iter, r_floor, rtilde, tol);
    }
    return orbit_above(sys, r0, jtilde, dir, max_iter, r_floor, tol);
}

}  // namespace lienard
