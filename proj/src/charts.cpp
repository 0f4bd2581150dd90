#include "lienard/charts.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "lienard/errors.hpp"

namespace lienard {

namespace {

double ipow(double x, int e) {
    if (e < 0) return 1.0 / ipow(x, -e);
    double acc = 1.0;
    for (double base = x; e > 0; e >>= 1, base *= base)
        if (e & 1) acc *= base;
    return acc;
}

// s^{n+1} + sum_k b_k s^k u^{n+1-k}; s = +1 or -1 picks the half-plane
double f_dir(const LienardSystem& sys, double u, double s) {
    double acc = ipow(s, sys.n + 1);
    for (int k = 0; k <= sys.n; ++k)
        acc += sys.b[static_cast<std::size_t>(k)] * ipow(s, k) * ipow(u, sys.n + 1 - k);
    return acc;
}

// A s^m + sum_k a_k s^k u^{m-k}
double g_dir(const LienardSystem& sys, double u, double s) {
    double acc = sys.A * ipow(s, sys.m);
    for (int k = 0; k < sys.m; ++k)
        acc += sys.a[static_cast<std::size_t>(k)] * ipow(s, k) * ipow(u, sys.m - k);
    return acc;
}

// even-m variants: the blow-up uses doubled exponents and loses the s^m sign
double f_dir2(const LienardSystem& sys, double u, double s) {
    double acc = ipow(s, sys.n + 1);
    for (int k = 0; k <= sys.n; ++k)
        acc += sys.b[static_cast<std::size_t>(k)] * ipow(s, k) * ipow(u, 2 * (sys.n + 1 - k));
    return acc;
}
double g_dir2(const LienardSystem& sys, double u, double s) {
    double acc = sys.A;
    for (int k = 0; k < sys.m; ++k)
        acc += sys.a[static_cast<std::size_t>(k)] * ipow(s, k) * ipow(u, 2 * (sys.m - k));
    return acc;
}

// A x^m + sum_k a_k r^{m-k} x^k and x^{n+1} + sum_k b_k r^{n+1-k} x^k
double mix_a(const LienardSystem& sys, double r, double x) {
    double acc = sys.A * ipow(x, sys.m);
    for (int k = 0; k < sys.m; ++k)
        acc += sys.a[static_cast<std::size_t>(k)] * ipow(r, sys.m - k) * ipow(x, k);
    return acc;
}
double mix_b(const LienardSystem& sys, double r, double x) {
    double acc = ipow(x, sys.n + 1);
    for (int k = 0; k <= sys.n; ++k)
        acc += sys.b[static_cast<std::size_t>(k)] * ipow(r, sys.n + 1 - k) * ipow(x, k);
    return acc;
}

// sum_k k b_k s^k u^{n+1-k}
double fk_dir(const LienardSystem& sys, double u, double s) {
    double acc = 0.0;
    for (int k = 1; k <= sys.n; ++k)
        acc += static_cast<double>(k) * sys.b[static_cast<std::size_t>(k)] * ipow(s, k) * ipow(u, sys.n + 1 - k);
    return acc;
}
double fk_dir2(const LienardSystem& sys, double u, double s) {
    double acc = 0.0;
    for (int k = 1; k <= sys.n; ++k)
        acc += static_cast<double>(k) * sys.b[static_cast<std::size_t>(k)] * ipow(s, k) *
               ipow(u, 2 * (sys.n + 1 - k));
    return acc;
}

bool is_above(const LienardSystem& sys) { return sys.m > 2 * sys.n + 1; }

void require_above(const LienardSystem& sys, const char* what) {
    if (!is_above(sys)) throw ChartMismatch(std::string(what) + ": chart requires m > 2n+1");
}

}  // namespace

int chart_dimension(ChartKind kind) {
    switch (kind) {
        case ChartKind::MainPosX:
        case ChartKind::MainNegX:
        case ChartKind::MainPosY:
        case ChartKind::FamilyPosX:
        case ChartKind::FamilyNegX:
            return 2;
        default:
            return 3;
    }
}

std::array<double, 3> chart_vector_field(const LienardSystem& sys, ChartKind kind, double eps,
                                         const std::array<double, 3>& u) {
    require_well_formed(sys);
    const int n = sys.n, m = sys.m;
    const bool above = is_above(sys);
    const bool even_m = (m % 2 == 0);
    const int qp = m - 2 * n - 1;                        // exponent of the blow-up parameter
    const int q = even_m ? qp : (m + 1) / 2 - n - 1;     // contact order in the r-direction

    switch (kind) {
        case ChartKind::MainPosX: {
            const double r = u[0], yb = u[1];
            if (!above) {
                const double d = yb - f_dir(sys, r, 1.0);
                return {-r * d, -eps * ipow(r, 2 * n + 1 - m) * g_dir(sys, r, 1.0) - (n + 1) * yb * d, 0.0};
            }
            const double fd = even_m ? f_dir2(sys, r, 1.0) : f_dir(sys, r, 1.0);
            const double gd = even_m ? g_dir2(sys, r, 1.0) : g_dir(sys, r, 1.0);
            const double d = yb - ipow(r, q) * fd;
            const double rfac = even_m ? 0.5 : 1.0;
            return {-rfac * r * d, -eps * gd - 0.5 * (m + 1) * yb * d, 0.0};
        }
        case ChartKind::MainNegX: {
            const double r = u[0], yb = u[1];
            if (!above) {
                const double d = yb - f_dir(sys, r, -1.0);
                return {r * d, -eps * ipow(r, 2 * n + 1 - m) * g_dir(sys, r, -1.0) + (n + 1) * yb * d, 0.0};
            }
            const double fd = even_m ? f_dir2(sys, r, -1.0) : f_dir(sys, r, -1.0);
            const double gd = even_m ? g_dir2(sys, r, -1.0) : g_dir(sys, r, -1.0);
            const double d = yb - ipow(r, q) * fd;
            const double rfac = even_m ? 0.5 : 1.0;
            return {rfac * r * d, -eps * gd + 0.5 * (m + 1) * yb * d, 0.0};
        }
        case ChartKind::MainPosY: {
            if (above) throw ChartMismatch("MainPosY: chart requires m <= 2n+1");
            const double r = u[0], xb = u[1];
            const double ma = mix_a(sys, r, xb);
            return {eps / (n + 1) * ipow(r, 2 * n + 2 - m) * ma,
                    eps / (n + 1) * ipow(r, 2 * n + 1 - m) * xb * ma + 1.0 - mix_b(sys, r, xb), 0.0};
        }
        case ChartKind::FamilyPosX: {
            require_above(sys, "FamilyPosX");
            const double rt = u[0], yt = u[1], v = u[2];
            const double fd = even_m ? f_dir2(sys, v * rt, 1.0) : f_dir(sys, v * rt, 1.0);
            const double gd = even_m ? g_dir2(sys, v * rt, 1.0) : g_dir(sys, v * rt, 1.0);
            const double d = yt - ipow(rt, q) * fd;
            const double rfac = even_m ? 0.5 : 1.0;
            return {-rfac * rt * d, -gd - 0.5 * (m + 1) * yt * d, 0.0};
        }
        case ChartKind::FamilyNegX: {
            require_above(sys, "FamilyNegX");
            const double rt = u[0], yt = u[1], v = u[2];
            const double fd = even_m ? f_dir2(sys, v * rt, -1.0) : f_dir(sys, v * rt, -1.0);
            const double gd = even_m ? g_dir2(sys, v * rt, -1.0) : g_dir(sys, v * rt, -1.0);
            const double d = yt - ipow(rt, q) * fd;
            const double rfac = even_m ? 0.5 : 1.0;
            return {rfac * rt * d, -gd + 0.5 * (m + 1) * yt * d, 0.0};
        }
        case ChartKind::PhaseYPosPosX:
        case ChartKind::PhaseYNegPosX:
        case ChartKind::PhaseYPosNegX:
        case ChartKind::PhaseYNegNegX: {
            require_above(sys, "PhaseY");
            const double rt = u[0], v = u[1], et = u[2];
            const bool pos_x = (kind == ChartKind::PhaseYPosPosX || kind == ChartKind::PhaseYNegPosX);
            const bool pos_y = (kind == ChartKind::PhaseYPosPosX || kind == ChartKind::PhaseYPosNegX);
            const double s = pos_x ? 1.0 : -1.0;
            const double sy = pos_y ? 1.0 : -1.0;
            const double fd = even_m ? f_dir2(sys, v * rt, s) : f_dir(sys, v * rt, s);
            const double gd = even_m ? g_dir2(sys, v * rt, s) : g_dir(sys, v * rt, s);
            const double psi_c = 1.0 - sy * ipow(rt, q) * fd;
            if (!even_m) {
                const double drift = et * s * gd;
                const double L1 = drift + (n + 1) * psi_c;
                const double L2 = drift + 0.5 * (m + 1) * psi_c;
                const double sig = s * sy;
                return {sig * (2.0 / qp) * rt * L1, -sig * (2.0 / qp) * v * L2, sig * 2.0 * et * L2};
            }
            if (pos_x) {
                const double L1 = et * gd + (n + 1) * psi_c;
                const double L2 = et * gd + 0.5 * (m + 1) * psi_c;
                return {sy / qp * rt * L1, -sy / qp * v * L2, sy * 2.0 * et * L2};
            }
            // even m, negative-x side: the drift enters r' with the opposite sign
            const double M1 = et * gd - (n + 1) * psi_c;
            const double K = -et * gd + 0.5 * (m + 1) * psi_c;
            return {sy / qp * rt * M1, sy / qp * v * K, -sy * 2.0 * et * K};
        }
        case ChartKind::PhaseRPosX: {
            require_above(sys, "PhaseRPosX");
            const double yt = u[0], v = u[1], et = u[2];
            const double fd = even_m ? f_dir2(sys, v, 1.0) : f_dir(sys, v, 1.0);
            const double gd = even_m ? g_dir2(sys, v, 1.0) : g_dir(sys, v, 1.0);
            const double d = yt - fd;
            const double vfac = even_m ? 0.5 : 1.0;
            return {-et * gd - (n + 1) * yt * d, -vfac * v * d, qp * et * d};
        }
        case ChartKind::PhaseRNegX: {
            require_above(sys, "PhaseRNegX");
            const double yt = u[0], v = u[1], et = u[2];
            const double fd = even_m ? f_dir2(sys, v, -1.0) : f_dir(sys, v, -1.0);
            const double gd = even_m ? g_dir2(sys, v, -1.0) : g_dir(sys, v, -1.0);
            const double d = yt - fd;
            const double vfac = even_m ? 0.5 : 1.0;
            return {-et * gd + (n + 1) * yt * d, vfac * v * d, -qp * et * d};
        }
    }
    throw InvalidInput("chart_vector_field: unknown chart");
}

namespace {

// central-difference Jacobian with one Richardson step
Eigen::MatrixXd numeric_jacobian(const LienardSystem& sys, ChartKind kind,
                                 const std::array<double, 3>& at, int dim) {
    auto jac_at = [&](double h) {
        Eigen::MatrixXd J(dim, dim);
        for (int j = 0; j < dim; ++j) {
            std::array<double, 3> up = at, dn = at;
            up[static_cast<std::size_t>(j)] += h;
            dn[static_cast<std::size_t>(j)] -= h;
            const auto fu = chart_vector_field(sys, kind, 0.0, up);
            const auto fd = chart_vector_field(sys, kind, 0.0, dn);
            for (int i = 0; i < dim; ++i)
                J(i, j) = (fu[static_cast<std::size_t>(i)] - fd[static_cast<std::size_t>(i)]) / (2.0 * h);
        }
        return J;
    };
    const double h = 1e-3;
    return (4.0 * jac_at(0.5 * h) - jac_at(h)) / 3.0;
}

std::vector<double> numeric_eigs(const LienardSystem& sys, ChartKind kind,
                                 const std::array<double, 3>& at, int dim) {
    Eigen::MatrixXd J = numeric_jacobian(sys, kind, at, dim);
    Eigen::EigenSolver<Eigen::MatrixXd> es(J);
    std::vector<double> out;
    for (int i = 0; i < dim; ++i) out.push_back(es.eigenvalues()[i].real());
    std::sort(out.begin(), out.end());
    return out;
}

std::string kind_from_eigs(const std::vector<double>& eigs) {
    int pos = 0, neg = 0, zero = 0;
    for (double e : eigs) {
        if (e > 0.0)
            ++pos;
        else if (e < 0.0)
            ++neg;
        else
            ++zero;
    }
    if (zero == static_cast<int>(eigs.size())) return "linearly zero";
    if (zero > 0) return "semi-hyperbolic";
    if (pos > 0 && neg > 0) return "saddle";
    return pos > 0 ? "repelling node" : "attracting node";
}

void push_entry(std::vector<SingularityInfo>& out, const LienardSystem& sys, ChartKind chart,
                std::array<double, 3> loc, std::vector<double> eigs, std::string note = {}) {
    SingularityInfo si;
    si.chart = chart;
    si.location = loc;
    std::sort(eigs.begin(), eigs.end());
    si.eigen_symbolic = eigs;
    si.eigen_numeric = numeric_eigs(sys, chart, loc, chart_dimension(chart));
    si.kind = kind_from_eigs(si.eigen_symbolic);
    si.note = std::move(note);
    out.push_back(std::move(si));
}

}  // namespace

std::vector<SingularityInfo> singularity_catalog(const LienardSystem& sys) {
    require_well_formed(sys);
    std::vector<SingularityInfo> out;
    const int n = sys.n, m = sys.m;
    const double np1 = n + 1;
    const double sgn_n = (n % 2 == 0) ? 1.0 : -1.0;  // (-1)^n

    if (!is_above(sys)) {
        push_entry(out, sys, ChartKind::MainPosX, {0.0, 0.0, 0.0}, {1.0, np1});
        push_entry(out, sys, ChartKind::MainPosX, {0.0, 1.0, 0.0}, {0.0, -np1});
        push_entry(out, sys, ChartKind::MainNegX, {0.0, 0.0, 0.0}, {sgn_n, sgn_n * np1});
        push_entry(out, sys, ChartKind::MainNegX, {0.0, -sgn_n, 0.0}, {0.0, -sgn_n * np1});
        return out;
    }

    const bool even_m = (m % 2 == 0);
    const double qp = m - 2 * n - 1;
    const double mp1 = m + 1;

    push_entry(out, sys, ChartKind::MainPosX, {0.0, 0.0, 0.0}, {0.0, 0.0}, "resolved by blow-up");
    push_entry(out, sys, ChartKind::MainNegX, {0.0, 0.0, 0.0}, {0.0, 0.0}, "resolved by blow-up");

    const double rfac = even_m ? 0.5 : 1.0;
    if (sys.A < 0.0) {
        const double s = std::sqrt(-2.0 * sys.A / mp1);
        push_entry(out, sys, ChartKind::FamilyPosX, {0.0, s, 0.0}, {-rfac * s, -mp1 * s});
        push_entry(out, sys, ChartKind::FamilyPosX, {0.0, -s, 0.0}, {rfac * s, mp1 * s});
        if (!even_m) {
            push_entry(out, sys, ChartKind::FamilyNegX, {0.0, s, 0.0}, {s, mp1 * s});
            push_entry(out, sys, ChartKind::FamilyNegX, {0.0, -s, 0.0}, {-s, -mp1 * s});
        }
    }
    if (even_m && sys.A > 0.0) {
        const double s = std::sqrt(2.0 * sys.A / mp1);
        push_entry(out, sys, ChartKind::FamilyNegX, {0.0, s, 0.0}, {0.5 * s, mp1 * s});
        push_entry(out, sys, ChartKind::FamilyNegX, {0.0, -s, 0.0}, {-0.5 * s, -mp1 * s});
    }

    const double e1 = even_m ? np1 / qp : 2.0 * np1 / qp;
    const double e2 = even_m ? mp1 / (2.0 * qp) : mp1 / qp;
    push_entry(out, sys, ChartKind::PhaseYPosPosX, {0.0, 0.0, 0.0}, {e1, -e2, mp1});
    push_entry(out, sys, ChartKind::PhaseYNegPosX, {0.0, 0.0, 0.0}, {-e1, e2, -mp1});
    push_entry(out, sys, ChartKind::PhaseYPosNegX, {0.0, 0.0, 0.0}, {-e1, e2, -mp1});
    push_entry(out, sys, ChartKind::PhaseYNegNegX, {0.0, 0.0, 0.0}, {e1, -e2, mp1});

    // contact points of the critical curve with the blow-up locus
    push_entry(out, sys, ChartKind::PhaseYPosPosX, {1.0, 0.0, 0.0}, {-np1, 0.0, 0.0});
    if (n % 2 == 1)
        push_entry(out, sys, ChartKind::PhaseYPosNegX, {1.0, 0.0, 0.0}, {np1, 0.0, 0.0});
    else
        push_entry(out, sys, ChartKind::PhaseYNegNegX, {1.0, 0.0, 0.0}, {-np1, 0.0, 0.0});

    const double vfac = even_m ? 0.5 : 1.0;
    push_entry(out, sys, ChartKind::PhaseRPosX, {0.0, 0.0, 0.0},
               {np1, vfac, static_cast<double>(2 * n + 1 - m)});
    push_entry(out, sys, ChartKind::PhaseRNegX, {0.0, 0.0, 0.0},
               {sgn_n * np1, sgn_n * vfac, sgn_n * (2 * n + 1 - m)});
    return out;
}

bool canard_at_infinity_feasible(const LienardSystem& sys) {
    require_well_formed(sys);
    const bool n_odd = (sys.n % 2 == 1), m_odd = (sys.m % 2 == 1);
    if (sys.m < 2 * sys.n + 1) return sys.A == 1.0 && m_odd && n_odd;
    if (sys.m == 2 * sys.n + 1) return sys.A > 0.0 && n_odd;
    return m_odd && sys.A == 1.0 && n_odd;
}

namespace {

double phi_equation(const LienardSystem& sys, double r, double p) {
    double acc = 1.0 - ipow(p, sys.n + 1);
    for (int k = 0; k <= sys.n; ++k)
        acc -= sys.b[static_cast<std::size_t>(k)] * ipow(r, sys.n + 1 - k) * ipow(p, k);
    return acc;
}

double phi_equation_d(const LienardSystem& sys, double r, double p) {
    double acc = -(sys.n + 1) * ipow(p, sys.n);
    for (int k = 1; k <= sys.n; ++k)
        acc -= static_cast<double>(k) * sys.b[static_cast<std::size_t>(k)] * ipow(r, sys.n + 1 - k) *
               ipow(p, k - 1);
    return acc;
}

}  // namespace

double phi(const LienardSystem& sys, double r, Side side) {
    require_well_formed(sys);
    double p = (side == Side::Minus) ? 1.0 : -1.0;
    for (int it = 0; it < 100; ++it) {
        const double g = phi_equation(sys, r, p);
        if (std::fabs(g) <= 1e-12 * std::max(1.0, std::fabs(ipow(p, sys.n + 1)))) return p;
        const double gd = phi_equation_d(sys, r, p);
        if (gd == 0.0 || !std::isfinite(gd)) throw NewtonDivergence("phi: stationary iteration");
        const double step = g / gd;
        if (!std::isfinite(step)) throw NewtonDivergence("phi: non-finite step");
        p -= step;
    }
    throw NonConvergence("phi: no convergence");
}

double rtilde_max(const LienardSystem& sys) {
    require_well_formed(sys);
    auto solvable = [&](double r) {
        try {
            const double pm = phi(sys, r, Side::Minus);
            const double pp = phi(sys, r, Side::Plus);
            if (!(pm > pp + 1e-9)) return false;
            if (std::fabs(phi_equation_d(sys, r, pm)) < 1e-6) return false;
            if (std::fabs(phi_equation_d(sys, r, pp)) < 1e-6) return false;
            return true;
        } catch (const NumericalFailure&) {
            return false;
        }
    };
    const double cap = 0.5;  // chart validity radius is only claimed for small r
    double lo = cap;
    if (!solvable(lo)) {
        while (!solvable(lo)) {
            lo *= 0.5;
            if (lo < 1e-18) throw NumericalFailure("rtilde_max: no solvable radius found");
        }
    }
    double hi = lo;
    while (solvable(hi)) {
        hi *= 2.0;
        if (hi >= cap) return cap;
    }
    lo = 0.5 * hi;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (solvable(mid) ? lo : hi) = mid;
    }
    return lo;
}

IntegralValue J_branch(const LienardSystem& sys, double r, Side side, double rtilde,
                       double abs_tol, double rel_tol) {
    require_well_formed(sys);
    if (is_above(sys)) throw ChartMismatch("J_branch: requires m <= 2n+1");
    auto g = [&](double s) {
        const double p = phi(sys, s, side);
        double num = (sys.n + 1) * ipow(p, sys.n);
        for (int k = 1; k <= sys.n; ++k)
            num += static_cast<double>(k) * sys.b[static_cast<std::size_t>(k)] *
                   ipow(s, sys.n + 1 - k) * ipow(p, k - 1);
        const double den = ipow(s, 2 * sys.n + 2 - sys.m) * mix_a(sys, s, p);
        return num / den;
    };
    IntegralValue iv = integrate(g, r, rtilde, abs_tol, rel_tol);
    return {-(sys.n + 1) * iv.value, (sys.n + 1) * iv.error_estimate};
}

double psi_inverse(const LienardSystem& sys, double r, Side side) {
    require_well_formed(sys);
    require_above(sys, "psi_inverse");
    const double s = (side == Side::Minus) ? 1.0 : -1.0;
    double den = 1.0;
    for (int k = 0; k <= sys.n; ++k)
        den += sys.b[static_cast<std::size_t>(k)] * ipow(s, k) * ipow(r, sys.n + 1 - k);
    return std::pow(ipow(r, sys.n + 1) / den, 2.0 / (sys.m + 1));
}

double psi(const LienardSystem& sys, double hr, Side side) {
    require_well_formed(sys);
    require_above(sys, "psi");
    if (!(hr >= 0.0)) throw InvalidInput("psi: requires hr >= 0");
    if (hr == 0.0) return 0.0;
    const double s = (side == Side::Minus) ? 1.0 : -1.0;
    const double t = std::pow(hr, 0.5 * (sys.m + 1));
    double r = std::pow(t, 1.0 / (sys.n + 1));
    for (int it = 0; it < 100; ++it) {
        double den = 1.0, dden = 0.0;
        for (int k = 0; k <= sys.n; ++k) {
            const double c = sys.b[static_cast<std::size_t>(k)] * ipow(s, k);
            den += c * ipow(r, sys.n + 1 - k);
            dden += c * (sys.n + 1 - k) * ipow(r, sys.n - k);
        }
        const double f = ipow(r, sys.n + 1) - t * den;
        if (std::fabs(f) <= 1e-12 * std::max(ipow(r, sys.n + 1), t)) return r;
        const double df = (sys.n + 1) * ipow(r, sys.n) - t * dden;
        if (df == 0.0 || !std::isfinite(df)) throw NewtonDivergence("psi: stationary iteration");
        r -= f / df;
        if (!(r > 0.0) || !std::isfinite(r)) throw NewtonDivergence("psi: left the branch domain");
    }
    throw NonConvergence("psi: no convergence");
}

IntegralValue Jhat_branch(const LienardSystem& sys, double hr, Side side, double abs_tol,
                          double rel_tol) {
    require_well_formed(sys);
    require_above(sys, "Jhat_branch");
    const double r = psi(sys, hr, side);
    const double s = (side == Side::Minus) ? 1.0 : -1.0;
    auto f = [&](double u) {
        double num = sys.n + 1.0;
        for (int k = 1; k <= sys.n; ++k)
            num += static_cast<double>(k) * sys.b[static_cast<std::size_t>(k)] * ipow(s, k) *
                   ipow(u, sys.n + 1 - k);
        double den = sys.A;
        for (int k = 0; k < sys.m; ++k)
            den += sys.a[static_cast<std::size_t>(k)] * ipow(s, k + 1) * ipow(u, sys.m - k);
        return ipow(u, sys.m - 2 * sys.n - 2) * num * num / den;
    };
    IntegralValue iv = integrate(f, 0.0, r, abs_tol, rel_tol);
    return {-iv.value, iv.error_estimate};
}

double slow_dynamics_at_infinity(const LienardSystem& sys, double r, Side side) {
    require_well_formed(sys);
    const int n = sys.n, m = sys.m;
    if (!is_above(sys)) {
        const double p = phi(sys, r, side);
        return ipow(r, 2 * n + 2 - m) / (n + 1) * mix_a(sys, r, p);
    }
    const bool even_m = (m % 2 == 0);
    const double s = (side == Side::Minus) ? 1.0 : -1.0;
    const double lead = (n + 1) * ipow(s, n + 1);
    if (!even_m) {
        const double num = g_dir(sys, r, s);
        const double den = ipow(r, (m + 1) / 2 - n - 2) * (lead + fk_dir(sys, r, s));
        return num / den;
    }
    const double num = g_dir2(sys, r, s);
    const double den = 2.0 * ipow(r, m - 2 * n - 2) * (lead + fk_dir2(sys, r, s));
    return num / den;
}

}  // namespace lienard
