#pragma once

#include <array>
#include <string>
#include <vector>

#include "lienard/model.hpp"
#include "lienard/quadrature.hpp"

namespace lienard {

// Charts covering the circle at infinity.  Main* are the compactification
// charts; Family*/PhaseY*/PhaseR* are the blow-up charts used above the
// critical balance (m > 2n+1).
enum class ChartKind {
    MainPosX,
    MainNegX,
    MainPosY,
    FamilyPosX,
    FamilyNegX,
    PhaseYPosPosX,
    PhaseYNegPosX,
    PhaseRPosX,
    PhaseYPosNegX,
    PhaseYNegNegX,
    PhaseRNegX
};

// State dimension actually used by a chart (2 for Main*/Family*, 3 for Phase*).
int chart_dimension(ChartKind kind);

// Exact vector field in the given chart.  Main* charts read (u[0], u[1]) and
// the slow parameter eps; Family* charts read (u[0], u[1]) with the blow-up
// parameter in u[2] (held constant); Phase* charts are 3-dimensional and
// ignore eps.  Throws ChartMismatch when the chart does not exist for the
// system's balance case.
std::array<double, 3> chart_vector_field(const LienardSystem& sys, ChartKind kind, double eps,
                                         const std::array<double, 3>& u);

struct SingularityInfo {
    ChartKind chart;
    std::array<double, 3> location{};
    std::vector<double> eigen_symbolic;  // closed-form eigenvalues, ascending
    std::vector<double> eigen_numeric;   // from a finite-difference Jacobian, ascending
    std::string kind;                    // node/saddle/semi-hyperbolic/linearly zero
    std::string note;
};

// Every singularity at infinity (eps = 0 slice), with closed-form and
// numerically recomputed eigenvalues.  Accepts any well-formed system.
std::vector<SingularityInfo> singularity_catalog(const LienardSystem& sys);

// Whether the geometry admits a canard-type passage at infinity.
bool canard_at_infinity_feasible(const LienardSystem& sys);

// Branch of the critical curve in the main charts: solves
// 1 - phi^{n+1} - sum_k b_k r^{n+1-k} phi^k = 0 with phi(0) = +1 (Minus) or
// -1 (Plus).  Residual at return is below 1e-12.
double phi(const LienardSystem& sys, double r, Side side);

// Largest r (dyadic scan, capped) below which both phi branches exist and are
// regular; the orbit machinery anchors its integrals at rtilde_max()/2.
double rtilde_max(const LienardSystem& sys);

// J_-(r)/J_+(r): entry/exit integrals along the critical curve at infinity,
// anchored at rtilde; negative for 0 < r < rtilde.  Only for m <= 2n+1.
IntegralValue J_branch(const LienardSystem& sys, double r, Side side, double rtilde,
                       double abs_tol = 1e-10, double rel_tol = 1e-12);

// Branch parametrization above the critical balance: psi solves
// r = hr^{(m+1)/(2(n+1))} (1 + sum_k b_k sigma^k r^{n+1-k})^{1/(n+1)} with
// sigma = +1 (Minus) or -1 (Plus); psi_inverse is the closed-form inverse.
double psi(const LienardSystem& sys, double hr, Side side);
double psi_inverse(const LienardSystem& sys, double r, Side side);

// Jhat_{-/+}(hr) = -integral of f_{-/+} over [0, psi_{-/+}(hr)]; m > 2n+1 only.
IntegralValue Jhat_branch(const LienardSystem& sys, double hr, Side side, double abs_tol = 1e-10,
                          double rel_tol = 1e-12);

// Drift of the slow dynamics along the circle at infinity in the chart on the
// requested side (Minus = positive-x chart, Plus = negative-x chart).
double slow_dynamics_at_infinity(const LienardSystem& sys, double r, Side side);

}  // namespace lienard
