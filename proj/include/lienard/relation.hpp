#pragma once

#include <vector>

#include "lienard/integrals.hpp"
#include "lienard/model.hpp"

namespace lienard {

// ForwardS iterates y -> S(y) with I_-(y) = I_+(S(y)); InverseS iterates the
// inverse map.  An orbit escapes to infinity under ForwardS when I < 0 and
// under InverseS when I > 0.
enum class Direction { ForwardS, InverseS };

enum class Termination { MaxIterations, FloorReached, EquationUnsolvable, NotDivergent };

struct Orbit {
    Direction direction = Direction::ForwardS;
    std::vector<double> y;         // heights of the slow segments
    std::vector<double> r;         // compactified radii used for dimension estimates
    std::vector<double> residual;  // per-step defect of the defining equation
    Termination termination = Termination::MaxIterations;
};

// One application of S (ForwardS) or S^{-1} (InverseS) at height y > 0.
double slow_relation(const LienardSystem& sys, double y, Direction dir, double tol = 1e-10);

// Orbit iterated directly in the y variable; r is filled with y^{-1/(n+1)}
// (m <= 2n+1) or y^{-2/(m+1)} (m > 2n+1).  Stops at max_iter, when y leaves
// [y0, y_ceiling), or when the iteration stops increasing.
Orbit generate_orbit(const LienardSystem& sys, double y0, Direction dir, int max_iter,
                     double y_ceiling = 1e18, double tol = 1e-10);

// Orbit iterated in the compactified radius, with every step expressed as a
// gap equation so no large quantities are subtracted.  For m <= 2n+1 r0 is the
// main-chart radius and jtilde the anchor constant of the recursion; for
// m > 2n+1 r0 is the parabolic radius and jtilde the residual limit value of I
// (zero for a balanced system).
Orbit generate_orbit_compactified(const LienardSystem& sys, double r0, double jtilde,
                                  Direction dir, int max_iter, double r_floor, double rtilde,
                                  double tol = 1e-10);

}  // namespace lienard
