#pragma once

#include <string>
#include <utility>
#include <vector>

namespace lienard {

struct DimensionEstimate {
    double value = 0.0;
    std::string method;                      // neighborhood | gap-law | geometric
    std::pair<double, double> window{0, 0};  // delta (or abscissa) range used by the fit
    double stderr_ = 0.0;                    // standard error of the fitted slope
    double nondegeneracy = 0.0;              // max/min of M(delta)/delta^{1-d} over the window
};

// Exact length of the union of [p - delta, p + delta] over all points.
double neighborhood_length(const std::vector<double>& points, double delta);

// Box dimension from the scaling of the delta-neighborhood measure of the
// sequence together with its accumulation interval [0, p_last].  Points must
// be strictly decreasing and positive.  Throws WindowTooNarrow when too few
// gap scales fall inside the fitting window.
DimensionEstimate dimension_neighborhood(const std::vector<double>& points, double decades = 3.0);

// Box dimension from the power law gap ~ p^beta along the tail, using
// dim = 1 - 1/beta.  Throws NotAsymptotic when the tail is not a power law.
DimensionEstimate dimension_gap_law(const std::vector<double>& points);

// max/min of M(delta)/delta^{1-dim} over the fitting window; a ratio of order
// one means the sequence is Minkowski nondegenerate at that dimension.
double nondegeneracy_diagnostic(const std::vector<double>& points, double dim);

}  // namespace lienard
