#include "lienard/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lienard/errors.hpp"

namespace lienard {

namespace {

void check_sequence(const std::vector<double>& p) {
    if (p.size() < 3) throw InvalidInput("dimension estimate: need at least 3 points");
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
        if (!(p[i] > p[i + 1]) || !(p[i + 1] > 0.0))
            throw InvalidInput("dimension estimate: points must be strictly decreasing and positive");
}

// gaps sorted ascending plus prefix sums, for O(log n) measure queries
struct GapTable {
    std::vector<double> gaps;
    std::vector<double> prefix;
    double p_last = 0.0;

    explicit GapTable(const std::vector<double>& p) {
        gaps.reserve(p.size() - 1);
        for (std::size_t i = 0; i + 1 < p.size(); ++i) gaps.push_back(p[i] - p[i + 1]);
        std::sort(gaps.begin(), gaps.end());
        prefix.resize(gaps.size() + 1, 0.0);
        std::partial_sum(gaps.begin(), gaps.end(), prefix.begin() + 1);
        p_last = p.back();
    }

    // measure of the delta-neighborhood of the points plus the interval [0, p_last]
    double measure(double delta) const {
        const auto it = std::upper_bound(gaps.begin(), gaps.end(), 2.0 * delta);
        const std::size_t k = static_cast<std::size_t>(it - gaps.begin());
        return p_last + 2.0 * delta + prefix[k] +
               2.0 * delta * static_cast<double>(gaps.size() - k);
    }
};

struct Fit {
    double slope, intercept, stderr_slope, rms_residual;
};

Fit ols(const std::vector<double>& x, const std::vector<double>& y) {
    const double nn = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = nn * sxx - sx * sx;
    Fit f{};
    f.slope = (nn * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / nn;
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - f.slope * x[i] - f.intercept;
        ss += e * e;
    }
    f.rms_residual = std::sqrt(ss / nn);
    f.stderr_slope = (x.size() > 2) ? std::sqrt(ss / (nn - 2.0) / (sxx - sx * sx / nn)) : 0.0;
    return f;
}

// a sequence whose tail ratio stays below 1 converges geometrically: dim 0
bool geometric_tail(const std::vector<double>& p) {
    const std::size_t take = std::min<std::size_t>(50, p.size() / 2);
    if (take < 3) return false;
    std::vector<double> ratios;
    for (std::size_t i = p.size() - take; i + 1 < p.size(); ++i) ratios.push_back(p[i + 1] / p[i]);
    std::nth_element(ratios.begin(), ratios.begin() + static_cast<long>(ratios.size() / 2),
                     ratios.end());
    return ratios[ratios.size() / 2] < 0.995;
}

}  // namespace

double neighborhood_length(const std::vector<double>& points, double delta) {
    if (points.empty() || !(delta > 0.0)) throw InvalidInput("neighborhood_length: bad input");
    std::vector<double> p = points;
    std::sort(p.begin(), p.end(), std::greater<double>());
    double total = 2.0 * delta;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) total += std::min(p[i] - p[i + 1], 2.0 * delta);
    return total;
}

DimensionEstimate dimension_neighborhood(const std::vector<double>& points, double decades) {
    check_sequence(points);
    DimensionEstimate est;
    if (geometric_tail(points)) {
        est.value = 0.0;
        est.method = "geometric";
        return est;
    }
    GapTable tab(points);
    const std::size_t ngaps = tab.gaps.size();
    const std::size_t hi_rank = ngaps > 100 ? ngaps - 100 : 0;
    const double delta_hi = 0.5 * tab.gaps[hi_rank];
    const double delta_lo = std::max(0.5 * tab.gaps.front(), delta_hi * std::pow(10.0, -decades));
    if (!(delta_lo < delta_hi)) throw WindowTooNarrow("dimension_neighborhood: empty delta window");
    const auto lo_it = std::lower_bound(tab.gaps.begin(), tab.gaps.end(), 2.0 * delta_lo);
    const auto hi_it = std::upper_bound(tab.gaps.begin(), tab.gaps.end(), 2.0 * delta_hi);
    if (hi_it - lo_it < 30)
        throw WindowTooNarrow("dimension_neighborhood: fewer than 30 gap scales in window");
    const int samples = 80;
    std::vector<double> lx, ly;
    for (int i = 0; i < samples; ++i) {
        const double t = static_cast<double>(i) / (samples - 1);
        const double delta = delta_lo * std::pow(delta_hi / delta_lo, t);
        lx.push_back(std::log(delta));
        ly.push_back(std::log(tab.measure(delta)));
    }
    const Fit f = ols(lx, ly);
    est.value = 1.0 - f.slope;
    est.method = "neighborhood";
    est.window = {delta_lo, delta_hi};
    est.stderr_ = f.stderr_slope;
    double lo_ratio = ly[0] - (1.0 - est.value) * lx[0];
    double hi_ratio = lo_ratio;
    for (std::size_t i = 1; i < lx.size(); ++i) {
        const double v = ly[i] - (1.0 - est.value) * lx[i];
        lo_ratio = std::min(lo_ratio, v);
        hi_ratio = std::max(hi_ratio, v);
    }
    est.nondegeneracy = std::exp(hi_ratio - lo_ratio);
    return est;
}

DimensionEstimate dimension_gap_law(const std::vector<double>& points) {
    check_sequence(points);
    DimensionEstimate est;
    if (geometric_tail(points)) {
        est.value = 0.0;
        est.method = "geometric";
        return est;
    }
    std::vector<double> p(points.begin() + static_cast<long>(points.size() / 5), points.end());
    std::vector<double> lx, ly;
    const double p_end = p[p.size() - 1];
    const double p_cut = p_end * 100.0;  // fit over the last two decades of the tail
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        const double g = p[i] - p[i + 1];
        if (p[i] > p_cut) continue;
        if (g <= 1e-12 * p[i]) continue;  // below solver resolution
        lx.push_back(std::log(p[i]));
        ly.push_back(std::log(g));
    }
    if (lx.size() < 10) throw WindowTooNarrow("dimension_gap_law: too few usable gaps");
    const Fit f = ols(lx, ly);
    if (f.rms_residual / std::log(10.0) > 0.2)
        throw NotAsymptotic("dimension_gap_law: tail is not a power law");
    const double beta = f.slope;
    est.value = (beta > 1.0) ? 1.0 - 1.0 / beta : 0.0;
    est.method = "gap-law";
    est.window = {std::exp(lx.back()), std::exp(lx.front())};
    est.stderr_ = f.stderr_slope;
    return est;
}

double nondegeneracy_diagnostic(const std::vector<double>& points, double dim) {
    check_sequence(points);
    GapTable tab(points);
    const std::size_t ngaps = tab.gaps.size();
    const std::size_t hi_rank = ngaps > 100 ? ngaps - 100 : 0;
    const double delta_hi = 0.5 * tab.gaps[hi_rank];
    const double delta_lo = std::max(0.5 * tab.gaps.front(), delta_hi * 1e-3);
    if (!(delta_lo < delta_hi)) throw WindowTooNarrow("nondegeneracy_diagnostic: empty window");
    double lo = 0.0, hi = 0.0;
    const int samples = 80;
    for (int i = 0; i < samples; ++i) {
        const double t = static_cast<double>(i) / (samples - 1);
        const double delta = delta_lo * std::pow(delta_hi / delta_lo, t);
        const double v = tab.measure(delta) / std::pow(delta, 1.0 - dim);
        if (i == 0) {
            lo = hi = v;
        } else {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    return hi / lo;
}

}  // namespace lienard
