#include "anderson/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "anderson/errors.hpp"

namespace anderson {

namespace {
constexpr double kExtentQuantile = 5e-4;
constexpr double kEdgeWindowFraction = 0.05;
constexpr int kMinEdgeWindow = 3;
constexpr int kMinGap = 3;
constexpr double kCoreFitLoFrac = 1e-1;
}  // namespace

LocalizationFit localization_fit(const Vector& density, int center,
                                 double lo_frac, double hi_frac) {
    const int n = static_cast<int>(density.size());
    if (center < 0 || center >= n)
        throw ConfigError("localization_fit: center out of range");
    const double peak = density.maxCoeff();
    if (!(peak > 0.0)) throw FitError("localization_fit: density has no mass");

    // accumulate least-squares sums for log n vs |r - center|
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (int r = 0; r < n; ++r) {
        const double d = density(r);
        if (!(d > 0.0) || d < lo_frac * peak || d > hi_frac * peak) continue;
        const double x = std::abs(r - center);
        const double y = std::log(d);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count < 6)
        throw FitError("localization_fit: only " + std::to_string(count) +
                       " sites in the fit window (need 6)");
    const double det = count * sxx - sx * sx;
    if (det == 0.0) throw FitError("localization_fit: degenerate abscissae");
    const double slope = (count * sxy - sx * sy) / det;
    const double intercept = (sy - slope * sx) / count;
    if (!(slope < 0.0))
        throw FitError("localization_fit: non-decaying profile (slope >= 0)");

    double ss = 0.0;
    for (int r = 0; r < n; ++r) {
        const double d = density(r);
        if (!(d > 0.0) || d < lo_frac * peak || d > hi_frac * peak) continue;
        const double e = std::log(d) - (intercept + slope * std::abs(r - center));
        ss += e * e;
    }

    LocalizationFit fit;
    fit.slope = slope;
    fit.intercept = intercept;
    fit.points = count;
    fit.xi = -2.0 / slope;
    fit.residual = std::sqrt(ss / count);
    return fit;
}

double parity_contrast(const Vector& g, int ell) {
    if (ell < 2) throw ConfigError("parity_contrast: window must be >= 2");
    const int len = static_cast<int>(g.size());
    if (len % 2 == 0) throw ConfigError("parity_contrast: g must have odd length");
    const int zero = (len - 1) / 2;  // index of Delta = 0
    const int span = std::min(ell, zero);
    double odd = 0.0, even = 0.0;
    for (int d = -span; d <= span; ++d) {
        if (d == 0) continue;
        (std::abs(d) % 2 == 1 ? odd : even) += g(zero + d);
    }
    const double total = odd + even;
    if (!(total > 0.0))
        throw ConfigError("parity_contrast: no mass within the window");
    return (odd - even) / total;
}

void RegionPartition::validate() const {
    auto ordered = [](int lo, int hi) { return lo <= hi; };
    if (!ordered(left_lo, left_hi) || !ordered(center_lo, center_hi) ||
        !ordered(right_lo, right_hi))
        throw ConfigError("region partition: malformed window");
    if (left_lo < 0 || right_hi >= sites)
        throw ConfigError("region partition: window outside lattice");
    if (left_hi >= center_lo || center_hi >= right_lo)
        throw ConfigError("region partition: windows must be disjoint and ordered");
}

PairClassification classify_pair_mass(const Matrix& gamma,
                                      const RegionPartition& partition) {
    RegionPartition p = partition;
    p.sites = static_cast<int>(gamma.rows());
    p.validate();

    enum Region { kCenter = 0, kLeft, kRight, kGap };
    const int n = p.sites;
    std::vector<int> region(n, kGap);
    for (int i = p.center_lo; i <= p.center_hi; ++i) region[i] = kCenter;
    for (int i = p.left_lo; i <= p.left_hi; ++i) region[i] = kLeft;
    for (int i = p.right_lo; i <= p.right_hi; ++i) region[i] = kRight;

    PairClassification out;
    double total = 0.0;
    for (int q = 0; q < n; ++q) {
        for (int r = 0; r < n; ++r) {
            const double m = gamma(q, r);
            total += m;
            const int a = region[q], b = region[r];
            if (a == kCenter && b == kCenter)
                out.both_localized += m;
            else if ((a == kLeft && b == kLeft) || (a == kRight && b == kRight))
                out.both_ballistic_same_side += m;
            else if ((a == kLeft && b == kRight) || (a == kRight && b == kLeft))
                out.both_ballistic_opposite_sides += m;
            else if ((a == kCenter && (b == kLeft || b == kRight)) ||
                     (b == kCenter && (a == kLeft || a == kRight)))
                out.split += m;
            else
                out.unclassified += m;
        }
    }
    if (!(total > 0.0))
        throw ConfigError("classify_pair_mass: correlation matrix has no mass");
    out.both_localized /= total;
    out.both_ballistic_same_side /= total;
    out.both_ballistic_opposite_sides /= total;
    out.split /= total;
    out.unclassified /= total;
    return out;
}

double staggering_measure(const Vector& v) {
    const int n = static_cast<int>(v.size());
    if (n < 2 || max_abs(v) == 0.0)
        throw ConfigError("staggering_measure: zero or trivial vector");
    double flips = 0.0, total = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
        const double w = std::abs(v(i)) * std::abs(v(i + 1));
        total += w;
        if (v(i) * v(i + 1) < 0.0) flips += w;
    }
    if (!(total > 0.0))
        throw ConfigError("staggering_measure: no adjacent-site overlap");
    return flips / total;
}

double edge_leakage(const Vector& density, int margin) {
    const int n = static_cast<int>(density.size());
    if (margin < 0 || 2 * margin >= n)
        throw ConfigError("edge_leakage: margin must satisfy 0 <= margin < N/2");
    double mass = 0.0;
    for (int i = 0; i < margin; ++i) mass += density(i) + density(n - 1 - i);
    return mass;
}

RegionPartition make_region_partition(const Vector& density_mid,
                                      const Vector& density_late, int center) {
    const int n = static_cast<int>(density_mid.size());
    if (density_late.size() != n)
        throw ConfigError("make_region_partition: density size mismatch");

    // occupied extent of the analysis-time density from central quantiles
    const double total = density_mid.sum();
    if (!(total > 0.0))
        throw ConfigError("make_region_partition: empty density");
    double acc = 0.0;
    int lo = 0, hi = n - 1;
    for (int i = 0; i < n; ++i) {
        acc += density_mid(i);
        if (acc >= kExtentQuantile * total) {
            lo = i;
            break;
        }
    }
    acc = 0.0;
    for (int i = n - 1; i >= 0; --i) {
        acc += density_mid(i);
        if (acc >= kExtentQuantile * total) {
            hi = i;
            break;
        }
    }
    const int extent = hi - lo + 1;
    const int e = std::max(kMinEdgeWindow,
                           static_cast<int>(std::lround(kEdgeWindowFraction * extent)));

    RegionPartition p;
    p.sites = n;
    p.left_lo = lo;
    p.left_hi = lo + e - 1;
    p.right_hi = hi;
    p.right_lo = hi - e + 1;

    // center half-width from the late-time core decay, clipped to keep the
    // windows disjoint with a minimal gap
    const LocalizationFit core =
        localization_fit(density_late, center, kCoreFitLoFrac, 1.0);
    int h = static_cast<int>(std::lround(2.0 * core.xi));
    h = std::min(h, center - p.left_hi - 1 - kMinGap);
    h = std::min(h, p.right_lo - 1 - kMinGap - center);
    if (h < 1)
        throw ConfigError(
            "make_region_partition: no disjoint center window fits between the "
            "edge windows");
    p.center_lo = center - h;
    p.center_hi = center + h;
    p.validate();
    return p;
}

}  // namespace anderson
