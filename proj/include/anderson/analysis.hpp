#pragma once

#include "anderson/types.hpp"

namespace anderson {

struct LocalizationFit {
    double xi = 0.0;        // decay length of the density envelope e^{-2|r-c|/xi}
    double residual = 0.0;  // rms of log-density fit residuals
    int points = 0;
    double slope = 0.0;
    double intercept = 0.0;
};

/// Least-squares fit of log n_r versus |r - center| over the sites where
/// n_r lies in [lo_frac, hi_frac] * max(n). Returns xi = -2/slope. Throws
/// FitError when fewer than 6 sites qualify or the fitted slope is not
/// negative (distribution not exponentially localized).
LocalizationFit localization_fit(const Vector& density, int center,
                                 double lo_frac = 1e-8, double hi_frac = 1e-1);

/// Contrast between odd and even inter-particle separations within
/// |Delta| <= ell (Delta = 0 excluded):
///   C = (sum_odd g - sum_even g) / (sum g),  C in [-1, 1].
/// `g` is indexed as returned by interparticle_distance. Throws ConfigError
/// for ell < 2 or when the window carries no mass.
double parity_contrast(const Vector& g, int ell);

/// Disjoint site windows: a localized center region and two ballistic edge
/// regions at the distribution extremes; whatever is in between is gap.
struct RegionPartition {
    int center_lo = 0, center_hi = 0;
    int left_lo = 0, left_hi = 0;
    int right_lo = 0, right_hi = 0;
    int sites = 0;

    void validate() const;  // throws ConfigError if windows overlap/out of range
};

/// Fractions of correlation mass (normalized to 1) by window membership of
/// the detection pair (q, r).
struct PairClassification {
    double both_localized = 0.0;
    double both_ballistic_same_side = 0.0;
    double both_ballistic_opposite_sides = 0.0;
    double split = 0.0;
    double unclassified = 0.0;
};

PairClassification classify_pair_mass(const Matrix& gamma,
                                      const RegionPartition& partition);

/// Fraction of adjacent-site amplitude overlap with opposite signs:
/// 0 for flat-phased eigenvectors, 1 for staggered ones. Throws ConfigError
/// on (numerically) zero vectors or vanishing adjacent overlap.
double staggering_measure(const Vector& eigenvector);

/// Total density within `margin` sites of either lattice end.
double edge_leakage(const Vector& density, int margin);

/// Partition recipe used by the experiment drivers (constants frozen after
/// first measurement):
///  - occupied extent from the central mass quantiles [eps, 1-eps], eps = 5e-4;
///  - edge windows cover the outermost 5% of the extent (>= 3 sites);
///  - center half-width h = 2 * xi_core, where xi_core is a localization fit
///    restricted to the top decade ([0.1, 1] * peak) of `density_late`,
///    clipped so a gap of >= 3 sites separates center and edge windows.
/// `density_mid` fixes the extent (analysis time), `density_late` the core
/// width (latest available time). Throws FitError / ConfigError when no
/// disjoint partition exists.
RegionPartition make_region_partition(const Vector& density_mid,
                                      const Vector& density_late, int center);

}  // namespace anderson
