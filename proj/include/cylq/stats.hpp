#pragma once
// Statistics over configuration sample streams: batch-means error bars,
// empirical height profiles against the limit shape, slice-observable
// moments against the exact and asymptotic formulas, shift goodness of fit,
// and normality diagnostics.

#include <cstdint>
#include <vector>

#include "cylq/core.hpp"
#include "cylq/limitshape.hpp"
#include "cylq/moments.hpp"
#include "cylq/transfer.hpp"

namespace cylq {

struct BatchStats {
  double mean = 0.0;
  double se = 0.0;
  std::int64_t n = 0;
  int batches = 0;
};

// Mean with a batch-means standard error; throws if fewer than two points
// per batch are available.
BatchStats batch_means(const std::vector<double>& series, int batches = 32);

// Slice observable of one configuration,
//   X = (1/2N) sum_x h(tau, x) r^x,   r = q^{2k},
// evaluated through the closed form -r^{1/2 + S} / ((1 - r) 2N) * F_r.
double slice_value(const CylindricConfig& cfg, int tau, int k,
                   const ModularData& md);

struct ProfileRow {
  Site y;        // position y + 1/2
  double mean;   // empirical h(tau, y) / (2N)
  double se;     // batch-means error
  double limit;  // limit_shape_height(y / 2N, t)
};
struct HeightProfile {
  std::vector<ProfileRow> rows;
  double sup_distance = 0.0;  // max |mean - limit| over rows
};
HeightProfile height_profile(const std::vector<CylindricConfig>& samples,
                             int tau, const ModularData& md, Site y_min,
                             Site y_max, int batches = 32);

struct SliceMomentsReport {
  std::vector<BatchStats> mean;                    // per slice
  std::vector<std::vector<double>> covariance;     // sample covariance
  std::vector<std::vector<double>> covariance_se;  // batch-means errors
  std::vector<double> third_central;               // kappa_3 per slice
};
SliceMomentsReport slice_moments(const std::vector<CylindricConfig>& samples,
                                 const std::vector<Slice>& slices,
                                 const ModularData& md, int batches = 32);

// Upper regularized incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
double regularized_gamma_q(double a, double x);

struct ChiSquareReport {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};
// Pearson chi-square of integer draws against the exact shift table, with
// low-expectation bins pooled so every cell expects >= 5 counts.
ChiSquareReport shift_chi_square(const std::vector<int>& draws,
                                 const ShiftDistribution& sd);

struct NormalityReport {
  double skew_z = 0.0;  // skewness / sqrt(6/n)
  double kurt_z = 0.0;  // excess kurtosis / sqrt(24/n)
};
NormalityReport normality(const std::vector<double>& series);

// Variance decomposition of the shift-mixed slice observable r^S X with the
// shift independent of the configuration:
//   Var(r^S X) = Var(X) + (C(2k,k) / (2k log t))^2 (k log t / N)^2-scaled
// shift term, which in the N -> infinity limit reads
//   Var(r^S X) - Var(X) -> (C(2k,k) / (2k) / log t)^2 Var(S).
struct ShiftVarianceDecomposition {
  double shifted_var = 0.0;    // exact: E[r^{2S}] E[X^2] - (E[r^S] E[X])^2
  double unshifted_var = 0.0;  // sample variance of X
  double predicted_extra = 0.0;  // asymptotic shift contribution
};
ShiftVarianceDecomposition variance_decomposition(
    const std::vector<double>& slice_values, int k, const ModularData& md,
    const ShiftDistribution& sd);

}  // namespace cylq
