#include "cylq/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cylq {

BatchStats batch_means(const std::vector<double>& series, int batches) {
  std::int64_t n = static_cast<std::int64_t>(series.size());
  if (batches < 2) throw std::invalid_argument("need at least two batches");
  std::int64_t bl = n / batches;
  if (bl < 2)
    throw std::invalid_argument("insufficient samples for batch means");
  std::vector<double> bm;
  bm.reserve(static_cast<size_t>(batches));
  for (int b = 0; b < batches; ++b) {
    double s = 0.0;
    for (std::int64_t i = b * bl; i < (b + 1) * bl; ++i)
      s += series[static_cast<size_t>(i)];
    bm.push_back(s / static_cast<double>(bl));
  }
  BatchStats out;
  out.n = bl * batches;
  out.batches = batches;
  for (double x : bm) out.mean += x;
  out.mean /= batches;
  double var = 0.0;
  for (double x : bm) var += (x - out.mean) * (x - out.mean);
  var /= (batches - 1);
  out.se = std::sqrt(var / batches);
  return out;
}

double slice_value(const CylindricConfig& cfg, int tau, int k,
                   const ModularData& md) {
  double r = std::pow(md.q, 2.0 * k);
  return height_transform(cfg, tau, r) / (2.0 * md.N);
}

HeightProfile height_profile(const std::vector<CylindricConfig>& samples,
                             int tau, const ModularData& md, Site y_min,
                             Site y_max, int batches) {
  if (samples.empty()) throw std::invalid_argument("empty sample stream");
  HeightProfile out;
  for (Site y = y_min; y <= y_max; ++y) {
    std::vector<double> vals;
    vals.reserve(samples.size());
    for (const auto& cfg : samples)
      vals.push_back(static_cast<double>(height(cfg, tau, y)) / (2.0 * md.N));
    BatchStats bs = batch_means(vals, batches);
    double yy = (y + 0.5) / (2.0 * md.N);
    ProfileRow row{y, bs.mean, bs.se, limit_shape_height(yy, md.t)};
    out.sup_distance = std::max(out.sup_distance, std::abs(row.mean - row.limit));
    out.rows.push_back(row);
  }
  return out;
}

SliceMomentsReport slice_moments(const std::vector<CylindricConfig>& samples,
                                 const std::vector<Slice>& slices,
                                 const ModularData& md, int batches) {
  size_t ns = slices.size();
  std::vector<std::vector<double>> vals(ns);
  for (size_t s = 0; s < ns; ++s) {
    vals[s].reserve(samples.size());
    for (const auto& cfg : samples)
      vals[s].push_back(slice_value(cfg, slices[s].tau, slices[s].k, md));
  }
  SliceMomentsReport rep;
  rep.covariance.assign(ns, std::vector<double>(ns, 0.0));
  rep.covariance_se.assign(ns, std::vector<double>(ns, 0.0));
  std::vector<double> mean(ns, 0.0);
  std::int64_t n = static_cast<std::int64_t>(samples.size());
  for (size_t s = 0; s < ns; ++s) {
    rep.mean.push_back(batch_means(vals[s], batches));
    mean[s] = rep.mean[s].mean;
  }
  for (size_t a = 0; a < ns; ++a)
    for (size_t b = 0; b < ns; ++b) {
      // batch-means on the centered product series
      std::vector<double> prod;
      prod.reserve(static_cast<size_t>(n));
      for (std::int64_t i = 0; i < n; ++i)
        prod.push_back((vals[a][static_cast<size_t>(i)] - mean[a]) *
                       (vals[b][static_cast<size_t>(i)] - mean[b]));
      BatchStats bs = batch_means(prod, batches);
      rep.covariance[a][b] = bs.mean;
      rep.covariance_se[a][b] = bs.se;
    }
  for (size_t s = 0; s < ns; ++s) {
    double k3 = 0.0;
    for (double v : vals[s]) {
      double d = v - mean[s];
      k3 += d * d * d;
    }
    rep.third_central.push_back(k3 / static_cast<double>(n));
  }
  return rep;
}

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0)
    throw std::invalid_argument("regularized_gamma_q domain");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) {
    // lower series P(a, x); Q = 1 - P
    double term = 1.0 / a, sum = term, ap = a;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    double p = sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    return 1.0 - p;
  }
  // continued fraction for Q(a, x) (modified Lentz)
  double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i <= 500; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

ChiSquareReport shift_chi_square(const std::vector<int>& draws,
                                 const ShiftDistribution& sd) {
  if (draws.empty()) throw std::invalid_argument("empty shift stream");
  double n = static_cast<double>(draws.size());
  std::vector<std::int64_t> count(static_cast<size_t>(2 * sd.s_max + 1), 0);
  for (int s : draws) {
    int c = std::clamp(s, -sd.s_max, sd.s_max) + sd.s_max;
    ++count[static_cast<size_t>(c)];
  }
  // pool bins from both tails until every cell expects >= 5 counts
  struct Cell {
    double expected;
    double observed;
  };
  std::vector<Cell> cells;
  double pend_e = 0.0, pend_o = 0.0;
  for (int S = -sd.s_max; S <= sd.s_max; ++S) {
    pend_e += n * sd.p(S);
    pend_o += static_cast<double>(count[static_cast<size_t>(S + sd.s_max)]);
    if (pend_e >= 5.0) {
      cells.push_back({pend_e, pend_o});
      pend_e = pend_o = 0.0;
    }
  }
  if (!cells.empty()) {
    cells.back().expected += pend_e;
    cells.back().observed += pend_o;
  }
  ChiSquareReport rep;
  rep.dof = static_cast<int>(cells.size()) - 1;
  for (const auto& c : cells)
    rep.statistic += (c.observed - c.expected) * (c.observed - c.expected) /
                     c.expected;
  rep.p_value =
      rep.dof > 0 ? regularized_gamma_q(0.5 * rep.dof, 0.5 * rep.statistic)
                  : 1.0;
  return rep;
}

NormalityReport normality(const std::vector<double>& series) {
  std::int64_t n = static_cast<std::int64_t>(series.size());
  if (n < 8) throw std::invalid_argument("too few samples for normality test");
  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= static_cast<double>(n);
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : series) {
    double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= static_cast<double>(n);
  m3 /= static_cast<double>(n);
  m4 /= static_cast<double>(n);
  double g1 = m3 / std::pow(m2, 1.5);
  double g2 = m4 / (m2 * m2) - 3.0;
  NormalityReport rep;
  rep.skew_z = g1 / std::sqrt(6.0 / static_cast<double>(n));
  rep.kurt_z = g2 / std::sqrt(24.0 / static_cast<double>(n));
  return rep;
}

ShiftVarianceDecomposition variance_decomposition(
    const std::vector<double>& slice_values, int k, const ModularData& md,
    const ShiftDistribution& sd) {
  if (slice_values.size() < 2)
    throw std::invalid_argument("need at least two slice values");
  double n = static_cast<double>(slice_values.size());
  double ex = 0.0, ex2 = 0.0;
  for (double v : slice_values) {
    ex += v;
    ex2 += v * v;
  }
  ex /= n;
  ex2 /= n;
  double r = std::pow(md.q, 2.0 * k);
  double er = 0.0, er2 = 0.0;  // E[r^S], E[r^{2S}] from the exact table
  for (int S = -sd.s_max; S <= sd.s_max; ++S) {
    er += sd.p(S) * std::pow(r, S);
    er2 += sd.p(S) * std::pow(r, 2.0 * S);
  }
  ShiftVarianceDecomposition out;
  out.unshifted_var = (ex2 - ex * ex) * n / (n - 1.0);
  out.shifted_var = er2 * ex2 - er * er * ex * ex;
  double w = central_binomial(k) / (2.0 * k) / std::log(md.t);
  out.predicted_extra = w * w * shift_variance(sd);
  return out;
}

}  // namespace cylq
