#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "cylq/mcmc.hpp"
#include "cylq/stats.hpp"
#include "doctest.h"

using namespace cylq;

TEST_CASE("batch-means error shrinks like one over sqrt(samples)") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto make = [&](int n) {
    std::vector<double> v(static_cast<size_t>(n));
    for (auto& x : v) x = gauss(rng);
    return v;
  };
  BatchStats small = batch_means(make(4000));
  BatchStats large = batch_means(make(64000));
  CHECK(small.se > 0.0);
  double shrink = small.se / large.se;  // expect ~4
  CHECK(shrink > 2.0);
  CHECK(shrink < 8.0);
  CHECK(std::abs(large.mean) < 5.0 * large.se + 1e-12);
  CHECK_THROWS_AS(batch_means(std::vector<double>(10, 1.0)),
                  std::invalid_argument);
}

TEST_CASE("slice value equals the direct height sum") {
  ModularData md(0.25, 2);
  CylindricConfig cfg = deserialize("2 0 ; 2,1 ; 3,1,1 ; 1,1 ; 2,1,1");
  validate(cfg);
  for (int k : {1, 2}) {
    double r = std::pow(md.q, 2.0 * k);
    for (int tau = 1; tau <= 4; ++tau) {
      // direct finite sum: below some floor h = 0, above some cap h = y - 1/2
      double direct = 0.0;
      for (Site y = -40; y <= 200; ++y)
        direct += static_cast<double>(height(cfg, tau, y)) *
                  std::pow(r, y + 0.5);
      // geometric tail of the linear regime h = y - 1/2 beyond the cap
      for (Site y = 201;; ++y) {
        double term = (y + 0.5 - 1.0) * std::pow(r, y + 0.5);
        if (term < 1e-18) break;
        direct += term;
      }
      CHECK(slice_value(cfg, tau, k, md) ==
            doctest::Approx(direct / (2.0 * md.N)).epsilon(1e-11));
    }
  }
}

TEST_CASE("height profile of the empty stream is the frozen staircase") {
  ModularData md(0.3, 1);
  CylindricConfig empty;
  empty.N = 1;
  empty.columns.assign(2, Partition{});
  std::vector<CylindricConfig> stream(100, empty);
  HeightProfile hp = height_profile(stream, 1, md, -3, 5, 10);
  for (const auto& row : hp.rows) {
    double expect = std::max(0, row.y) / 2.0;
    CHECK(row.mean == doctest::Approx(expect).epsilon(1e-14));
    CHECK(row.se == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
  }
  CHECK_THROWS_AS(height_profile({}, 1, md, 0, 1), std::invalid_argument);
}

TEST_CASE("regularized incomplete gamma against closed forms") {
  for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    CHECK(regularized_gamma_q(0.5, x) ==
          doctest::Approx(std::erfc(std::sqrt(x))).epsilon(1e-12));
    CHECK(regularized_gamma_q(1.0, x) ==
          doctest::Approx(std::exp(-x)).epsilon(1e-12));
    // Q(2, x) = (1 + x) e^{-x}
    CHECK(regularized_gamma_q(2.0, x) ==
          doctest::Approx((1.0 + x) * std::exp(-x)).epsilon(1e-12));
  }
  CHECK(regularized_gamma_q(3.7, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("shift sampler passes chi-square against its own table") {
  double t = 0.5, u = 0.8;
  ShiftDistribution sd = shift_distribution(u, t);
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::vector<int> draws(300000);
  for (auto& s : draws) s = sample_shift(sd, rng);
  ChiSquareReport rep = shift_chi_square(draws, sd);
  CHECK(rep.dof >= 2);
  CHECK(rep.p_value > 0.01);
  // power: the same draws against a wrong table are rejected outright
  ShiftDistribution wrong = shift_distribution(1.4, t);
  CHECK(shift_chi_square(draws, wrong).p_value < 1e-8);
}

TEST_CASE("normality diagnostics separate gaussian from exponential") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss(2.0, 3.0);
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> g(20000), e(20000);
  for (auto& x : g) x = gauss(rng);
  for (auto& x : e) x = expo(rng);
  NormalityReport ng = normality(g);
  CHECK(std::abs(ng.skew_z) < 4.0);
  CHECK(std::abs(ng.kurt_z) < 4.0);
  CHECK(std::abs(normality(e).skew_z) > 10.0);
}

TEST_CASE("sampled profiles approach the limit shape and forget the column") {
  int N = 8;
  ModularData md(0.5, N);
  BoxTruncation box{144, 144};
  auto runs = run_chains(md, box, 12000, 3000, 4, 777, 4, 4);
  std::vector<CylindricConfig> all;
  for (auto& r : runs)
    for (auto& s : r.samples) all.push_back(std::move(s));
  Site lo = static_cast<Site>(std::floor(2 * N * liquid_lower_edge(md.t))) - 6;
  Site hi = 4 * N;
  HeightProfile even = height_profile(all, 2 * N, md, lo, hi, 32);
  HeightProfile odd = height_profile(all, N - 1, md, lo, hi, 32);
  CHECK(even.sup_distance < 0.15);
  for (size_t i = 0; i < even.rows.size(); ++i) {
    double gap = std::abs(even.rows[i].mean - odd.rows[i].mean);
    CHECK(gap < 4.0 * (even.rows[i].se + odd.rows[i].se) + 0.05);
  }
  // covariance estimate is symmetric with positive diagonal
  SliceMomentsReport rep =
      slice_moments(all, {{2 * N, 1}, {N, 2}}, md, 32);
  CHECK(rep.covariance[0][1] == doctest::Approx(rep.covariance[1][0]));
  CHECK(rep.covariance[0][0] > 0.0);
  CHECK(rep.covariance[1][1] > 0.0);
  CHECK(rep.covariance[0][0] * rep.covariance[1][1] -
            rep.covariance[0][1] * rep.covariance[1][0] >
        -1e-9);
}

TEST_CASE("shift variance decomposition matches the Wallis prediction") {
  int N = 16;
  ModularData md(0.5, N);
  ShiftDistribution sd = shift_distribution(1.0, md.t);
  BoxTruncation box{200, 200};
  auto runs = run_chains(md, box, 10000, 2500, 4, 2024, 4, 4);
  std::vector<double> vals;
  for (const auto& r : runs)
    for (const auto& cfg : r.samples)
      vals.push_back(slice_value(cfg, 2 * N, 1, md));
  ShiftVarianceDecomposition dec = variance_decomposition(vals, 1, md, sd);
  double extra = dec.shifted_var - dec.unshifted_var;
  CHECK(extra > 0.0);
  CHECK(std::abs(extra - dec.predicted_extra) < 0.25 * dec.predicted_extra);
}
