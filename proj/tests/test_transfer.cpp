#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "cylq/core.hpp"
#include "cylq/special.hpp"
#include "cylq/transfer.hpp"

using namespace cylq;

TEST_CASE("state space size is binom(L+R, L)") {
  CHECK(TransferEngine(1, 0.5, {2, 2}).num_states() == 6);
  CHECK(TransferEngine(1, 0.5, {3, 2}).num_states() == 10);
  CHECK(TransferEngine(1, 0.5, {4, 4}).num_states() == 70);
}

TEST_CASE("partition function equals brute-force enumeration") {
  for (double q : {0.3, 0.6}) {
    for (int N : {1, 2}) {
      TransferEngine eng(N, q, {3, 3});
      auto cfgs = eng.enumerate_configs();
      // enumeration returns normalized probabilities; recompute raw Z
      double Z = 0.0;
      for (auto& [cfg, p] : cfgs) {
        double w = 1.0;
        for (auto& la : cfg.columns)
          w *= std::pow(q, static_cast<double>(la.size()));
        Z += w;
      }
      CHECK(eng.partition_function() == doctest::Approx(Z).epsilon(1e-12));
      // probabilities sum to one
      double tot = 0.0;
      for (auto& [cfg, p] : cfgs) tot += p;
      CHECK(tot == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("expectations match enumeration averages") {
  double q = 0.45;
  for (int N : {1, 2}) {
    TransferEngine eng(N, q, {3, 3});
    auto cfgs = eng.enumerate_configs();
    double r1 = 0.35, r2 = 0.6;
    int tau1 = 1, tau2 = std::min(2 * N, 3);
    double direct1 = 0.0, direct2 = 0.0, direct_corr = 0.0;
    Site x = -1;
    for (auto& [cfg, p] : cfgs) {
      direct1 += p * observable_F(cfg.column(tau1), r1);
      direct2 += p * observable_F(cfg.column(tau1), r1) *
                 observable_F(cfg.column(tau2), r2);
      direct_corr += p * (is_occupied(cfg, tau1, x) ? 1.0 : 0.0);
    }
    CHECK(eng.observable_expectation({{tau1, r1}}) ==
          doctest::Approx(direct1).epsilon(1e-12));
    CHECK(eng.observable_expectation({{tau1, r1}, {tau2, r2}}) ==
          doctest::Approx(direct2).epsilon(1e-12));
    CHECK(eng.correlation({{tau1, x}}) ==
          doctest::Approx(direct_corr).epsilon(1e-12));
  }
}

TEST_CASE("two-point correlations match enumeration") {
  double q = 0.5;
  TransferEngine eng(2, q, {3, 3});
  auto cfgs = eng.enumerate_configs();
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    int taua = 1 + static_cast<int>(rng() % 4);
    int taub = 1 + static_cast<int>(rng() % 4);
    Site xa = static_cast<int>(rng() % 7) - 4;
    Site xb = static_cast<int>(rng() % 7) - 4;
    if (taua == taub && xa == xb) continue;
    double direct = 0.0;
    for (auto& [cfg, p] : cfgs)
      if (is_occupied(cfg, taua, xa) && is_occupied(cfg, taub, xb))
        direct += p;
    CHECK(eng.correlation({{taua, xa}, {taub, xb}}) ==
          doctest::Approx(direct).epsilon(1e-11));
  }
}

TEST_CASE("shift distribution is the discrete Gaussian") {
  for (double u : {0.5, 1.0, 2.0}) {
    for (double t : {0.3, 0.7}) {
      auto d = shift_distribution(u, t);
      // ratio identity P(S)/P(0) = u^S t^{S^2/2}
      for (int S : {-2, -1, 1, 2, 3}) {
        CHECK(d.p(S) / d.p(0) ==
              doctest::Approx(std::pow(u, S) * std::pow(t, 0.5 * S * S))
                  .epsilon(1e-12));
      }
      // normalized by theta3(u; t): probabilities sum to 1 up to the tail
      double tot = 0.0;
      for (int S = -d.s_max; S <= d.s_max; ++S) tot += d.p(S);
      CHECK(std::abs(tot - 1.0) < 1e-14 + d.tail_bound);
      CHECK(d.tail_bound < 1e-12);
    }
  }
}

TEST_CASE("shifted correlation is the shift mixture of unshifted ones") {
  double q = 0.4;
  TransferEngine eng(1, q, {3, 3});
  auto sd = shift_distribution(1.3, q * q);  // t = q^{2N}, N = 1
  Site x = 0;
  double direct = 0.0;
  for (int S = -sd.s_max; S <= sd.s_max; ++S)
    direct += sd.p(S) * eng.correlation({{1, x - S}});
  CHECK(eng.correlation_shifted({{1, x}}, sd) ==
        doctest::Approx(direct).epsilon(1e-13));
}

TEST_CASE("shift-mixed observable factorizes through theta3") {
  // sum_S P(S) rho^S = theta3(u * rho; t) / theta3(u; t), exactly
  double u = 1.7, t = 0.2;
  auto sd = shift_distribution(u, t, 40);
  for (double rho : {0.5, 0.8, 1.1}) {
    double mix = 0.0;
    for (int S = -sd.s_max; S <= sd.s_max; ++S)
      mix += sd.p(S) * std::pow(rho, S);
    double exact =
        std::real(theta3(u * rho, t)) / std::real(theta3(u, t));
    CHECK(std::abs(mix - exact) < 1e-10);
  }
}

TEST_CASE("exact sampler reproduces enumerated probabilities") {
  double q = 0.5;
  TransferEngine eng(1, q, {2, 2});
  auto cfgs = eng.enumerate_configs();
  std::map<std::string, double> target;
  for (auto& [cfg, p] : cfgs) target[serialize(cfg)] = p;
  std::mt19937_64 rng(99);
  std::map<std::string, int> counts;
  int n = 40000;
  for (int i = 0; i < n; ++i) counts[serialize(eng.sample(rng))]++;
  // chi-square goodness of fit; dof = #configs - 1
  double chi2 = 0.0;
  int cells = 0;
  for (auto& [key, p] : target) {
    double expect = p * n;
    if (expect < 5.0) continue;
    double obs = counts.count(key) ? counts[key] : 0;
    chi2 += (obs - expect) * (obs - expect) / expect;
    ++cells;
  }
  // generous bound: P(chi2 > 2*cells + 30) is tiny for these cell counts
  CHECK(chi2 < 2.0 * cells + 30.0);
  for (auto& [key, c] : counts) CHECK(target.count(key) == 1);
}

TEST_CASE("box tail shrinks as the box grows") {
  double q = 0.5;
  double z4 = TransferEngine(2, q, {4, 4}).partition_function();
  double z6 = TransferEngine(2, q, {6, 6}).partition_function();
  double z8 = TransferEngine(2, q, {7, 7}).partition_function();
  CHECK(z6 > z4);
  CHECK(z8 > z6);
  CHECK(z8 / z6 - 1.0 < 0.5 * (z6 / z4 - 1.0));
}
