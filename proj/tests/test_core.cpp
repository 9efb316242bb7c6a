#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cylq/core.hpp"

using namespace cylq;

namespace {

CylindricConfig make_cfg(int N, int shift,
                         std::vector<std::vector<int>> cols) {
  CylindricConfig cfg;
  cfg.N = N;
  cfg.shift = shift;
  for (auto& c : cols) cfg.columns.emplace_back(c);
  validate(cfg);
  return cfg;
}

// Random valid configuration generated by a walk of single-box moves starting
// from the empty configuration (every proposed move that preserves validity is
// applied).
CylindricConfig random_cfg(int N, int box, std::mt19937_64& rng) {
  std::vector<std::vector<int>> cols(2 * N, std::vector<int>(box, 0));
  std::uniform_int_distribution<int> col_d(0, 2 * N - 1), row_d(0, box - 1),
      dir_d(0, 1);
  auto ok = [&](int c) {
    for (int i = 0; i + 1 < box; ++i)
      if (cols[c][i] < cols[c][i + 1]) return false;
    int lo = (c % 2 == 0) ? c : (c + 1) % (2 * N);       // odd column (0-based even)
    int hi = (c % 2 == 0) ? (c + 2 * N - 1) % (2 * N) : c;
    // check both edges incident to column c
    for (int e = 0; e < 2; ++e) {
      int a = (c % 2 == 0) ? c : (e == 0 ? (c + 1) % (2 * N) : (c + 2 * N - 1) % (2 * N));
      int b = (c % 2 == 0) ? (e == 0 ? (c + 1) % (2 * N) : (c + 2 * N - 1) % (2 * N)) : c;
      // a is the odd (lower) column of the edge, b the even (upper) one
      const auto& mu = cols[a];
      const auto& la = cols[b];
      for (int i = 0; i < box; ++i) {
        int la_i = la[i], mu_i = mu[i];
        int la_next = (i + 1 < box) ? la[i + 1] : 0;
        if (la_i < mu_i || mu_i < la_next) return false;
      }
    }
    (void)lo;
    (void)hi;
    return true;
  };
  for (int step = 0; step < 400; ++step) {
    int c = col_d(rng), r = row_d(rng), d = dir_d(rng) ? 1 : -1;
    cols[c][r] += d;
    if (cols[c][r] < 0 || cols[c][r] > box || !ok(c)) cols[c][r] -= d;
  }
  CylindricConfig cfg;
  cfg.N = N;
  cfg.shift = 0;
  for (auto& c : cols) cfg.columns.emplace_back(c);
  validate(cfg);
  return cfg;
}

}  // namespace

TEST_CASE("interlacing basics") {
  CHECK(interlaces(Partition(std::vector<int>{}), Partition(std::vector<int>{})));
  CHECK(interlaces(Partition({1}), Partition({2})));
  CHECK(interlaces(Partition({2, 1}), Partition({3, 1})));
  CHECK_FALSE(interlaces(Partition({2, 1}), Partition({3, 3})));
  CHECK_FALSE(interlaces(Partition({3}), Partition({2})));
  CHECK_FALSE(interlaces(Partition({1, 1}), Partition({1})));
}

TEST_CASE("volume includes the shift term") {
  auto cfg = make_cfg(1, 0, {{2, 1}, {3, 1}});
  CHECK(volume(cfg) == 7);
  cfg.shift = -2;
  CHECK(volume(cfg) == 7 + 1 * 4);
  auto cfg2 = make_cfg(2, 3, {{1}, {2}, {}, {1}});
  CHECK(volume(cfg2) == 4 + 2 * 9);
}

TEST_CASE("height function: frozen boundary values") {
  auto empty = make_cfg(1, 0, {{}, {}});
  // all positions below 0 occupied: height vanishes below and grows above
  CHECK(height(empty, 1, -3) == 0);  // y = -5/2
  CHECK(height(empty, 1, 0) == 0);   // y = 1/2
  CHECK(height(empty, 1, 3) == 3);   // y = 7/2: unoccupied 1/2, 3/2, 5/2

  auto cfg = make_cfg(1, 0, {{2, 1}, {2, 1}});
  // occupied sites of column 1: {1, -1, -3, -4, ...}
  CHECK(height(cfg, 1, 2) == 2);  // y = 5/2: unoccupied below are 1/2, -3/2
  CHECK(height(cfg, 1, -2) == 0);

  // shifting the configuration translates the height profile
  cfg.shift = 2;
  CHECK(height(cfg, 1, 4) == 2);
}

TEST_CASE("height increments are 0/1 and vanish exactly at occupied sites") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto cfg = random_cfg(2, 4, rng);
    cfg.shift = static_cast<int>(rng() % 5) - 2;
    for (int tau = 1; tau <= 4; ++tau)
      for (Site y = -8; y < 10; ++y) {
        auto d = height(cfg, tau, y + 1) - height(cfg, tau, y);
        CHECK((d == 0 || d == 1));
        CHECK(d == (is_occupied(cfg, tau, y) ? 0 : 1));
      }
  }
}

TEST_CASE("point-set bijection round trip") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    int N = 1 + static_cast<int>(rng() % 3);
    auto cfg = random_cfg(N, 4, rng);
    cfg.shift = static_cast<int>(rng() % 7) - 3;
    auto ps = to_point_sets(cfg);
    auto back = from_point_sets(N, ps);
    CHECK(back.shift == cfg.shift);
    for (int j = 0; j < 2 * N; ++j) {
      // stored partitions may differ by trailing zeros only
      CHECK(back.columns[j].parts() == Partition(cfg.columns[j].parts()).parts());
    }
  }
}

TEST_CASE("bijection rejects inconsistent excess") {
  auto cfg = make_cfg(1, 1, {{1}, {1}});
  auto ps = to_point_sets(cfg);
  ps[0].added.clear();  // corrupt column 1
  CHECK_THROWS_AS(from_point_sets(1, ps), std::invalid_argument);
}

TEST_CASE("serialization round trip and format") {
  auto cfg = make_cfg(2, -1, {{2, 1}, {3, 1}, {1}, {2, 1}});
  auto line = serialize(cfg);
  CHECK(line == "2 -1 ; 2,1 ; 3,1 ; 1 ; 2,1");
  auto back = deserialize(line);
  CHECK(back.shift == -1);
  CHECK(back.N == 2);
  CHECK(back.columns[2].part(0) == 1);
  CHECK(back.columns[1].part(0) == 3);
  auto with_empty = make_cfg(1, 3, {{}, {2}});
  CHECK(serialize(with_empty) == "1 3 ; - ; 2");
  CHECK(deserialize("1 3 ; - ; 2").columns[0].length() == 0);
  CHECK_THROWS(deserialize("2 0 ; 1,2 ; - ; - ; -"));  // not a partition
  CHECK_THROWS(deserialize("1 0 ; 2,2 ; 2"));          // interlacing fails
}

TEST_CASE("observable F on the empty partition") {
  // F_r(empty) = 1/(1 - r^{-1})
  for (double r : {0.3, 0.6, 0.9}) {
    CHECK(observable_F(Partition(std::vector<int>{}), r) ==
          doctest::Approx(1.0 / (1.0 - 1.0 / r)).epsilon(1e-14));
  }
  // For r > 1 the defining series sum_i r^{lambda_i - i + 1} converges and
  // serves as an independent oracle for the closed-form tail.
  Partition la({2, 1});
  double r = 1.8;
  double direct = 0.0;
  for (int i = 1; i <= 400; ++i) direct += std::pow(r, la.part(i - 1) - i + 1);
  CHECK(observable_F(la, r) == doctest::Approx(direct).epsilon(1e-13));
  CHECK(observable_F_shifted(la, 2, r) ==
        doctest::Approx(r * r * observable_F(la, r)).epsilon(1e-14));
}

TEST_CASE("height transform equals observable identity on random configs") {
  std::mt19937_64 rng(23);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    int N = 1 + static_cast<int>(rng() % 3);
    auto cfg = random_cfg(N, 6, rng);
    for (double r : {0.3, 0.6, 0.9}) {
      int tau = 1 + static_cast<int>(rng() % (2 * N));
      double lhs = height_transform(cfg, tau, r);
      double rhs = -std::pow(r, 0.5) / (1.0 - r) * observable_F(cfg.column(tau), r);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
      ++checked;
    }
  }
  CHECK(checked == 600);
}

TEST_CASE("height transform with shift") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    auto cfg = random_cfg(1, 5, rng);
    cfg.shift = static_cast<int>(rng() % 5) - 2;
    double r = 0.4;
    double lhs = height_transform(cfg, 1, r);
    double rhs = -std::pow(r, 0.5 + cfg.shift) / (1.0 - r) *
                 observable_F(cfg.column(1), r);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}
