#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "cylq/kernel.hpp"
#include "cylq/transfer.hpp"

using namespace cylq;

namespace {
// partial sums of the generating series of the theta3-ratio function
cplx a_series_upper(cplx z, double u, double t, int cut = 200) {
  // sum over m in Z', valid on 1 < |z| < 1/t
  cplx s = 0.0;
  for (int n = -cut; n < cut; ++n) {
    double m = n + 0.5;
    s += std::pow(z, m) / (1.0 + 1.0 / (u * std::pow(t, m)));
  }
  return s;
}
cplx a_series_lower(cplx z, double u, double t, int cut = 200) {
  // -sum over m in Z', valid on t < |z| < 1
  cplx s = 0.0;
  for (int n = -cut; n < cut; ++n) {
    double m = n + 0.5;
    s -= std::pow(z, m) / (1.0 + u * std::pow(t, m));
  }
  return s;
}
cplx a_closed(cplx z, double u, double t) {
  double p = std::real(q_pochhammer(1.0, t));
  return p * p * p * theta3(u * z, t) / (theta1(z, t) * theta3(u, t));
}
}  // namespace

TEST_CASE("theta3-ratio function matches its two series expansions") {
  double t = 0.3, u = 0.7;
  // principal sqrt on positive reals and nearby; stay off the branch cut
  for (double arg : {0.0, 0.4, -0.4, 1.1}) {
    cplx dir = std::exp(cplx(0.0, arg));
    cplx zu = 1.6 * dir;  // in (1, 1/t)
    CHECK(std::abs(a_closed(zu, u, t) - a_series_upper(zu, u, t)) < 1e-12);
    cplx zl = 0.62 * dir;  // in (t, 1)
    CHECK(std::abs(a_closed(zl, u, t) - a_series_lower(zl, u, t)) < 1e-12);
  }
}

TEST_CASE("F has the periodicity F(tau + 2N, z) = F(tau, z/t)") {
  ModularData md(0.04, 2);
  for (int tau : {1, 2, 3}) {
    for (cplx z : {cplx(0.3, 0.1), cplx(-1.2, 0.4), cplx(0.0, 2.0)}) {
      cplx a = F_of(tau + 2 * md.N, z, md);
      cplx b = F_of(tau, z / md.t, md);
      CHECK(std::abs(a - b) < 1e-12 * std::abs(b));
    }
  }
}

TEST_CASE("F-quotient at r = q^{2k} is the explicit entire product") {
  ModularData md(0.04, 2);
  double q = md.q;
  for (int tau : {1, 2}) {
    for (int k : {1, 2}) {
      cplx z(0.7, 0.5);
      cplx lhs = F_of(tau, z, md) / F_of(tau, std::pow(q, -2.0 * k) * z, md);
      cplx rhs = 1.0;
      int m0 = static_cast<int>(std::floor((tau - 0.5) / 2.0)) + 1;
      int m1 = static_cast<int>(std::ceil((tau + 0.5) / 2.0));
      for (int a = 0; a < k; ++a) {
        rhs *= (1.0 - std::pow(q, 2.0 * (m0 + a) + 0.5) / z);
        rhs *= (1.0 - std::pow(q, -(2.0 * (m1 + a) - 0.5)) * z);
      }
      CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(rhs));
    }
  }
}

TEST_CASE("kernel entries are radius independent") {
  ModularData md(0.01, 1);
  double u = 1.3;
  double base = kernel_entry(md, u, 1, -1, 2, 0);
  for (auto [dz, de] : std::vector<std::pair<double, double>>{
           {0.15, 0.0}, {0.0, 0.15}, {0.1, -0.05}, {0.2, 0.1}}) {
    KernelOptions opt;
    opt.dzeta = dz;
    opt.deta = de;
    CHECK(kernel_entry(md, u, 1, -1, 2, 0, opt) ==
          doctest::Approx(base).epsilon(1e-10));
  }
}

TEST_CASE("the two annulus branches differ by the identity on the diagonal") {
  ModularData md(0.01, 1);
  double u = 1.3;
  for (int tau : {1, 2}) {
    for (Site s : {-3, -1, 0, 2}) {
      KernelOptions b1, b2;
      b1.branch = 1;
      b2.branch = 2;
      double k1 = kernel_entry(md, u, tau, s, tau, s, b1);
      double k2 = kernel_entry(md, u, tau, s, tau, s, b2);
      CHECK(k1 - k2 == doctest::Approx(1.0).epsilon(1e-8));
      // off-diagonal: branches agree
      double o1 = kernel_entry(md, u, tau, s, tau, s + 2, b1);
      double o2 = kernel_entry(md, u, tau, s, tau, s + 2, b2);
      CHECK(o1 - o2 == doctest::Approx(0.0).scale(1.0).epsilon(1e-8));
    }
  }
}

TEST_CASE("diagonal kernel values interpolate the frozen zones") {
  ModularData md(0.01, 1);
  double u = 1.3;
  CHECK(kernel_entry(md, u, 2, -10, 2, -10) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(kernel_entry(md, u, 2, 8, 2, 8)) < 1e-6);
  // monotone decreasing occupation probability through the interface
  double prev = 2.0;
  for (Site s : {-3, -2, -1, 0, 1}) {
    double v = kernel_entry(md, u, 2, s, 2, s);
    CHECK(v < prev);
    CHECK(v > -1e-9);
    prev = v;
  }
}

TEST_CASE("correlation functions match enumeration at N = 1") {
  int N = 1;
  double q = 0.1, u = 1.3, t = std::pow(q, 2.0 * N);
  ModularData md(t, N);
  TransferEngine eng(N, q, {5, 5});
  ShiftDistribution sd = shift_distribution(u, t);
  KernelCache kc(md, u);

  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<int> col(1, 2 * N), site(-4, 3);
  for (int rep = 0; rep < 12; ++rep) {
    int k = 1 + rep % 3;
    std::vector<std::pair<int, Site>> pts;
    while (static_cast<int>(pts.size()) < k) {
      std::pair<int, Site> p{col(rng), site(rng)};
      bool dup = false;
      for (auto& e : pts) dup = dup || e == p;
      if (!dup) pts.push_back(p);
    }
    double exact = eng.correlation_shifted(pts, sd);
    double det = kc.correlation(pts);
    CHECK(std::abs(det - exact) < 1e-5);
  }
}

TEST_CASE("correlation functions match enumeration at N = 2") {
  int N = 2;
  double q = 0.12, u = 0.8, t = std::pow(q, 2.0 * N);
  ModularData md(t, N);
  TransferEngine eng(N, q, {5, 5});
  ShiftDistribution sd = shift_distribution(u, t);
  KernelCache kc(md, u);

  std::mt19937_64 rng(777);
  std::uniform_int_distribution<int> col(1, 2 * N), site(-4, 3);
  for (int rep = 0; rep < 8; ++rep) {
    int k = 1 + rep % 2;
    std::vector<std::pair<int, Site>> pts;
    while (static_cast<int>(pts.size()) < k) {
      std::pair<int, Site> p{col(rng), site(rng)};
      bool dup = false;
      for (auto& e : pts) dup = dup || e == p;
      if (!dup) pts.push_back(p);
    }
    double exact = eng.correlation_shifted(pts, sd);
    double det = kc.correlation(pts);
    CHECK(std::abs(det - exact) < 1e-5);
  }
}
