#include "cylq/moments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cylq/limitshape.hpp"
#include "cylq/quadrature.hpp"

namespace cylq {

namespace {
constexpr double kPi = 3.14159265358979323846;
const cplx kI(0.0, 1.0);

// Entire ratio F(tau, z) / F(tau, r^{-1} z) with r = q^{2k}: k upper factors
// (1 - q^{i'} / z), i' in 2Z + 1/2, tau < i' <= tau + 2k, and k lower factors
// (1 - q^{-j'} z), j' in 2Z - 1/2, tau <= j' < tau + 2k.
cplx F_quotient(double q, int tau, int k, cplx z) {
  cplx out = 1.0;
  int m0 = static_cast<int>(std::floor((tau - 0.5) / 2.0)) + 1;  // 2m+1/2 > tau
  for (int a = 0; a < k; ++a) {
    double ip = 2.0 * (m0 + a) + 0.5;
    out *= (1.0 - std::pow(q, ip) / z);
  }
  int m1 = static_cast<int>(std::ceil((tau + 0.5) / 2.0));  // 2m-1/2 >= tau
  for (int a = 0; a < k; ++a) {
    double jp = 2.0 * (m1 + a) - 0.5;
    out *= (1.0 - std::pow(q, -jp) * z);
  }
  return out;
}

// cross factor for a sorted pair i < j, w = z_i / z_j
cplx cross_factor(double t, double ri, double rj, cplx w) {
  return theta1(w, t) * theta1(rj / ri * w, t) /
         (theta1(rj * w, t) * theta1(w / ri, t));
}

// Geometric ladder L_i = C - i * gamma in log_q units (rho_i = q^{L_i}),
// with gamma the midpoint of the feasible spacing interval coming from the
// pairwise nesting constraints
//   -(2N - 2 k_i) < L_i - L_j < -2 k_j   for i < j.
// Returns empty if infeasible.
std::vector<double> radius_ladder(const ModularData& md,
                                  const std::vector<Slice>& slices) {
  int n = static_cast<int>(slices.size());
  if (n == 1) return {static_cast<double>(slices[0].tau)};
  double lo = 0.0, hi = 1e300;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double span = j - i;
      lo = std::max(lo, 2.0 * slices[static_cast<size_t>(j)].k / span);
      hi = std::min(hi,
                    (2.0 * md.N - 2.0 * slices[static_cast<size_t>(i)].k) / span);
    }
  if (!(lo < hi)) return {};
  double gamma = 0.5 * (lo + hi);
  std::vector<double> L(static_cast<size_t>(n));
  double mt = 0.0, ml = 0.0;
  for (int i = 0; i < n; ++i) {
    L[static_cast<size_t>(i)] = gamma * i;  // radii q^{L_i} descend in i
    mt += slices[static_cast<size_t>(i)].tau;
    ml += L[static_cast<size_t>(i)];
  }
  // the common scale is free; keep the circles near the slice columns
  double off = (mt - ml) / n;
  for (double& v : L) v += off;
  return L;
}

void sort_and_check(const ModularData& md, std::vector<Slice>& slices) {
  if (slices.empty() || slices.size() > 3)
    throw std::invalid_argument("need 1..3 slices");
  for (const Slice& s : slices) {
    if (s.tau < 1 || s.tau > 2 * md.N)
      throw std::invalid_argument("slice column out of range");
    if (s.k < 1) throw std::invalid_argument("slice order must be >= 1");
    // at k = 0 mod N the radius r = q^{2k} equals a power of t, where the
    // prefactor (r^{-1} t; t) vanishes and the formula degenerates
    if (s.k % md.N == 0)
      throw std::invalid_argument("slice order must not be a multiple of N");
  }
  std::stable_sort(slices.begin(), slices.end(),
                   [](const Slice& a, const Slice& b) { return a.tau < b.tau; });
}

}  // namespace

bool contours_feasible(const ModularData& md, std::vector<Slice> slices) {
  sort_and_check(md, slices);
  return !radius_ladder(md, slices).empty();
}

double contour_moment(const ModularData& md, std::vector<Slice> slices,
                      double rel_tol, int max_nodes) {
  sort_and_check(md, slices);
  std::vector<double> L = radius_ladder(md, slices);
  if (L.empty())
    throw std::invalid_argument("no admissible contours for these slices");
  int n = static_cast<int>(slices.size());
  double t = md.t, q = md.q;
  std::vector<double> r(static_cast<size_t>(n)), rho(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    r[static_cast<size_t>(i)] = std::pow(q, 2.0 * slices[static_cast<size_t>(i)].k);
    rho[static_cast<size_t>(i)] = std::pow(q, L[static_cast<size_t>(i)]);
  }

  auto eval = [&](int M) -> cplx {
    // per-slice tables of the entire F-ratio on the circles
    std::vector<std::vector<cplx>> F(static_cast<size_t>(n),
                                     std::vector<cplx>(static_cast<size_t>(M)));
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < M; ++a) {
        cplx z = rho[static_cast<size_t>(i)] *
                 std::exp(2.0 * kPi * kI * (static_cast<double>(a) / M));
        F[static_cast<size_t>(i)][static_cast<size_t>(a)] =
            F_quotient(q, slices[static_cast<size_t>(i)].tau,
                       slices[static_cast<size_t>(i)].k, z);
      }
    // pair tables indexed by the angle difference d = a_i - a_j mod M
    auto pair_table = [&](int i, int j) {
      std::vector<cplx> P(static_cast<size_t>(M));
      for (int d = 0; d < M; ++d) {
        cplx w = rho[static_cast<size_t>(i)] / rho[static_cast<size_t>(j)] *
                 std::exp(2.0 * kPi * kI * (static_cast<double>(d) / M));
        P[static_cast<size_t>(d)] =
            cross_factor(t, r[static_cast<size_t>(i)], r[static_cast<size_t>(j)], w);
      }
      return P;
    };
    cplx acc = 0.0;
    if (n == 1) {
      for (int a = 0; a < M; ++a) acc += F[0][static_cast<size_t>(a)];
      return acc / static_cast<double>(M);
    }
    if (n == 2) {
      auto P = pair_table(0, 1);
      for (int d = 0; d < M; ++d) {
        cplx s = 0.0;
        for (int a = 0; a < M; ++a)
          s += F[0][static_cast<size_t>(a)] *
               F[1][static_cast<size_t>((a - d + M) % M)];
        acc += s * P[static_cast<size_t>(d)];
      }
      return acc / (static_cast<double>(M) * M);
    }
    auto P01 = pair_table(0, 1), P02 = pair_table(0, 2), P12 = pair_table(1, 2);
    for (int a = 0; a < M; ++a)
      for (int b = 0; b < M; ++b) {
        cplx fab = F[0][static_cast<size_t>(a)] * F[1][static_cast<size_t>(b)] *
                   P01[static_cast<size_t>((a - b + M) % M)];
        cplx s = 0.0;
        for (int c = 0; c < M; ++c)
          s += F[2][static_cast<size_t>(c)] *
               P02[static_cast<size_t>((a - c + M) % M)] *
               P12[static_cast<size_t>((b - c + M) % M)];
        acc += fab * s;
      }
    return acc / (static_cast<double>(M) * M * M);
  };

  if (n == 3) max_nodes = std::min(max_nodes, 512);  // cubic cost per level
  cplx val = eval(64);
  for (int M = 128; M <= max_nodes; M *= 2) {
    cplx next = eval(M);
    double diff = std::abs(next - val);
    val = next;
    if (diff <= rel_tol * std::max(1.0, std::abs(val))) break;
  }

  double pref = 1.0;
  double poch_tt = std::real(q_pochhammer(1.0, t));  // prod_{n>=1} (1 - t^n)
  for (int i = 0; i < n; ++i) {
    double ri = r[static_cast<size_t>(i)];
    double den = std::real(q_pochhammer(ri, t)) *
                 std::real(q_pochhammer(1.0 / ri, t)) * (1.0 - 1.0 / ri);
    pref *= poch_tt * poch_tt / den;
  }
  return pref * std::real(val);
}

double shift_mixed_factor(const ModularData& md,
                          const std::vector<Slice>& slices, double u) {
  if (!(u > 0.0)) throw std::domain_error("u must be positive");
  double rprod = 1.0;
  for (const Slice& s : slices) rprod *= std::pow(md.q, 2.0 * s.k);
  return std::real(theta3(u * rprod, md.t)) / std::real(theta3(u, md.t));
}

double shift_mixed_moment(const ModularData& md, std::vector<Slice> slices,
                          double u) {
  return contour_moment(md, slices) * shift_mixed_factor(md, slices, u);
}

double prelimit_mean(const ModularData& md, int k, int tau) {
  double r = std::pow(md.q, 2.0 * k);
  double m = contour_moment(md, {{tau, k}});
  return -std::pow(r, 0.5) / (1.0 - r) * m / (4.0 * md.N * md.N);
}

double mean_asymptotic(int k, double t) {
  double lt = std::log(t);
  return central_binomial(k) / (2.0 * k * lt * 2.0 * k * lt);
}

double covariance_asymptotic(int k1, int k2, double tau1, double tau2,
                             double t, int nodes) {
  if (!(tau1 <= tau2))
    throw std::invalid_argument("needs tau1 <= tau2");
  if (!(tau1 > 0.0 && tau2 <= 1.0))
    throw std::invalid_argument("taus must lie in (0,1]");
  double beta = -std::log(t) / (2.0 * kPi);
  double c1, c2;
  if (tau1 < tau2) {
    c1 = tau1 * beta;
    c2 = tau2 * beta;
  } else {
    c1 = (tau1 - 0.15) * beta;
    c2 = (tau2 + 0.15) * beta;
  }
  auto weight = [&](double x, double c, double tau, int k) -> cplx {
    cplx eta(x, c);
    cplx a = 1.0 - std::pow(t, tau) * std::exp(-2.0 * kPi * kI * eta);
    cplx b = 1.0 - std::pow(t, -tau) * std::exp(2.0 * kPi * kI * eta);
    return std::pow(a, k) * std::pow(b, k);
  };
  auto eval = [&](int M) -> cplx {
    std::vector<cplx> w1(static_cast<size_t>(M)), w2(static_cast<size_t>(M)),
        D(static_cast<size_t>(M));
    for (int a = 0; a < M; ++a) {
      double x = -0.5 + static_cast<double>(a) / M;
      w1[static_cast<size_t>(a)] = weight(x, c1, tau1, k1);
      w2[static_cast<size_t>(a)] = weight(x, c2, tau2, k2);
    }
    for (int d = 0; d < M; ++d) {
      double dx = static_cast<double>(d) / M;  // x1 - x2 mod 1
      D[static_cast<size_t>(d)] = d2_log_Theta(cplx(dx, c1 - c2), t);
    }
    cplx acc = 0.0;
    for (int d = 0; d < M; ++d) {
      cplx s = 0.0;
      for (int a = 0; a < M; ++a)
        s += w1[static_cast<size_t>(a)] *
             w2[static_cast<size_t>((a - d + M) % M)];
      acc += s * D[static_cast<size_t>(d)];
    }
    return acc / (static_cast<double>(M) * M);
  };
  cplx val = eval(nodes / 4);
  for (int M = nodes / 2; M <= nodes; M *= 2) {
    cplx next = eval(M);
    if (std::abs(next - val) < 1e-12 * std::max(1.0, std::abs(next))) {
      val = next;
      break;
    }
    val = next;
  }
  cplx pref = -1.0 / (4.0 * k1 * k2 *
                      std::pow(2.0 * kPi * kI * std::log(t), 2));
  return std::real(pref * val);
}

double greens_covariance(int k1, int k2, double tau1, double tau2, double t) {
  if (!(tau1 > 0.0 && tau1 <= 1.0 && tau2 > 0.0 && tau2 <= 1.0))
    throw std::invalid_argument("taus must lie in (0,1]");
  double beta = -std::log(t) / (2.0 * kPi);
  double alog = std::abs(std::log(t));
  auto w = [&](double phi, int k) {
    return std::pow(2.0 * std::sin(0.5 * phi), 2 * k) / std::tan(0.5 * phi);
  };
  bool diag = (tau1 == tau2);
  // eta1 + conj(eta2) -> 1 pinches a theta zero at phi1 = phi2 = pi whenever
  // tau1 + tau2 is an integer, so both variables are graded towards pi; the
  // diagonal log singularity at phi2 = phi1 (equal columns) is graded as well
  auto inner = [&](double phi1) {
    cplx e1(phi1 / (2.0 * kPi), tau1 * beta);
    auto f = [&](double phi2) {
      cplx e2(phi2 / (2.0 * kPi), tau2 * beta);
      return greens(e1, e2, t) * w(phi2, k2);
    };
    if (!diag) return integrate_graded(f, 0.0, kPi, kPi, 40, 10);
    double mid = 0.5 * (phi1 + kPi);
    return integrate_graded(f, 0.0, phi1, phi1, 40, 10) +
           integrate_graded(f, phi1, mid, phi1, 40, 10) +
           integrate_graded(f, mid, kPi, kPi, 40, 10);
  };
  auto outer = [&](double phi1) { return inner(phi1) * w(phi1, k1); };
  double I = integrate_graded(outer, 0.0, kPi, kPi, 34, 14);
  return I / (kPi * 4.0 * alog * alog);
}

double cumulant_prelimit(const ModularData& md, int k, int tau, int m) {
  if (m < 1 || m > 3) throw std::invalid_argument("m must be 1..3");
  double m1 = contour_moment(md, {{tau, k}});
  if (m == 1) return m1;
  double m2 = contour_moment(md, {{tau, k}, {tau, k}});
  if (m == 2) return m2 - m1 * m1;
  double m3 = contour_moment(md, {{tau, k}, {tau, k}, {tau, k}});
  return m3 - 3.0 * m2 * m1 + 2.0 * m1 * m1 * m1;
}

}  // namespace cylq
