#include "cylq/special.hpp"

#include <cmath>

namespace cylq {

namespace {
constexpr double kPi = 3.14159265358979323846;

void check_nome(double t) {
  if (!(t > 0.0 && t < 1.0))
    throw std::domain_error("nome t must lie in (0,1)");
}
}  // namespace

cplx q_pochhammer(cplx a, double t) {
  check_nome(t);
  cplx prod = 1.0;
  double tn = t;
  for (int n = 1; n < 100000; ++n) {
    prod *= (1.0 - a * tn);
    if (std::abs(a) * tn < 1e-18) break;
    tn *= t;
  }
  return prod;
}

cplx theta1(cplx z, double t) {
  check_nome(t);
  if (z == 0.0) throw std::domain_error("theta1 needs z != 0");
  // Reduce |z| into [sqrt(t), 1/sqrt(t)] via theta1(tz) = -t^{-1/2} z^{-1} theta1(z)
  // so the series never sees large cancelling terms.
  double rt = std::sqrt(t);
  cplx pref = 1.0;
  while (std::abs(z) > 1.0 / rt) {
    z *= t;                        // theta1(old z) = -t^{-1/2} z_new theta1(z_new)
    pref *= -z / rt;
  }
  while (std::abs(z) < rt) {
    z /= t;                        // theta1(old z) = -t^{-1/2} z_new^{-1} theta1(z_new)
    pref *= -1.0 / (rt * z);
  }
  cplx zh = std::sqrt(z);
  // m and -(m+1) terms paired: (-1)^m t^{m(m+1)/2} (z^{m+1/2} - z^{-m-1/2}).
  cplx sum = 0.0;
  cplx zp = zh;          // z^{m+1/2}
  cplx zm = 1.0 / zh;    // z^{-m-1/2}
  double w = 1.0;        // t^{m(m+1)/2}
  double sign = 1.0;
  double prev_bound = 1e308;
  for (int m = 0; m < 100000; ++m) {
    sum += sign * w * (zp - zm);
    // termination uses a cancellation-free bound, decreasing past the peak
    double bound = w * (std::abs(zp) + std::abs(zm));
    if (bound < 1e-17 * (std::abs(sum) + 1.0) && bound < prev_bound) break;
    prev_bound = bound;
    sign = -sign;
    w *= std::pow(t, m + 1);  // t^{m(m+1)/2} -> t^{(m+1)(m+2)/2}
    zp *= z;
    zm /= z;
  }
  return pref * sum;
}

cplx theta3(cplx z, double t) {
  check_nome(t);
  if (z == 0.0) throw std::domain_error("theta3 needs z != 0");
  // Same stabilizing reduction, via theta3(tz) = t^{-1/2} z^{-1} theta3(z).
  double rt = std::sqrt(t);
  cplx pref3 = 1.0;
  while (std::abs(z) > 1.0 / rt) {
    cplx zn = z * t;               // theta3(z) = t^{1/2} z theta3(z t)
    pref3 *= rt * z;
    z = zn;
  }
  while (std::abs(z) < rt) {
    cplx zn = z / t;               // theta3(z) = t^{1/2} z^{-1} theta3(z / t)
    pref3 *= rt / z;
    z = zn;
  }
  cplx sum = 1.0;
  cplx zp = 1.0, zm = 1.0;
  double sq = std::sqrt(t);
  double prev_bound = 1e308;
  for (int m = 1; m < 100000; ++m) {
    zp *= z;
    zm /= z;
    double w = std::pow(sq, static_cast<double>(m) * m);  // t^{m^2/2}
    sum += w * (zp + zm);
    double bound = w * (std::abs(zp) + std::abs(zm));
    if (bound < 1e-17 * (std::abs(sum) + 1.0) && bound < prev_bound) break;
    prev_bound = bound;
  }
  return pref3 * sum;
}

cplx theta1_product(cplx z, double t) {
  check_nome(t);
  cplx zh = std::sqrt(z);
  return (zh - 1.0 / zh) * q_pochhammer(1.0, t) * q_pochhammer(z, t) *
         q_pochhammer(1.0 / z, t);
}

cplx theta3_product(cplx z, double t) {
  check_nome(t);
  cplx prod = q_pochhammer(1.0, t);
  double tn = std::sqrt(t);  // n = 1/2, 3/2, ...
  for (int k = 0; k < 100000; ++k) {
    prod *= (1.0 + tn * z) * (1.0 + tn / z);
    if (tn * (std::abs(z) + 1.0 / std::abs(z)) < 1e-18) break;
    tn *= t;
  }
  return prod;
}

ModularData::ModularData(double t_, int N_) : t(t_), N(N_) {
  check_nome(t);
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  q = std::pow(t, 1.0 / (2.0 * N));
  beta = -std::log(t) / (2.0 * kPi);
}

namespace {
// Theta and derivatives share one series walk:
//   Theta^(d)(eta) = sum_m (-1)^m t^{m(m+1)/2} (2 pi i (m+1/2))^d e^{2 pi i (m+1/2) eta}
cplx theta_series(cplx eta, double t, int deriv) {
  check_nome(t);
  const cplx I(0.0, 1.0);
  cplx sum = 0.0;
  double sign = 1.0;
  double w = 1.0;  // t^{m(m+1)/2}
  for (int m = 0; m < 100000; ++m) {
    // terms m and -(m+1); exponents (m+1/2) and -(m+1/2), same t-weight.
    cplx cp = 2.0 * kPi * I * (m + 0.5);
    cplx ep = std::exp(cp * eta);
    cplx em = std::exp(-cp * eta);
    // The partner index m' = -(m+1) carries the same t-weight, the opposite
    // exponent -(m+1/2), and sign (-1)^{m+1}; pairing the two gives:
    sum += sign * w * (std::pow(cp, deriv) * ep - std::pow(-cp, deriv) * em);
    double bound =
        w * std::pow(std::abs(cp), deriv) * (std::abs(ep) + std::abs(em));
    if (m > 2 && bound < 1e-17 * (std::abs(sum) + 1.0)) break;
    sign = -sign;
    w *= std::pow(t, m + 1);
  }
  return sum;
}
}  // namespace

cplx Theta(cplx eta, double t) { return theta_series(eta, t, 0); }
cplx Theta_d1(cplx eta, double t) { return theta_series(eta, t, 1); }
cplx Theta_d2(cplx eta, double t) { return theta_series(eta, t, 2); }

cplx d2_log_Theta(cplx eta, double t) {
  cplx f = Theta(eta, t);
  cplx f1 = Theta_d1(eta, t);
  cplx f2 = Theta_d2(eta, t);
  return f2 / f - (f1 / f) * (f1 / f);
}

double greens(cplx eta1, cplx eta2, double t) {
  cplx num = Theta(eta1 - eta2, t);
  cplx den = Theta(eta1 + std::conj(eta2), t);
  return -std::log(std::abs(num / den)) / (2.0 * kPi);
}

}  // namespace cylq
