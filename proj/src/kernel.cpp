#include "cylq/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace cylq {

namespace {
constexpr double kPi = 3.14159265358979323846;
const cplx kI(0.0, 1.0);

// largest element of 2Z - 1/2 strictly below tau (pole exponent of F)
double lower_pole_exponent(int tau) {
  // j = 2m - 1/2 < tau  =>  m = floor((tau - 0.5) / 2 - ...) handled directly
  int m = (tau % 2 == 0) ? tau / 2 : (tau - 1) / 2;
  return 2.0 * m - 0.5;  // tau even: tau - 1/2; tau odd: tau - 3/2
}

// smallest element of 2Z + 1/2 strictly above tau (pole exponent of 1/F)
double upper_pole_exponent(int tau) {
  int m = (tau % 2 == 0) ? tau / 2 : (tau + 1) / 2;
  return 2.0 * m + 0.5;  // tau even: tau + 1/2; tau odd: tau + 3/2
}

void check_u(double u, double t) {
  (void)t;
  if (!(u > 0.0)) throw std::domain_error("u must be positive");
}

struct Radii {
  double lzeta;  // |zeta| = q^{lzeta}
  double leta;   // |eta|  = q^{leta}
};

// Admissible circle radii in log_q units.  Constraints:
//   lzeta > lower_pole_exponent(sigma)      (inside the first pole of F)
//   leta  > -upper_pole_exponent(tau)       (inside the first pole of 1/F)
//   lzeta + leta in (-2N, 0) for branch 1, in (0, 2N) for branch 2.
Radii kernel_radii(const ModularData& md, int sigma, int tau, int branch,
                   double dzeta, double deta) {
  double lz_min = lower_pole_exponent(sigma);
  double le_min = -upper_pole_exponent(tau);
  double b = lz_min + le_min;
  double s_lo, s_hi;
  if (branch == 1) {
    s_lo = std::max(b, -2.0 * md.N);
    s_hi = 0.0;
  } else {
    s_lo = std::max(b, 0.0);
    s_hi = 2.0 * md.N;
  }
  if (!(s_lo < s_hi))
    throw std::invalid_argument("no admissible kernel contour radii");
  double delta = 0.5 * (0.5 * (s_lo + s_hi) - b);
  Radii r{lz_min + delta + dzeta, le_min + delta + deta};
  double s = r.lzeta + r.leta;
  if (!(r.lzeta > lz_min && r.leta > le_min && s > s_lo && s < s_hi))
    throw std::invalid_argument("kernel radius perturbation not admissible");
  return r;
}

// determinant by LU with partial pivoting, destroys m (row-major k x k)
double det_inplace(std::vector<double>& m, int k) {
  double det = 1.0;
  for (int c = 0; c < k; ++c) {
    int piv = c;
    for (int r = c + 1; r < k; ++r)
      if (std::abs(m[static_cast<size_t>(r) * k + c]) >
          std::abs(m[static_cast<size_t>(piv) * k + c]))
        piv = r;
    if (piv != c) {
      for (int cc = 0; cc < k; ++cc)
        std::swap(m[static_cast<size_t>(piv) * k + cc],
                  m[static_cast<size_t>(c) * k + cc]);
      det = -det;
    }
    double d = m[static_cast<size_t>(c) * k + c];
    det *= d;
    if (d == 0.0) return 0.0;
    for (int r = c + 1; r < k; ++r) {
      double f = m[static_cast<size_t>(r) * k + c] / d;
      for (int cc = c; cc < k; ++cc)
        m[static_cast<size_t>(r) * k + cc] -=
            f * m[static_cast<size_t>(c) * k + cc];
    }
  }
  return det;
}
}  // namespace

namespace {
// numerator and denominator of F separately, so callers that only need 1/F
// can guard against zeros of the numerator (its true poles) while passing
// harmlessly through zeros of the denominator
void F_parts(int tau, cplx z, const ModularData& md, double eps, cplx& num,
             cplx& den, bool guard_num, bool guard_den) {
  double q = md.q;
  double az = std::abs(z);
  num = 1.0;
  for (double i = upper_pole_exponent(tau) - 2.0;;) {
    i += 2.0;  // i in 2Z + 1/2, i > tau
    double mag = std::pow(q, i) / az;
    if (mag < eps) break;
    cplx f = 1.0 - std::pow(q, i) / z;
    if (guard_num && std::abs(f) < 1e-8 * (1.0 + mag))
      throw std::domain_error("1/F evaluated too close to a pole");
    num *= f;
  }
  den = 1.0;
  for (double j = lower_pole_exponent(tau) + 2.0;;) {
    j -= 2.0;  // j in 2Z - 1/2, j < tau
    double mag = std::pow(q, -j) * az;
    if (mag < eps) break;
    cplx f = 1.0 - std::pow(q, -j) * z;
    if (guard_den && std::abs(f) < 1e-8 * (1.0 + mag))
      throw std::domain_error("F evaluated too close to a pole");
    den *= f;
  }
}
}  // namespace

cplx F_of(int tau, cplx z, const ModularData& md, double eps) {
  cplx num, den;
  F_parts(tau, z, md, eps, num, den, false, true);
  return num / den;
}

double kernel_entry(const ModularData& md, double u, int sigma, Site site_x,
                    int tau, Site site_y, const KernelOptions& opt) {
  if (sigma < 1 || sigma > 2 * md.N || tau < 1 || tau > 2 * md.N)
    throw std::invalid_argument("columns must lie in 1..2N");
  check_u(u, md.t);
  int branch = opt.branch != 0 ? opt.branch : (sigma <= tau ? 1 : 2);
  Radii rad = kernel_radii(md, sigma, tau, branch, opt.dzeta, opt.deta);
  double q = md.q, t = md.t;
  double Rz = std::pow(q, rad.lzeta), Re = std::pow(q, rad.leta);
  double x = site_x + 0.5, y = site_y + 0.5;
  double Rprod = Rz * Re;
  double sqrtR = std::sqrt(Rprod);
  // A(z) = (t;t)^3 theta3(u z) / (theta1(z) theta3(u)); expanding theta1 via
  // its triple product leaves (t;t)^2 and lets us track the sqrt(z) branch
  // continuously as arg z runs over [0, 4pi) in the convolution table below.
  double p1 = std::real(q_pochhammer(1.0, t));
  cplx Apref = p1 * p1 / theta3(u, t);

  auto eval = [&](int M) -> cplx {
    std::vector<cplx> va(static_cast<size_t>(M)), vb(static_cast<size_t>(M)),
        A(static_cast<size_t>(2 * M));
    for (int a = 0; a < M; ++a) {
      double th = 2.0 * kPi * a / M;
      cplx zeta = Rz * std::exp(kI * th);
      cplx eta = Re * std::exp(kI * th);
      va[static_cast<size_t>(a)] =
          F_of(sigma, zeta, md) * std::pow(Rz, -x) * std::exp(-kI * x * th);
      cplx fn, fd;
      F_parts(tau, 1.0 / eta, md, 1e-18, fn, fd, true, false);
      vb[static_cast<size_t>(a)] =
          std::pow(Re, -y) * std::exp(-kI * y * th) * fd / fn;
    }
    for (int c = 0; c < 2 * M; ++c) {
      double ang = 2.0 * kPi * c / M;
      cplx z = Rprod * std::exp(kI * ang);
      cplx sqrtz = sqrtR * std::exp(kI * 0.5 * ang);
      cplx th1 = (sqrtz - 1.0 / sqrtz) * q_pochhammer(z, t) *
                 q_pochhammer(1.0 / z, t);
      A[static_cast<size_t>(c)] = Apref * theta3(u * z, t) / th1;
    }
    cplx acc = 0.0;
    for (int a = 0; a < M; ++a) {
      cplx fa = va[static_cast<size_t>(a)];
      for (int b = 0; b < M; ++b)
        acc += fa * vb[static_cast<size_t>(b)] * A[static_cast<size_t>(a + b)];
    }
    return acc / (static_cast<double>(M) * M);
  };

  cplx val = eval(256);
  for (int M = 512; M <= opt.max_nodes; M *= 2) {
    cplx next = eval(M);
    double diff = std::abs(next - val);
    val = next;
    if (diff <= opt.tol * std::max(1.0, std::abs(val))) break;
  }
  return std::real(val);
}

double shifted_correlation(const ModularData& md, double u,
                           const std::vector<std::pair<int, Site>>& points,
                           const KernelOptions& opt) {
  int k = static_cast<int>(points.size());
  std::vector<double> m(static_cast<size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      m[static_cast<size_t>(i) * k + j] = kernel_entry(
          md, u, points[static_cast<size_t>(i)].first,
          points[static_cast<size_t>(i)].second,
          points[static_cast<size_t>(j)].first,
          points[static_cast<size_t>(j)].second, opt);
  return det_inplace(m, k);
}

double KernelCache::entry(int sigma, Site x, int tau, Site y) const {
  auto key = std::make_tuple(sigma, x, tau, y);
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = table_.find(key);
    if (it != table_.end()) return it->second;
  }
  double v = kernel_entry(md_, u_, sigma, x, tau, y);
  std::lock_guard<std::mutex> lk(mu_);
  table_.emplace(key, v);
  return v;
}

double KernelCache::correlation(
    const std::vector<std::pair<int, Site>>& points) const {
  int k = static_cast<int>(points.size());
  std::vector<double> m(static_cast<size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      m[static_cast<size_t>(i) * k + j] =
          entry(points[static_cast<size_t>(i)].first,
                points[static_cast<size_t>(i)].second,
                points[static_cast<size_t>(j)].first,
                points[static_cast<size_t>(j)].second);
  return det_inplace(m, k);
}

}  // namespace cylq
