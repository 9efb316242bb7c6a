#include "cylq/limitshape.hpp"

#include <cmath>
#include <stdexcept>

#include "cylq/quadrature.hpp"

namespace cylq {

namespace {
constexpr double kPi = 3.14159265358979323846;

void check_t(double t) {
  if (!(t > 0.0 && t < 1.0))
    throw std::domain_error("t must lie in (0,1)");
}
}  // namespace

double liquid_lower_edge(double t) {
  check_t(t);
  return std::log(2.0) / std::log(t);
}

double slope_angle(double y, double t) {
  check_t(t);
  double s = std::pow(t, y) / 2.0;
  if (!(s < 1.0)) throw std::domain_error("point below the liquid region");
  return 2.0 * std::asin(s);
}

double limit_shape_slope(double y, double t) {
  check_t(t);
  if (y <= liquid_lower_edge(t)) return 0.0;
  return (kPi - slope_angle(y, t)) / kPi;
}

double limit_shape_height(double y, double t) {
  check_t(t);
  double y0 = liquid_lower_edge(t);
  if (y <= y0) return 0.0;
  // substitute t^s = 2 sin(phi/2):  ds = cot(phi/2) / (2 log t) dphi,
  // H' = (pi - phi)/pi, s: y0 -> y  <=>  phi: pi -> phi(y)
  double phi_y = slope_angle(y, t);
  auto f = [&](double phi) {
    return (kPi - phi) / kPi * 0.5 / std::tan(0.5 * phi);
  };
  // integrand vanishes at phi = pi but grows like 1/phi towards phi = 0
  // (phi_y is exponentially small for large y): use panels graded to phi_y
  double val =
      integrate_graded(f, phi_y, kPi, phi_y, 60, 12) / std::abs(std::log(t));
  return val;
}

cplx zeta_map(double tau, double y, double t) {
  check_t(t);
  double s = std::pow(t, 2.0 * y);
  if (!(s > 0.0 && s < 4.0))
    throw std::domain_error("point outside the liquid region");
  return std::pow(t, -tau) *
         cplx(2.0 - s, std::sqrt(4.0 * s - s * s)) / 2.0;
}

cplx complex_slope(double tau, double y, double t) {
  return std::pow(t, tau) * zeta_map(tau, y, t);
}

cplx eta_map(double tau, double y, double t) {
  cplx w = std::pow(t, 2.0 * tau) * zeta_map(tau, y, t);
  double arg = std::arg(w);  // in (0, pi] on the liquid region
  if (arg <= 0.0) arg += 2.0 * kPi;
  return cplx(arg / (2.0 * kPi), -std::log(std::abs(w)) / (2.0 * kPi));
}

SlopeResiduals slope_residuals(double tau, double y, double t) {
  cplx z = complex_slope(tau, y, t);
  double tau_hat = tau, y_hat = y + 0.5 * tau;
  cplx a = std::pow(t, -y_hat) * (1.0 - z);
  cplx Q = a * a + std::pow(t, -tau_hat) * z;
  return {std::abs(Q), std::abs(std::abs(z) - 1.0)};
}

double horizontal_density(double y, double t) {
  return 1.0 - limit_shape_slope(y, t);
}

double central_binomial(int k) {
  double v = 1.0;
  for (int i = 1; i <= k; ++i) v = v * (k + i) / i;
  return v;
}

double slope_moment_closed(int k, double t) {
  check_t(t);
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  return central_binomial(k) / (2.0 * k * std::abs(std::log(t)));
}

double slope_moment_quadrature(int k, double t) {
  check_t(t);
  // same phi substitution as the height integral:
  // int H'(y) t^{2ky} dy = (1/(2|log t|)) int_0^pi ((pi-phi)/pi)
  //                        (2 sin(phi/2))^{2k} cot(phi/2) dphi
  auto f = [&](double phi) {
    double s2 = 2.0 * std::sin(0.5 * phi);
    return (kPi - phi) / kPi * std::pow(s2, 2 * k) / std::tan(0.5 * phi);
  };
  return integrate_gl(f, 0.0, kPi, 400) / (2.0 * std::abs(std::log(t)));
}

double wallis_integral_quadrature(int k) {
  // int_0^1 x^{2k} / sqrt(1 - x^2) dx via x = sin(u)
  auto f = [&](double u) { return std::pow(std::sin(u), 2 * k); };
  return integrate_gl(f, 0.0, 0.5 * kPi, 200);
}

double dirichlet_energy(double t) {
  check_t(t);
  double beta = std::abs(std::log(t)) / (2.0 * kPi);
  auto g = [](double x, double /*y*/) { return 2.0 * x; };
  double h = 1e-5;
  auto grad2 = [&](double x, double y) {
    double gx = (g(x + h, y) - g(x - h, y)) / (2.0 * h);
    double gy = (g(x, y + h) - g(x, y - h)) / (2.0 * h);
    return gx * gx + gy * gy;
  };
  // tensor Gauss-Legendre over (0, 1/2) x (0, beta)
  auto outer = [&](double x) {
    return integrate_gl([&](double y) { return grad2(x, y); }, 0.0, beta, 16);
  };
  return 0.5 * kPi * integrate_gl(outer, 0.0, 0.5, 16);
}

}  // namespace cylq
