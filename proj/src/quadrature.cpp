#include "cylq/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

namespace cylq {

namespace {
GLRule compute_gl(int n) {
  // Newton iteration on Legendre P_n from the Chebyshev initial guess.
  GLRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p1 = 0.0;
    for (int it = 0; it < 100; ++it) {
      // evaluate P_n and P_{n-1} by recurrence
      double p0 = 1.0;
      p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      double dp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        p1 = p0;
        break;
      }
      p1 = p0;
    }
    // recompute derivative at the converged node for the weight
    double q0 = 1.0, q1 = 0.0;
    for (int j = 0; j < n; ++j) {
      double q2 = q1;
      q1 = q0;
      q0 = ((2.0 * j + 1.0) * x * q1 - j * q2) / (j + 1.0);
    }
    double dp = n * (x * q0 - q1) / (x * x - 1.0);
    r.x[i] = x;
    r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}
}  // namespace

const GLRule& gauss_legendre(int n) {
  static std::map<int, GLRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gl(n)).first;
  return it->second;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    int n) {
  const GLRule& r = gauss_legendre(n);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  KahanSum s;
  for (int i = 0; i < n; ++i) s.add(r.w[i] * f(mid + half * r.x[i]));
  return half * s.value();
}

namespace {
// graded panels from `far` towards `near` (the singular end)
double graded_one_side(const std::function<double(double)>& f, double near,
                       double far, int levels, int pts) {
  double len = far - near;  // signed
  if (len == 0.0) return 0.0;
  // keep panels wider than a few ulps of the endpoints, otherwise the nodes
  // round onto the singular point itself
  double wmin = 32.0 * std::numeric_limits<double>::epsilon() *
                std::max(std::abs(near), 1e-30) / std::abs(len);
  KahanSum s;
  double hi = 1.0;
  for (int l = 0; l < levels; ++l) {
    double lo = (l + 1 == levels) ? 0.0 : hi * 0.5;
    // the closure panel [0, hi] has nodes down to ~0.005 hi (innermost
    // Gauss node), so it needs a proportionally larger width floor
    double eff = (lo == 0.0) ? 0.004 * hi : hi - lo;
    if (eff < wmin) {
      if (lo == 0.0) break;
      hi = lo;
      continue;
    }
    s.add(integrate_gl(f, near + lo * len, near + hi * len, pts));
    hi = lo;
  }
  return s.value();
}
}  // namespace

double integrate_graded(const std::function<double(double)>& f, double a,
                        double b, double sing, int levels, int pts_per_panel) {
  if (!(a <= sing && sing <= b) || !(a < b))
    throw std::invalid_argument("integrate_graded needs a <= sing <= b, a < b");
  // On the deepest panel (size ~ |b-a| 2^-levels) an integrable log
  // singularity contributes O(eps log eps), negligible at levels ~ 44.
  return graded_one_side(f, sing, a, levels, pts_per_panel) * -1.0 +
         graded_one_side(f, sing, b, levels, pts_per_panel);
}

double trapezoid_mean(const std::function<double(double)>& f, int m) {
  KahanSum s;
  for (int j = 0; j < m; ++j) s.add(f(2.0 * M_PI * j / m));
  return s.value() / m;
}

}  // namespace cylq
