#pragma once
// Small quadrature toolkit: Gauss-Legendre rules, graded composite rules for
// integrands with an endpoint or interior logarithmic singularity, uniform
// trapezoid rules for periodic (contour) integrands, and a compensated
// accumulator.

#include <functional>
#include <vector>

namespace cylq {

// Kahan compensated summation.
class KahanSum {
 public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0, c_ = 0.0;
};

struct GLRule {
  std::vector<double> x;  // nodes on (-1, 1)
  std::vector<double> w;
};

// n-point Gauss-Legendre rule (cached internally).
const GLRule& gauss_legendre(int n);

double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    int n);

// Composite Gauss-Legendre on panels geometrically graded towards the point
// `sing` in [a,b] (which may coincide with an endpoint).  Handles integrable
// logarithmic singularities: panels shrink towards `sing` down to a relative
// scale of 2^{-levels}, and the integrand is never evaluated at `sing`.
double integrate_graded(const std::function<double(double)>& f, double a,
                        double b, double sing, int levels = 44,
                        int pts_per_panel = 12);

// Uniform trapezoid rule for a 2*pi-periodic integrand: returns the average of
// f over m equispaced angles.  For integrands analytic in an annulus around
// the contour this converges geometrically in m.
double trapezoid_mean(const std::function<double(double)>& f, int m);

}  // namespace cylq
