#pragma once
// Exact multi-slice observable moments of the q^vol measure via n-fold contour
// integrals, their shift-mixed variants, and the N -> infinity asymptotics
// (mean, covariance in two equivalent quadrature forms, higher cumulants).
//
// For slices (tau_i, k_i), tau_i in 1..2N and r_i = q^{2 k_i} (q = t^{1/(2N)}):
//
//   E[ prod_i F_{r_i}(lambda^(tau_i)) ]
//     = prod_i (t;t)^2 / ((r_i t;t) (r_i^{-1} t;t) (1 - r_i^{-1}))
//       * (2 pi i)^{-n} oint...oint prod_{i<j} theta-cross(z_i / z_j)
//         prod_i Fq(tau_i, k_i, z_i)  dz_i / z_i,
//
// where Fq is the entire ratio F(tau, z) / F(tau, r^{-1} z) (k factors of each
// kind) and the cross factor is
//   theta1(w) theta1((r_j/r_i) w) / (theta1(r_j w) theta1(w / r_i)),
// on concentric circles with r_j^{-1} rho_j < rho_i < t^{-1} r_i rho_j for
// i < j (slices sorted by tau; throws if no such radii exist).

#include <vector>

#include "cylq/special.hpp"

namespace cylq {

struct Slice {
  int tau;  // column in 1..2N
  int k;    // moment order (r = q^{2k})
};

// true iff an admissible radius ladder exists for these slices
bool contours_feasible(const ModularData& md, std::vector<Slice> slices);

// E[ prod_i F_{r_i}(lambda^(tau_i)) ], n = slices.size() in 1..3.
// Trapezoid nodes per circle are doubled until the value is stable to rel_tol.
double contour_moment(const ModularData& md, std::vector<Slice> slices,
                      double rel_tol = 1e-9, int max_nodes = 2048);

// Shift-mixed moment = unshifted moment * theta3(u prod r_i; t) / theta3(u; t).
double shift_mixed_factor(const ModularData& md,
                          const std::vector<Slice>& slices, double u);
double shift_mixed_moment(const ModularData& md, std::vector<Slice> slices,
                          double u);

// Prelimit mean of (2N)^{-2} sum_y h(tau, y) t^{k y / N} and its limit
// binom(2k,k) / (2k log t)^2.
double prelimit_mean(const ModularData& md, int k, int tau);
double mean_asymptotic(int k, double t);

// Limit covariance, theta-kernel form: for 0 < tau1 <= tau2 <= 1,
//   -1/(4 k1 k2 (2 pi i log t)^2) * int int d2_log_Theta(eta1 - eta2)
//     prod_i (1 - t^{tau_i} e^{-2 pi i eta_i})^{k_i}
//            (1 - t^{-tau_i} e^{2 pi i eta_i})^{k_i} d eta_i
// over horizontal segments Re in [-1/2, 1/2] at heights c1 < c2 < c1 + beta.
double covariance_asymptotic(int k1, int k2, double tau1, double tau2,
                             double t, int nodes = 512);

// Same limit in Green's-function form:
//   (1/pi) int int G(eta(tau1,y1), eta(tau2,y2)) t^{2k1 y1} t^{2k2 y2} dy,
// both integrals over (log2/log t, infinity).
double greens_covariance(int k1, int k2, double tau1, double tau2, double t);

// Prelimit m-th cumulant of F-observables on one slice (m <= 3), assembled
// from contour moments; tends to 0 like N^{2-m} for m >= 3.
double cumulant_prelimit(const ModularData& md, int k, int tau, int m);

}  // namespace cylq
