#pragma once
// Macroscopic limit shape of the q^vol measure on the cylinder, in scaled
// coordinates (tau, y) with tau in R/Z (columns / 2N) and y = y_sharp / 2N.
//
// The liquid region is the set where t^{2y} in (0,4), i.e. y > y0 with
// y0 = log 2 / log t (< 0).  There the height profile has slope
//
//     H'(y) = (2/pi) * arctan( sqrt(4 t^{-2y} - 1) ),
//
// independent of tau, with H = 0 below y0 and H(y) - y -> 0 as y -> +infty.
//
// The complex slope at (tau, y) is z = e^{i phi} with t^{2y} = 4 sin^2(phi/2),
// phi in (0, pi); equivalently (1 - z^{-1})(1 - z) = t^{2y}.  The conformal
// coordinate eta(tau, y) = phi/(2 pi) + i tau beta maps each vertical slice to
// a horizontal segment of the cylinder (0, 1/2) x i R/(beta Z),
// beta = |log t| / (2 pi).

#include <complex>

#include "cylq/special.hpp"

namespace cylq {

double liquid_lower_edge(double t);          // y0 = log2 / log t
double limit_shape_slope(double y, double t);   // H'(y)
double limit_shape_height(double y, double t);  // H(y)

// phi(y) in (0, pi): t^y = 2 sin(phi/2) on the liquid region.
double slope_angle(double y, double t);

// zeta(tau, y) = t^{-tau} (2 - t^{2y} + i sqrt(4 t^{2y} - t^{4y})) / 2
cplx zeta_map(double tau, double y, double t);

// complex slope z = t^{tau} zeta(tau, y), |z| = 1
cplx complex_slope(double tau, double y, double t);

// eta(tau, y) = (1/2 pi i) log(t^{2 tau} zeta), branch Im log in (0, pi]
cplx eta_map(double tau, double y, double t);

// Residuals of the algebraic relations satisfied by the complex slope in the
// tilted coordinates (tau_hat, y_hat) = (tau, y + tau/2):
//   Q = (t^{-y_hat} (1 - z))^2 + t^{-tau_hat} z  and  |z| = 1.
struct SlopeResiduals {
  double Q_abs;        // |Q|
  double unit_circle;  // ||z| - 1|
};
SlopeResiduals slope_residuals(double tau, double y, double t);

// horizontal-lozenge density 1 - H'(y) = arg(z)/pi
double horizontal_density(double y, double t);

// int H'(y) t^{2ky} dy over the liquid region; closed form
// binom(2k, k) / (2k |log t|), verified against quadrature elsewhere.
double slope_moment_closed(int k, double t);
double slope_moment_quadrature(int k, double t);

// binom(2k,k) via the Wallis integral int_0^1 x^{2k}/sqrt(1-x^2) dx
// = binom(2k,k) pi / 2^{2k+1}; exact closed form also provided.
double central_binomial(int k);
double wallis_integral_quadrature(int k);

// (pi/2) * Dirichlet integral of g(x, y) = 2x over (0,1/2) x (0,beta) with a
// finite-difference gradient; equals |log t| / 2.
double dirichlet_energy(double t);

}  // namespace cylq
