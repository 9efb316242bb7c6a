#pragma once
// Jacobi theta functions with real nome t in (0,1), q-Pochhammer symbols, and
// the Dirichlet Green's function of the half-open cylinder
//
//     C = { eta : 0 < Re eta < 1/2 } / (eta ~ eta + omega),   omega = i*beta,
//     beta = |log t| / (2*pi).
//
// Conventions:
//   theta1(z; t) = sum_{m in Z} (-1)^m t^{m(m+1)/2} z^{m+1/2}
//                = (z^{1/2} - z^{-1/2}) (t;t)_inf (tz;t)_inf (t/z;t)_inf
//   theta3(z; t) = sum_{m in Z} t^{m^2/2} z^m
//                = (t;t)_inf prod_{n in Z>=0 + 1/2} (1 + t^n z)(1 + t^n / z)
//   Theta(eta | omega) = theta1(e^{2 pi i eta}; t),  t = e^{2 pi i omega}.
//
// theta1 has simple zeros exactly at z = t^n, n in Z, and satisfies the
// quasi-periodicity theta1(t z) = -t^{-1/2} z^{-1} theta1(z).

#include <complex>
#include <stdexcept>

namespace cylq {

using cplx = std::complex<double>;

// (a; t)_inf = prod_{n >= 1} (1 - a t^n).  Converges for any a since t < 1.
cplx q_pochhammer(cplx a, double t);

// Series evaluations; terms are added until they fall below eps * partial sum.
cplx theta1(cplx z, double t);
cplx theta3(cplx z, double t);

// Independent product-formula evaluations (used as oracles in tests).
cplx theta1_product(cplx z, double t);
cplx theta3_product(cplx z, double t);

struct ModularData {
  double t;      // t in (0,1)
  int N;         // half the number of columns
  double q;      // q = t^{1/(2N)}
  double beta;   // |log t| / (2 pi); omega = i * beta
  ModularData(double t_, int N_);
};

// Theta(eta | omega) = theta1(e^{2 pi i eta}; t) and its first two
// eta-derivatives, computed term by term from the exponential series.
cplx Theta(cplx eta, double t);
cplx Theta_d1(cplx eta, double t);
cplx Theta_d2(cplx eta, double t);

// d^2/d eta^2 log Theta(eta | omega).
cplx d2_log_Theta(cplx eta, double t);

// Green's function with Dirichlet conditions on Re eta in {0, 1/2}:
//   G(eta1, eta2) = -(1/2 pi) log | Theta(eta1 - eta2) / Theta(eta1 + conj(eta2)) |.
double greens(cplx eta1, cplx eta2, double t);

}  // namespace cylq
