#pragma once
// Determinantal correlation kernel K(sigma,x;tau,y) of the shift-mixed
// measure, extracted as a double Fourier coefficient of the generating series
//
//   sum_{x,y in Z'} K(sigma,x;tau,y) zeta^x eta^y
//     = F(sigma,zeta) / F(tau,eta^{-1}) * A(zeta eta),
//
//   A(z) = (t;t)^3 theta3(uz;t) / (theta1(z;t) theta3(u;t)),
//
// where the series expansion of A picks the annulus 1 < |zeta eta| < t^{-1}
// for sigma <= tau and t < |zeta eta| < 1 for sigma > tau, and
//
//   F(tau,z) = prod_{i > tau} (1 - q^i / z) / prod_{j < tau} (1 - q^{-j} z),
//   i in 2Z + 1/2, j in 2Z - 1/2.
//
// Shift-mixed correlation functions are rho_k = det[K(tau_i,x_i;tau_j,x_j)].

#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "cylq/core.hpp"
#include "cylq/special.hpp"

namespace cylq {

// Certified truncation of the infinite products (factors below eps omitted;
// their aggregate effect is O(eps / (1-q))). Throws near a pole of F.
cplx F_of(int tau, cplx z, const ModularData& md, double eps = 1e-18);

struct KernelOptions {
  // perturbations of the two circle radii, in log_q units (must keep the
  // radii admissible; used to check radius independence)
  double dzeta = 0.0;
  double deta = 0.0;
  int max_nodes = 4096;
  double tol = 1e-10;
  // 0: pick the annulus from sigma <= tau; 1/2: force the first/second
  // branch (at sigma == tau the two differ by exactly delta_{x,y})
  int branch = 0;
};

// K(sigma, x; tau, y) with x = site_x + 1/2, y = site_y + 1/2.
double kernel_entry(const ModularData& md, double u, int sigma, Site site_x,
                    int tau, Site site_y, const KernelOptions& opt = {});

// rho_k^{shift} = det[K] over the given (column, site) points.
double shifted_correlation(const ModularData& md, double u,
                           const std::vector<std::pair<int, Site>>& points,
                           const KernelOptions& opt = {});

// Memoized thread-safe kernel evaluations at fixed (md, u).
class KernelCache {
 public:
  KernelCache(const ModularData& md, double u) : md_(md), u_(u) {}
  double entry(int sigma, Site x, int tau, Site y) const;
  double correlation(const std::vector<std::pair<int, Site>>& points) const;

 private:
  ModularData md_;
  double u_;
  mutable std::mutex mu_;
  mutable std::map<std::tuple<int, Site, int, Site>, double> table_;
};

}  // namespace cylq
