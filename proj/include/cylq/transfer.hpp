#pragma once
// Exact finite-size engine for the q^vol measure on box-truncated
// configurations.  States are partitions inside an L x R box; the cyclic
// measure weight q^{sum_i |lambda^(i)|} factorizes over the 2N interlacing
// edges as q^{(|mu| + |la|)/2} per edge, so partition functions, marginals,
// correlation functions and observable expectations are traces of products of
// sparse transfer operators, evaluated densely (sizes are resource-guarded).
//
// Everything here is an oracle: exact up to the box truncation, whose tail is
// certified by comparing against an enlarged box.

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "cylq/core.hpp"

namespace cylq {

struct BoxTruncation {
  int rows = 0;  // L: max number of parts
  int cols = 0;  // R: max part size
};

// Diagonal insertion at one column of the cyclic trace.
struct Insertion {
  int tau;  // column in 1..2N
  std::function<double(const Partition&)> f;
};

// P(S) = u^S t^{S^2/2} / theta3(u; t) truncated to |S| <= s_max; the dropped
// tail is bounded by the first omitted terms (returned for certification).
struct ShiftDistribution {
  int s_max;
  std::vector<double> prob;  // index S + s_max
  double tail_bound;
  double p(int S) const {
    return (S < -s_max || S > s_max) ? 0.0
                                     : prob[static_cast<size_t>(S + s_max)];
  }
};
ShiftDistribution shift_distribution(double u, double t, int s_max = 0);
double shift_mean(const ShiftDistribution& d);
double shift_variance(const ShiftDistribution& d);

class TransferEngine {
 public:
  // q in (0,1) is the per-box weight; for the cylinder measure with modular
  // parameter t use q = t^{1/(2N)}.
  TransferEngine(int N, double q, BoxTruncation box);

  int num_states() const { return static_cast<int>(states_.size()); }
  std::int64_t num_interlacing_pairs() const { return nnz_; }
  const Partition& state(int idx) const { return states_[static_cast<size_t>(idx)]; }
  int state_index(const Partition& la) const;

  // Z = sum over box-truncated cyclic configurations of q^{sum |lambda|}.
  double partition_function() const;

  // Tr of the cyclic product with diagonal insertions, divided by Z:
  // E[ prod_i f_i(lambda^(tau_i)) ].
  double expectation(const std::vector<Insertion>& ins) const;

  // E[ prod_i F_{r_i}(lambda^(tau_i)) ] with the unshifted measure.
  double observable_expectation(const std::vector<std::pair<int, double>>&
                                    slices /* (tau, r) */) const;

  // P(all listed sites occupied), unshifted (S = 0); sites are (tau, x) with
  // x = site + 1/2.
  double correlation(const std::vector<std::pair<int, Site>>& sites) const;

  // Shift-mixed correlation: sum_S P(S) * correlation(sites - S).
  double correlation_shifted(const std::vector<std::pair<int, Site>>& sites,
                             const ShiftDistribution& sd) const;

  // Shift-mixed observable expectation: the shifted observables pick up the
  // common factor (prod_i r_i)^S, so the expectation factorizes as
  // E[prod F] * sum_S P(S) (prod r_i)^S (the S-sum truncated like sd).
  double observable_expectation_shifted(
      const std::vector<std::pair<int, double>>& slices,
      const ShiftDistribution& sd) const;

  // All configurations with their probabilities (tiny boxes only; throws if
  // the enumeration would exceed `budget` configurations).
  std::vector<std::pair<CylindricConfig, double>> enumerate_configs(
      std::int64_t budget = 10000000) const;

  // Exact sampling from the box-truncated measure (S = 0).
  CylindricConfig sample(std::mt19937_64& rng) const;

 private:
  struct Dense;  // column-major S x S matrix

  // Trace of the cyclic product with the given diagonal insertions
  // (empty vector = plain partition function * Z normalization).
  double cyclic_trace(const std::vector<std::vector<double>>& diag) const;
  void ensure_suffixes() const;

  int N_;
  double q_;
  BoxTruncation box_;
  std::vector<Partition> states_;
  std::vector<double> half_weight_;            // q^{|la|/2}
  std::vector<std::vector<int>> lower_of_;     // mu-indices with mu < la, per la
  std::int64_t nnz_ = 0;
  mutable std::vector<std::vector<double>> suffix_;  // dense suffix products
};

}  // namespace cylq
