#pragma once
// Single-site Metropolis sampler for the box-truncated q^vol measure on
// cyclically interlacing partition tuples, plus an independent sampler for
// the discrete Gaussian shift.
//
// A move picks a uniform (column, row), proposes changing that part by +-1
// with probability 1/2 each, rejects proposals that break interlacing with
// either cyclic neighbour or the box bounds, and otherwise accepts with
// probability min(1, q^{+-1}).  The chain satisfies detailed balance with
// respect to q^{sum |lambda|} restricted to the box, and any configuration
// is reachable from the empty one by such moves, so the chain is ergodic.
//
// The shift S is independent of the partition tuple under the shift-mixed
// measure, so it is sampled separately from its exact finite table and added
// post hoc where shifted statistics are needed.

#include <cstdint>
#include <random>
#include <vector>

#include "cylq/core.hpp"
#include "cylq/special.hpp"
#include "cylq/transfer.hpp"

namespace cylq {

// Default truncation box for sampling at size N: the liquid band of the
// measure has height of order N, so rows = cols = 6N leaves the boundary
// exponentially unlikely to be touched.
BoxTruncation default_sampling_box(int N);

class Chain {
 public:
  Chain(const ModularData& md, BoxTruncation box, std::uint64_t seed);

  // One proposal; returns true if it was accepted.
  bool step();

  // One sweep = 2N * rows proposals; updates the boundary-occupancy monitor.
  void sweep();

  const ModularData& modular_data() const { return md_; }
  const BoxTruncation& box() const { return box_; }
  std::int64_t sweeps_done() const { return sweeps_; }

  // Fraction of completed sweeps that ended with the box boundary occupied
  // (some column with a full-length part or a part of maximal size).
  double boundary_occupancy() const;

  // Current state as a validated configuration (S = 0).
  CylindricConfig config() const;

  // Part i (0-based) of column tau (1..2N), zero beyond the stored rows.
  int part(int tau, int i) const;

 private:
  bool admissible(int col, int i, int v) const;

  ModularData md_;
  BoxTruncation box_;
  std::vector<std::vector<int>> cols_;  // 2N columns, box_.rows parts each
  std::mt19937_64 rng_;
  std::int64_t sweeps_ = 0;
  std::int64_t boundary_hits_ = 0;
};

// Inverse-CDF draw of the shift from its exact finite table.
int sample_shift(const ShiftDistribution& sd, std::mt19937_64& rng);

// Integrated autocorrelation time of a scalar series by Geyer's initial
// positive sequence estimator; returns 1 for uncorrelated data.
double integrated_autocorrelation(const std::vector<double>& series);

struct RunResult {
  std::vector<CylindricConfig> samples;  // every `thinning`-th post-burn-in
  std::vector<double> observable;        // k=1 slice observable per sample
  double autocorrelation_time = 1.0;     // of the observable series, in units
                                         // of thinned samples
  double boundary_occupancy = 0.0;
};

// Run one chain for burn_in + sweeps sweeps, recording every thinning-th
// configuration after burn-in together with the k=1 slice observable
// F_{q^2}(lambda^(2N)).  Identical seeds give identical streams.
RunResult run_chain(const ModularData& md, BoxTruncation box,
                    std::int64_t sweeps, std::int64_t burn_in,
                    std::int64_t thinning, std::uint64_t seed);

// Several independent chains, one thread each (capped at `threads`), with
// per-chain seeds derived from `seed` by index splitting.  Results are
// ordered by chain index regardless of scheduling.
std::vector<RunResult> run_chains(const ModularData& md, BoxTruncation box,
                                  std::int64_t sweeps, std::int64_t burn_in,
                                  std::int64_t thinning, std::uint64_t seed,
                                  int n_chains, int threads);

}  // namespace cylq
