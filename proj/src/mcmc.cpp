#include "cylq/mcmc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "cylq/limitshape.hpp"

namespace cylq {

namespace {
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace

BoxTruncation default_sampling_box(int N) {
  return BoxTruncation{6 * N, 6 * N};
}

Chain::Chain(const ModularData& md, BoxTruncation box, std::uint64_t seed)
    : md_(md), box_(box), rng_(seed) {
  if (box_.rows < 1 || box_.cols < 1)
    throw std::invalid_argument("truncation box must be non-empty");
  // Warm start on the limit-shape staircase: the scaled number of particles
  // above height y is H(y) - y, so the i-th particle sits at the y solving
  // H(y) - y = (i - 1/2) / 2N and la_i = 2N y + i - 1/2.  Identical columns
  // interlace trivially and sit close to the stationary interface, which
  // cuts the burn-in needed to erase the initial displacement.
  double n2 = 2.0 * md_.N;
  std::vector<int> profile(static_cast<size_t>(box_.rows), 0);
  for (int i = 0; i < box_.rows; ++i) {
    double count = (i + 0.5) / n2;
    double lo = -count - 1.0, hi = 8.0 / std::abs(std::log(md_.t)) + 1.0;
    for (int it = 0; it < 60; ++it) {
      double mid = 0.5 * (lo + hi);
      (limit_shape_height(mid, md_.t) - mid > count ? lo : hi) = mid;
    }
    double la = n2 * 0.5 * (lo + hi) + i + 0.5;
    profile[static_cast<size_t>(i)] =
        std::clamp(static_cast<int>(std::lround(std::max(0.0, la))), 0,
                   box_.cols);
  }
  for (int i = 1; i < box_.rows; ++i)
    profile[static_cast<size_t>(i)] = std::min(profile[static_cast<size_t>(i)],
                                               profile[static_cast<size_t>(i - 1)]);
  cols_.assign(static_cast<size_t>(2 * md_.N), profile);
}

int Chain::part(int tau, int i) const {
  const auto& c = cols_[static_cast<size_t>((tau - 1 + 2 * md_.N) % (2 * md_.N))];
  return (i >= 0 && i < box_.rows) ? c[static_cast<size_t>(i)] : 0;
}

// Interlacing mu < la reads la_i >= mu_i >= la_{i+1} (0-based rows).  Columns
// with odd tau (even 0-based index) play the mu role against both cyclic
// neighbours; even tau the la role.
bool Chain::admissible(int col, int i, int v) const {
  if (v < 0 || v > box_.cols) return false;
  const auto& c = cols_[static_cast<size_t>(col)];
  if (i > 0 && v > c[static_cast<size_t>(i - 1)]) return false;
  if (i + 1 < box_.rows && v < c[static_cast<size_t>(i + 1)]) return false;
  int n2 = 2 * md_.N;
  int nb[2] = {(col + n2 - 1) % n2, (col + 1) % n2};
  bool is_mu = (col % 2 == 0);  // tau = col + 1 odd
  for (int other : nb) {
    const auto& o = cols_[static_cast<size_t>(other)];
    if (is_mu) {
      if (v > o[static_cast<size_t>(i)]) return false;
      if (i + 1 < box_.rows && v < o[static_cast<size_t>(i + 1)]) return false;
    } else {
      if (v < o[static_cast<size_t>(i)]) return false;
      if (i > 0 && v > o[static_cast<size_t>(i - 1)]) return false;
    }
  }
  return true;
}

bool Chain::step() {
  int n2 = 2 * md_.N;
  std::uniform_int_distribution<int> pick_col(0, n2 - 1);
  std::uniform_int_distribution<int> pick_row(0, box_.rows - 1);
  std::uniform_int_distribution<int> pick_sign(0, 1);
  int col = pick_col(rng_);
  int i = pick_row(rng_);
  int d = pick_sign(rng_) ? 1 : -1;
  int cur = cols_[static_cast<size_t>(col)][static_cast<size_t>(i)];
  int v = cur + d;
  if (!admissible(col, i, v)) return false;
  if (d > 0) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    if (unif(rng_) >= md_.q) return false;  // accept with probability q^{+1}
  }
  cols_[static_cast<size_t>(col)][static_cast<size_t>(i)] = v;
  return true;
}

void Chain::sweep() {
  std::int64_t proposals =
      static_cast<std::int64_t>(2 * md_.N) * box_.rows;
  for (std::int64_t p = 0; p < proposals; ++p) step();
  ++sweeps_;
  for (const auto& c : cols_) {
    if (c.front() == box_.cols || c.back() > 0) {
      ++boundary_hits_;
      break;
    }
  }
}

double Chain::boundary_occupancy() const {
  return sweeps_ > 0 ? static_cast<double>(boundary_hits_) /
                           static_cast<double>(sweeps_)
                     : 0.0;
}

CylindricConfig Chain::config() const {
  CylindricConfig cfg;
  cfg.N = md_.N;
  cfg.shift = 0;
  cfg.columns.reserve(cols_.size());
  for (const auto& c : cols_) {
    std::vector<int> parts;
    for (int v : c) {
      if (v == 0) break;
      parts.push_back(v);
    }
    cfg.columns.emplace_back(std::move(parts));
  }
  return cfg;
}

int sample_shift(const ShiftDistribution& sd, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double r = unif(rng);
  double acc = 0.0;
  for (int S = -sd.s_max; S <= sd.s_max; ++S) {
    acc += sd.p(S);
    if (r < acc) return S;
  }
  return sd.s_max;
}

double integrated_autocorrelation(const std::vector<double>& series) {
  std::int64_t n = static_cast<std::int64_t>(series.size());
  if (n < 4) return 1.0;
  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= static_cast<double>(n);
  auto gamma = [&](std::int64_t lag) {
    double s = 0.0;
    for (std::int64_t i = 0; i + lag < n; ++i)
      s += (series[static_cast<size_t>(i)] - mean) *
           (series[static_cast<size_t>(i + lag)] - mean);
    return s / static_cast<double>(n);
  };
  double g0 = gamma(0);
  if (!(g0 > 0.0)) return 1.0;
  // Geyer initial positive sequence: sum consecutive-lag pairs while positive.
  double tau = 1.0;
  for (std::int64_t m = 0; 2 * m + 2 < n / 2; ++m) {
    double pair = gamma(2 * m + 1) + gamma(2 * m + 2);
    if (pair <= 0.0) break;
    tau += 2.0 * pair / g0;
  }
  return tau;
}

RunResult run_chain(const ModularData& md, BoxTruncation box,
                    std::int64_t sweeps, std::int64_t burn_in,
                    std::int64_t thinning, std::uint64_t seed) {
  if (sweeps < 0 || burn_in < 0 || thinning < 1)
    throw std::invalid_argument("bad chain schedule");
  Chain chain(md, box, seed);
  for (std::int64_t s = 0; s < burn_in; ++s) chain.sweep();
  RunResult out;
  double r = md.q * md.q;  // k = 1 slice observable parameter
  for (std::int64_t s = 1; s <= sweeps; ++s) {
    chain.sweep();
    if (s % thinning == 0) {
      CylindricConfig cfg = chain.config();
      out.observable.push_back(observable_F(cfg.column(2 * md.N), r));
      out.samples.push_back(std::move(cfg));
    }
  }
  out.autocorrelation_time = integrated_autocorrelation(out.observable);
  out.boundary_occupancy = chain.boundary_occupancy();
  return out;
}

std::vector<RunResult> run_chains(const ModularData& md, BoxTruncation box,
                                  std::int64_t sweeps, std::int64_t burn_in,
                                  std::int64_t thinning, std::uint64_t seed,
                                  int n_chains, int threads) {
  if (n_chains < 1) throw std::invalid_argument("need at least one chain");
  std::vector<RunResult> results(static_cast<size_t>(n_chains));
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      int idx = next.fetch_add(1);
      if (idx >= n_chains) return;
      std::uint64_t chain_seed =
          splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(idx)));
      results[static_cast<size_t>(idx)] =
          run_chain(md, box, sweeps, burn_in, thinning, chain_seed);
    }
  };
  int nt = std::max(1, std::min(threads, n_chains));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(nt));
  for (int i = 0; i < nt; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return results;
}

}  // namespace cylq
