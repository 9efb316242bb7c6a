#include "cylq/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "cylq/special.hpp"

namespace cylq {

ShiftDistribution shift_distribution(double u, double t, int s_max) {
  if (!(u > 0.0)) throw std::domain_error("u must be positive");
  if (!(t > 0.0 && t < 1.0)) throw std::domain_error("t must lie in (0,1)");
  if (s_max <= 0) {
    // grow until both tails are below 1e-18 of the peak term
    double peak = 1.0;
    for (int S = -1; ; --S) {
      double w = std::pow(u, S) * std::pow(t, 0.5 * S * S);
      peak = std::max(peak, w);
      if (w < 1e-18 * peak && -S > 3) break;
    }
    for (int S = 1; ; ++S) {
      double w = std::pow(u, S) * std::pow(t, 0.5 * S * S);
      peak = std::max(peak, w);
      if (w < 1e-18 * peak && S > 3) break;
    }
    for (int M = 4; ; ++M) {
      double lo = std::pow(u, -M) * std::pow(t, 0.5 * M * M);
      double hi = std::pow(u, M) * std::pow(t, 0.5 * M * M);
      if (lo < 1e-18 * peak && hi < 1e-18 * peak) {
        s_max = M;
        break;
      }
    }
  }
  ShiftDistribution d;
  d.s_max = s_max;
  double z3 = std::real(theta3(u, t));  // sum_S u^S t^{S^2/2}, exact normalizer
  d.prob.resize(static_cast<size_t>(2 * s_max + 1));
  for (int S = -s_max; S <= s_max; ++S)
    d.prob[static_cast<size_t>(S + s_max)] =
        std::pow(u, S) * std::pow(t, 0.5 * S * S) / z3;
  int M = s_max + 1;
  d.tail_bound = (std::pow(u, -M) * std::pow(t, 0.5 * M * M) +
                  std::pow(u, M) * std::pow(t, 0.5 * M * M)) *
                 2.0 / z3;
  return d;
}

double shift_mean(const ShiftDistribution& d) {
  double m = 0.0;
  for (int S = -d.s_max; S <= d.s_max; ++S) m += S * d.p(S);
  return m;
}

double shift_variance(const ShiftDistribution& d) {
  double m = shift_mean(d), v = 0.0;
  for (int S = -d.s_max; S <= d.s_max; ++S) v += (S - m) * (S - m) * d.p(S);
  return v;
}

namespace {

void gen_partitions(int rows, int cols, int maxpart, std::vector<int>& cur,
                    std::vector<Partition>& out) {
  out.emplace_back(cur);
  if (static_cast<int>(cur.size()) == rows) return;
  int hi = std::min(cols, maxpart);
  for (int p = hi; p >= 1; --p) {
    cur.push_back(p);
    gen_partitions(rows, cols, p, cur, out);
    cur.pop_back();
  }
}

// all mu with mu < la (inside the same box automatically)
void gen_interlacers(const Partition& la, int row, std::vector<int>& cur,
                     const std::map<std::vector<int>, int>& index,
                     std::vector<int>& out) {
  if (row == la.length()) {
    std::vector<int> c = cur;
    while (!c.empty() && c.back() == 0) c.pop_back();
    out.push_back(index.at(c));
    return;
  }
  for (int p = la.part(row); p >= la.part(row + 1); --p) {
    cur.push_back(p);
    gen_interlacers(la, row + 1, cur, index, out);
    cur.pop_back();
  }
}

}  // namespace

struct TransferEngine::Dense {
  int n;
  std::vector<double> a;  // column-major
  explicit Dense(int n_) : n(n_), a(static_cast<size_t>(n_) * n_, 0.0) {}
  double* col(int c) { return a.data() + static_cast<size_t>(c) * n; }
  const double* col(int c) const {
    return a.data() + static_cast<size_t>(c) * n;
  }
};

TransferEngine::TransferEngine(int N, double q, BoxTruncation box)
    : N_(N), q_(q), box_(box) {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("q must lie in (0,1)");
  if (box.rows < 0 || box.cols < 0) throw std::invalid_argument("bad box");
  std::vector<int> cur;
  gen_partitions(box.rows, box.cols, box.cols, cur, states_);
  if (states_.size() > 20000)
    throw std::invalid_argument("box too large for the exact engine");
  std::sort(states_.begin(), states_.end(),
            [](const Partition& a, const Partition& b) {
              return a.parts() < b.parts();
            });
  std::map<std::vector<int>, int> index;
  for (size_t i = 0; i < states_.size(); ++i)
    index[states_[i].parts()] = static_cast<int>(i);
  half_weight_.resize(states_.size());
  for (size_t i = 0; i < states_.size(); ++i)
    half_weight_[i] = std::pow(q_, 0.5 * static_cast<double>(states_[i].size()));
  lower_of_.resize(states_.size());
  for (size_t i = 0; i < states_.size(); ++i) {
    std::vector<int> c;
    gen_interlacers(states_[i], 0, c, index, lower_of_[i]);
    nnz_ += static_cast<std::int64_t>(lower_of_[i].size());
  }
}

int TransferEngine::state_index(const Partition& la) const {
  auto it = std::lower_bound(states_.begin(), states_.end(), la,
                             [](const Partition& a, const Partition& b) {
                               return a.parts() < b.parts();
                             });
  if (it == states_.end() || !(*it == la))
    throw std::invalid_argument("partition outside the box");
  return static_cast<int>(it - states_.begin());
}

double TransferEngine::cyclic_trace(
    const std::vector<std::vector<double>>& diag) const {
  int S = num_states();
  if (static_cast<std::int64_t>(S) * S > 200000000)
    throw std::invalid_argument("dense product too large");
  auto d = [&](int col, int s) -> double {
    const auto& v = diag[static_cast<size_t>(col - 1)];
    return v.empty() ? 1.0 : v[static_cast<size_t>(s)];
  };
  Dense A(S), B(S);
  // A starts as D_1 E_1; then absorb D_j E_j for j = 2..2N.
  // Edge j is "up" (mu at j, la at j+1, mu < la) for odd j, "down" for even j.
  for (int c = 0; c < S; ++c) {
    double wc = half_weight_[static_cast<size_t>(c)];
    for (int b : lower_of_[static_cast<size_t>(c)]) {
      // E_1 (up): entry (b, c)
      A.col(c)[b] = d(1, b) * half_weight_[static_cast<size_t>(b)] * wc;
    }
  }
  for (int j = 2; j <= 2 * N_; ++j) {
    std::fill(B.a.begin(), B.a.end(), 0.0);
    if (j % 2 == 1) {
      // up edge: E_j(b, c) nonzero iff b < c
      for (int c = 0; c < S; ++c) {
        double wc = half_weight_[static_cast<size_t>(c)];
        double* outc = B.col(c);
        for (int b : lower_of_[static_cast<size_t>(c)]) {
          double w = d(j, b) * half_weight_[static_cast<size_t>(b)] * wc;
          const double* inb = A.col(b);
          for (int a = 0; a < S; ++a) outc[a] += w * inb[a];
        }
      }
    } else {
      // down edge: E_j(b, c) nonzero iff c < b
      for (int b = 0; b < S; ++b) {
        double wb = d(j, b) * half_weight_[static_cast<size_t>(b)];
        const double* inb = A.col(b);
        for (int c : lower_of_[static_cast<size_t>(b)]) {
          double w = wb * half_weight_[static_cast<size_t>(c)];
          double* outc = B.col(c);
          for (int a = 0; a < S; ++a) outc[a] += w * inb[a];
        }
      }
    }
    std::swap(A.a, B.a);
  }
  double tr = 0.0;
  for (int s = 0; s < S; ++s) tr += A.col(s)[s];
  return tr;
}

double TransferEngine::partition_function() const {
  std::vector<std::vector<double>> diag(static_cast<size_t>(2 * N_));
  return cyclic_trace(diag);
}

double TransferEngine::expectation(const std::vector<Insertion>& ins) const {
  std::vector<std::vector<double>> diag(static_cast<size_t>(2 * N_));
  for (const Insertion& in : ins) {
    if (in.tau < 1 || in.tau > 2 * N_)
      throw std::invalid_argument("insertion column out of range");
    auto& v = diag[static_cast<size_t>(in.tau - 1)];
    if (v.empty()) v.assign(static_cast<size_t>(num_states()), 1.0);
    for (int s = 0; s < num_states(); ++s)
      v[static_cast<size_t>(s)] *= in.f(states_[static_cast<size_t>(s)]);
  }
  std::vector<std::vector<double>> none(static_cast<size_t>(2 * N_));
  return cyclic_trace(diag) / cyclic_trace(none);
}

double TransferEngine::observable_expectation(
    const std::vector<std::pair<int, double>>& slices) const {
  std::vector<Insertion> ins;
  for (auto [tau, r] : slices)
    ins.push_back({tau, [r](const Partition& la) {
                     return observable_F(la, r);
                   }});
  return expectation(ins);
}

double TransferEngine::correlation(
    const std::vector<std::pair<int, Site>>& sites) const {
  std::vector<Insertion> ins;
  for (auto [tau, x] : sites)
    ins.push_back({tau, [x](const Partition& la) -> double {
                     for (int i = 0; i < la.length(); ++i)
                       if (la.part(i) - (i + 1) == x) return 1.0;
                     return x < -la.length() ? 1.0 : 0.0;
                   }});
  return expectation(ins);
}

double TransferEngine::correlation_shifted(
    const std::vector<std::pair<int, Site>>& sites,
    const ShiftDistribution& sd) const {
  double out = 0.0;
  for (int S = -sd.s_max; S <= sd.s_max; ++S) {
    std::vector<std::pair<int, Site>> shifted = sites;
    for (auto& p : shifted) p.second -= S;
    out += sd.p(S) * correlation(shifted);
  }
  return out;
}

double TransferEngine::observable_expectation_shifted(
    const std::vector<std::pair<int, double>>& slices,
    const ShiftDistribution& sd) const {
  double rprod = 1.0;
  for (auto& s : slices) rprod *= s.second;
  double mix = 0.0;
  for (int S = -sd.s_max; S <= sd.s_max; ++S)
    mix += sd.p(S) * std::pow(rprod, S);
  return observable_expectation(slices) * mix;
}

std::vector<std::pair<CylindricConfig, double>>
TransferEngine::enumerate_configs(std::int64_t budget) const {
  std::vector<std::pair<CylindricConfig, double>> out;
  std::vector<int> chain(static_cast<size_t>(2 * N_));
  std::int64_t visited = 0;
  double Z = 0.0;
  // upper_of: inverse adjacency, built once
  std::vector<std::vector<int>> upper_of(states_.size());
  for (size_t la = 0; la < states_.size(); ++la)
    for (int mu : lower_of_[la]) upper_of[static_cast<size_t>(mu)].push_back(static_cast<int>(la));

  std::function<void(int)> rec = [&](int j) {
    if (++visited > budget)
      throw std::runtime_error("enumeration budget exceeded");
    if (j == 2 * N_) {
      // cyclic closure: column 2N must dominate column 1
      const auto& low = lower_of_[static_cast<size_t>(chain[static_cast<size_t>(2 * N_ - 1)])];
      if (std::find(low.begin(), low.end(), chain[0]) == low.end()) return;
      CylindricConfig cfg;
      cfg.N = N_;
      cfg.shift = 0;
      double w = 1.0;
      for (int c = 0; c < 2 * N_; ++c) {
        cfg.columns.push_back(states_[static_cast<size_t>(chain[static_cast<size_t>(c)])]);
        w *= std::pow(q_, static_cast<double>(cfg.columns.back().size()));
      }
      Z += w;
      out.emplace_back(std::move(cfg), w);
      return;
    }
    int prev = chain[static_cast<size_t>(j - 1)];
    const auto& nexts = (j % 2 == 1) ? upper_of[static_cast<size_t>(prev)]
                                     : lower_of_[static_cast<size_t>(prev)];
    for (int s : nexts) {
      chain[static_cast<size_t>(j)] = s;
      rec(j + 1);
    }
  };
  for (int s = 0; s < num_states(); ++s) {
    chain[0] = s;
    rec(1);
  }
  for (auto& p : out) p.second /= Z;
  return out;
}

void TransferEngine::ensure_suffixes() const {
  if (!suffix_.empty()) return;
  int S = num_states();
  if (S > 1500) throw std::invalid_argument("box too large for exact sampling");
  // suffix_[j] (0-based j = column) = E_{j+1} ... E_{2N} as dense, column-major
  suffix_.assign(static_cast<size_t>(2 * N_), {});
  Dense cur(S);
  for (int j = 2 * N_; j >= 1; --j) {
    Dense next(S);
    if (j == 2 * N_) {
      // next = E_{2N} itself (down edge: 2N even)
      for (int b = 0; b < S; ++b) {
        double wb = half_weight_[static_cast<size_t>(b)];
        for (int c : lower_of_[static_cast<size_t>(b)])
          next.col(c)[b] = wb * half_weight_[static_cast<size_t>(c)];
      }
    } else if (j % 2 == 1) {
      // next = E_j * cur, E_j up: (b, m) nonzero iff b < m
      for (int c = 0; c < S; ++c) {
        const double* inc = cur.col(c);
        double* outc = next.col(c);
        for (int m = 0; m < S; ++m) {
          double v = inc[m];
          if (v == 0.0) continue;
          double wm = half_weight_[static_cast<size_t>(m)] * v;
          for (int b : lower_of_[static_cast<size_t>(m)])
            outc[b] += half_weight_[static_cast<size_t>(b)] * wm;
        }
      }
    } else {
      // E_j down: (b, m) nonzero iff m < b
      for (int c = 0; c < S; ++c) {
        const double* inc = cur.col(c);
        double* outc = next.col(c);
        for (int b = 0; b < S; ++b) {
          double wb = half_weight_[static_cast<size_t>(b)];
          double acc = 0.0;
          for (int m : lower_of_[static_cast<size_t>(b)])
            acc += half_weight_[static_cast<size_t>(m)] * inc[m];
          outc[b] += wb * acc;
        }
      }
    }
    suffix_[static_cast<size_t>(j - 1)] = next.a;
    cur.a = next.a;
  }
}

CylindricConfig TransferEngine::sample(std::mt19937_64& rng) const {
  ensure_suffixes();
  int S = num_states();
  std::uniform_real_distribution<double> U(0.0, 1.0);
  auto suffix = [&](int j, int row, int col) -> double {
    return suffix_[static_cast<size_t>(j - 1)]
                  [static_cast<size_t>(col) * S + row];
  };
  // marginal of column 1: diagonal of the full cycle
  std::vector<double> w(static_cast<size_t>(S));
  double tot = 0.0;
  for (int s = 0; s < S; ++s) tot += (w[static_cast<size_t>(s)] = suffix(1, s, s));
  std::vector<int> chain(static_cast<size_t>(2 * N_));
  double x = U(rng) * tot;
  int s1 = S - 1;
  for (int s = 0; s < S; ++s) {
    x -= w[static_cast<size_t>(s)];
    if (x <= 0.0) { s1 = s; break; }
  }
  chain[0] = s1;
  for (int j = 1; j < 2 * N_; ++j) {
    int prev = chain[static_cast<size_t>(j - 1)];
    // candidates for column j+1 and their conditional weights
    std::vector<std::pair<int, double>> cand;
    double ctot = 0.0;
    auto push = [&](int s) {
      double e = half_weight_[static_cast<size_t>(prev)] *
                 half_weight_[static_cast<size_t>(s)];
      double wgt = e * suffix(j + 1, s, s1);
      cand.emplace_back(s, wgt);
      ctot += wgt;
    };
    if (j % 2 == 1) {
      for (int s = 0; s < S; ++s) {
        const auto& low = lower_of_[static_cast<size_t>(s)];
        if (std::find(low.begin(), low.end(), prev) != low.end()) push(s);
      }
    } else {
      for (int s : lower_of_[static_cast<size_t>(prev)]) push(s);
    }
    double y = U(rng) * ctot;
    int pick = cand.back().first;
    for (auto& [s, wgt] : cand) {
      y -= wgt;
      if (y <= 0.0) { pick = s; break; }
    }
    chain[static_cast<size_t>(j)] = pick;
  }
  CylindricConfig cfg;
  cfg.N = N_;
  cfg.shift = 0;
  for (int c = 0; c < 2 * N_; ++c)
    cfg.columns.push_back(states_[static_cast<size_t>(chain[static_cast<size_t>(c)])]);
  validate(cfg);
  return cfg;
}

}  // namespace cylq
