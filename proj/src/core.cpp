#include "cylq/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cylq {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 0) throw std::invalid_argument("negative part");
    if (i + 1 < parts_.size() && parts_[i] < parts_[i + 1])
      throw std::invalid_argument("parts not weakly decreasing");
  }
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
}

std::int64_t Partition::size() const {
  std::int64_t s = 0;
  for (int p : parts_) s += p;
  return s;
}

bool interlaces(const Partition& mu, const Partition& la) {
  // la_1 >= mu_1 >= la_2 >= mu_2 >= ...
  int n = std::max(mu.length(), la.length());
  for (int i = 0; i < n; ++i) {
    if (la.part(i) < mu.part(i)) return false;
    if (mu.part(i) < la.part(i + 1)) return false;
  }
  return true;
}

const Partition& CylindricConfig::column(int tau) const {
  int m = 2 * N;
  int j = ((tau - 1) % m + m) % m;
  return columns[static_cast<size_t>(j)];
}

void validate(const CylindricConfig& cfg) {
  if (cfg.N < 1) throw std::invalid_argument("N must be >= 1");
  if (static_cast<int>(cfg.columns.size()) != 2 * cfg.N)
    throw std::invalid_argument("expected 2N partitions");
  for (int j = 1; j <= 2 * cfg.N; j += 2) {
    // odd column j interlaces below both even neighbours j+1 and j-1
    if (!interlaces(cfg.column(j), cfg.column(j + 1)))
      throw std::invalid_argument("interlacing fails between columns " +
                                  std::to_string(j) + " and " +
                                  std::to_string(j + 1));
    if (!interlaces(cfg.column(j), cfg.column(j - 1)))
      throw std::invalid_argument("interlacing fails between columns " +
                                  std::to_string(j) + " and " +
                                  std::to_string(j - 1));
  }
}

std::int64_t volume(const CylindricConfig& cfg) {
  std::int64_t v = 0;
  for (const Partition& la : cfg.columns) v += la.size();
  std::int64_t s = cfg.shift;
  return v + static_cast<std::int64_t>(cfg.N) * s * s;
}

std::vector<Site> occupied_sites(const CylindricConfig& cfg, int tau) {
  const Partition& la = cfg.column(tau);
  std::vector<Site> out;
  out.reserve(static_cast<size_t>(la.length()));
  for (int i = 0; i < la.length(); ++i)
    out.push_back(cfg.shift + la.part(i) - (i + 1));
  return out;
}

bool is_occupied(const CylindricConfig& cfg, int tau, Site site) {
  const Partition& la = cfg.column(tau);
  int len = la.length();
  if (site < cfg.shift - len) return true;  // densely packed below
  for (int i = 0; i < len; ++i)
    if (cfg.shift + la.part(i) - (i + 1) == site) return true;
  return false;
}

std::int64_t height(const CylindricConfig& cfg, int tau, Site y_site) {
  const Partition& la = cfg.column(tau);
  int len = la.length();
  // Everything below shift - len is occupied, so start counting there.
  Site lo = cfg.shift - len;
  std::int64_t h = 0;
  for (Site x = lo; x < y_site; ++x)
    if (!is_occupied(cfg, tau, x)) ++h;
  return h;
}

std::vector<ColumnPointSet> to_point_sets(const CylindricConfig& cfg) {
  std::vector<ColumnPointSet> out;
  out.reserve(cfg.columns.size());
  for (int tau = 1; tau <= 2 * cfg.N; ++tau) {
    ColumnPointSet c;
    const Partition& la = cfg.column(tau);
    int len = la.length();
    // rows beyond len still contribute occupied sites shift - i, which are
    // nonnegative when the shift is positive
    int rows = len + std::max(0, cfg.shift);
    for (int i = 0; i < rows; ++i) {
      Site x = cfg.shift + la.part(i) - (i + 1);
      if (x >= 0) c.added.push_back(x);
    }
    for (Site x = -1; x >= cfg.shift - len; --x)
      if (!is_occupied(cfg, tau, x)) c.removed.push_back(x);
    out.push_back(std::move(c));
  }
  return out;
}

CylindricConfig from_point_sets(int N, const std::vector<ColumnPointSet>& ps) {
  if (static_cast<int>(ps.size()) != 2 * N)
    throw std::invalid_argument("expected 2N columns");
  CylindricConfig cfg;
  cfg.N = N;
  bool have_shift = false;
  for (const ColumnPointSet& c : ps) {
    int excess =
        static_cast<int>(c.added.size()) - static_cast<int>(c.removed.size());
    if (!have_shift) {
      cfg.shift = excess;
      have_shift = true;
    } else if (excess != cfg.shift) {
      throw std::invalid_argument("columns disagree on particle excess");
    }
  }
  for (const ColumnPointSet& c : ps) {
    // Reconstruct the occupied sites from high to low: the explicit additions
    // plus the densely packed negatives minus the removals.
    std::vector<Site> occ(c.added.begin(), c.added.end());
    std::sort(occ.begin(), occ.end(), std::greater<Site>());
    std::vector<Site> removed(c.removed.begin(), c.removed.end());
    std::sort(removed.begin(), removed.end(), std::greater<Site>());
    Site floor = removed.empty() ? -1 : removed.back() - 1;
    for (Site x = -1; x >= floor; --x)
      if (!std::binary_search(removed.rbegin(), removed.rend(), x)) {
        occ.push_back(x);
        std::sort(occ.begin(), occ.end(), std::greater<Site>());
      }
    // occ now lists all occupied sites >= floor, descending; below floor the
    // column is densely packed.  Row i (1-based) has x_i = S + la_i - i.
    std::vector<int> parts;
    for (size_t i = 0; i < occ.size(); ++i) {
      int la_i = occ[i] - cfg.shift + static_cast<int>(i) + 1;
      if (la_i < 0) throw std::invalid_argument("inconsistent point set");
      parts.push_back(la_i);
    }
    while (!parts.empty() && parts.back() == 0) parts.pop_back();
    cfg.columns.emplace_back(parts);
  }
  validate(cfg);
  return cfg;
}

std::string serialize(const CylindricConfig& cfg) {
  std::ostringstream os;
  os << cfg.N << ' ' << cfg.shift;
  for (const Partition& la : cfg.columns) {
    os << " ; ";
    if (la.length() == 0) {
      os << '-';
    } else {
      for (int i = 0; i < la.length(); ++i) {
        if (i) os << ',';
        os << la.part(i);
      }
    }
  }
  return os.str();
}

CylindricConfig deserialize(const std::string& line) {
  CylindricConfig cfg;
  std::istringstream is(line);
  if (!(is >> cfg.N >> cfg.shift))
    throw std::invalid_argument("bad config header");
  std::string tok;
  std::vector<Partition> cols;
  if (!(is >> tok) || tok != ";")
    throw std::invalid_argument("expected ';' after header");
  std::string block;
  while (is >> tok) {
    if (tok == ";") {
      if (block.empty()) throw std::invalid_argument("empty partition block");
      cols.emplace_back(block == "-" ? std::vector<int>{}
                                     : [&] {
                                         std::vector<int> p;
                                         std::istringstream bs(block);
                                         std::string num;
                                         while (std::getline(bs, num, ','))
                                           p.push_back(std::stoi(num));
                                         return p;
                                       }());
      block.clear();
    } else {
      if (!block.empty())
        throw std::invalid_argument("unexpected token '" + tok + "'");
      block = tok;
    }
  }
  if (block.empty()) throw std::invalid_argument("trailing partition missing");
  cols.emplace_back(block == "-" ? std::vector<int>{}
                                 : [&] {
                                     std::vector<int> p;
                                     std::istringstream bs(block);
                                     std::string num;
                                     while (std::getline(bs, num, ','))
                                       p.push_back(std::stoi(num));
                                     return p;
                                   }());
  cfg.columns = std::move(cols);
  validate(cfg);
  return cfg;
}

double observable_F(const Partition& la, double r) {
  if (!(r > 0.0) || r == 1.0)
    throw std::invalid_argument("observable_F needs r in (0,1) or r > 1");
  double s = 0.0;
  int len = la.length();
  for (int i = 0; i < len; ++i)
    s += std::pow(r, la.part(i) - (i + 1) + 1);
  // tail sum_{i > len} r^{ -i + 1 } analytically continued: r^{-len}/(1-r^{-1})
  s += std::pow(r, -len) / (1.0 - 1.0 / r);
  return s;
}

double observable_F_shifted(const Partition& la, int shift, double r) {
  return std::pow(r, shift) * observable_F(la, r);
}

double height_transform(const CylindricConfig& cfg, int tau, double r) {
  if (!(r > 0.0 && r < 1.0))
    throw std::invalid_argument("height_transform needs r in (0,1)");
  const Partition& la = cfg.column(tau);
  // Below lo the height vanishes; above hi it equals y - S - 1/2 exactly.
  Site lo = cfg.shift - la.length();
  Site hi = cfg.shift + la.part(0);  // largest occupied site is hi - 1
  double s = 0.0;
  for (Site x = lo; x < hi; ++x)
    s += static_cast<double>(height(cfg, tau, x)) * std::pow(r, x + 0.5);
  // Tail: for site index x >= hi the height at position x + 1/2 equals x - S,
  // so the remainder is sum_{x >= hi} (x - S) r^{x + 1/2}
  //                   = r^{S + 1/2} sum_{m >= m0} m r^m with m0 = hi - S.
  int m0 = hi - cfg.shift;
  double rm0 = std::pow(r, m0);
  double sum_lin = rm0 * (m0 - (m0 - 1) * r) / ((1.0 - r) * (1.0 - r));
  s += std::pow(r, cfg.shift + 0.5) * sum_lin;
  return s;
}

}  // namespace cylq
