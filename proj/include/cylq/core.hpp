#pragma once
// Core combinatorics for cylindric partition configurations.
//
// A configuration is a 2N-tuple of partitions (lambda^(1), ..., lambda^(2N))
// that interlace cyclically,
//
//     lambda^(1) < lambda^(2) > lambda^(3) < ... > lambda^(2N-1) < lambda^(2N) > lambda^(1),
//
// together with an integer shift S.  Odd-indexed columns sit "below" their even
// neighbours: mu < la means la_1 >= mu_1 >= la_2 >= mu_2 >= ...
//
// Each column tau carries a point configuration on Z + 1/2,
//
//     X(tau) = { S + lambda_i^(tau) - i + 1/2 : i >= 1 },
//
// which is the particle (horizontal-lozenge) picture of a tiling of the
// infinite cylinder with 2N columns.  Throughout this code base a half-integer
// position x = m + 1/2 is represented by the integer m (type `Site`), so the
// occupied sites of a column are { S + lambda_i - i : i >= 1 } as plain ints.
//
// The height function of a column is
//
//     h(tau, y) = #{ x in Z+1/2 : x < y, x unoccupied },   y in Z + 1/2,
//
// which vanishes far below the configuration and grows with unit slope far
// above it (h(tau,y) = y - S - 1/2 once y clears the largest particle).

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cylq {

// Half-integer position x = site + 1/2.
using Site = int;

// A partition stored as a weakly decreasing vector of positive parts.
// Trailing zeros are never stored; part(i) is defined for all i >= 0.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);

  int length() const { return static_cast<int>(parts_.size()); }
  // 0-based row index; rows beyond length() have size zero.
  int part(int i) const {
    return i < length() ? parts_[static_cast<size_t>(i)] : 0;
  }
  std::int64_t size() const;  // |lambda| = sum of parts
  const std::vector<int>& parts() const { return parts_; }

  bool operator==(const Partition& o) const { return parts_ == o.parts_; }
  bool operator!=(const Partition& o) const { return parts_ != o.parts_; }
  bool operator<(const Partition& o) const { return parts_ < o.parts_; }

 private:
  std::vector<int> parts_;
};

// mu < la: la_1 >= mu_1 >= la_2 >= mu_2 >= ...  (la/mu is a horizontal strip).
bool interlaces(const Partition& mu, const Partition& la);

// A cyclically interlacing 2N-tuple with an integer shift.
struct CylindricConfig {
  int N = 1;
  int shift = 0;                    // S
  std::vector<Partition> columns;   // size 2N; columns[j] = lambda^(j+1)

  const Partition& column(int tau) const;  // tau in 1..2N, cyclic
};

// Throws std::invalid_argument if the tuple fails cyclic interlacing.
void validate(const CylindricConfig& cfg);

// vol(cfg) = sum_i |lambda^(i)| + N * S^2, exactly in 64-bit arithmetic.
std::int64_t volume(const CylindricConfig& cfg);

// Occupied sites of column tau, descending, all rows i = 1..length
// (sites below S - length are occupied as well but are not listed).
std::vector<Site> occupied_sites(const CylindricConfig& cfg, int tau);

// True iff x = site + 1/2 is occupied in column tau.
bool is_occupied(const CylindricConfig& cfg, int tau, Site site);

// h(tau, y) with y = y_site + 1/2: number of unoccupied half-integer
// positions strictly below y.
std::int64_t height(const CylindricConfig& cfg, int tau, Site y_site);

// Particle picture of one column: the finite deviation from the densely
// packed "empty room" (all negative positions occupied).  `added` lists the
// occupied sites >= 0 and `removed` the unoccupied sites < 0, both sorted
// descending.
struct ColumnPointSet {
  std::vector<Site> added;
  std::vector<Site> removed;
};

// Forward direction of the tiling <-> (lambda-tuple, S) bijection.
std::vector<ColumnPointSet> to_point_sets(const CylindricConfig& cfg);

// Inverse direction.  Recovers the shift from the particle-number excess of
// each column (#added - #removed, which must agree across columns) and the
// partitions from the sorted particle positions.  Throws std::invalid_argument
// on inconsistent input.
CylindricConfig from_point_sets(int N, const std::vector<ColumnPointSet>& ps);

// One-line configuration serialization:
//   "N S ; l1,l2,... ; l1,l2,... ; ..."   (2N partition blocks, "-" if empty)
std::string serialize(const CylindricConfig& cfg);
CylindricConfig deserialize(const std::string& line);

// F_r(lambda) = sum_{i=1}^{len} r^{lambda_i - i + 1} + r^{-len} / (1 - r^{-1}),
// the analytic continuation in r of the slice observable generating function;
// finite for r in (0,1).  The shifted variant multiplies by r^S.
double observable_F(const Partition& la, double r);
double observable_F_shifted(const Partition& la, int shift, double r);

// sum_x h(tau, x) r^x over all x in Z + 1/2, with the divergent-looking upper
// tail summed in closed form.  Satisfies
//   sum_x h(tau,x) r^x = - r^{1/2 + S} / (1 - r) * F_r(lambda^(tau)).
double height_transform(const CylindricConfig& cfg, int tau, double r);

}  // namespace cylq
