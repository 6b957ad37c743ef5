#pragma once

// Exact counting oracles. These are the ground truth for the samplers and
// their tests, and p(n) also feeds the partition sampler's bias.

#include "rankwalk/numeric.hpp"
#include "rankwalk/region.hpp"

#include <cstddef>
#include <vector>

namespace rankwalk {

// p(0), ..., p(n_max) by Euler's pentagonal recurrence.
std::vector<BigCount> partition_numbers(std::size_t n_max);

// Number of Young diagrams in `region` of every rank 0..area(region). Rank is
// the number of cells above the floor. Column-by-column DP over (column,
// height, area).
std::vector<BigCount> restricted_profile(const Region& region);

// Diagrams of rank k in region; 0 when k is out of range.
BigCount count_restricted(const Region& region, long k);

// Mahonian numbers: entry k counts permutations of n with k inversions.
std::vector<BigCount> inversion_numbers(int n);

// Plane partitions in an a x b x c box indexed by volume 0..abc.
std::vector<BigCount> plane_partition_profile(int a, int b, int c);
BigCount box_plane_partitions(int a, int b, int c, long k);

// q(m, j): partitions of m with every part at most j, for 0 <= m, j <= limit.
class BoundedPartitionTable {
 public:
  explicit BoundedPartitionTable(long limit);

  long limit() const { return limit_; }
  // j is clamped to [0, limit].
  const BigCount& at(long m, long j) const;

 private:
  long limit_;
  std::vector<BigCount> table_;
};

struct HardyRamanujanTerms {
  Real mu;       // pi * sqrt(24n - 1) / 6
  Real nu;       // sqrt(12) / (24n - 1)
  Real t_value;  // sum of the three leading terms of the Rademacher series
};

HardyRamanujanTerms hardy_ramanujan_terms(long n);

struct Bracket {
  Real lower;
  Real upper;

  bool contains(const BigCount& value) const {
    const Real v(value);
    return lower <= v && v <= upper;
  }
};

// nu (1 - 1/mu) e^mu -/+ (1 + e^{mu/2}), widened outward by one unit in the
// last place. Requires n >= 2.
Bracket hardy_ramanujan_bracket(long n);

}  // namespace rankwalk
