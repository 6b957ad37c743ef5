#pragma once

// Young diagrams in a region, the chain on them, and the unrestricted
// partition sampler built on the hyperbolic region y <= 2n/x.
//
// Two representations are used. YoungDiagram stores maximal runs of equal
// column heights; it is the exchange format and what moves() works on.
// RegionPoset::Element stores the first s column heights and the first t row
// widths of the region's split, which is enough to locate every cell and
// makes each chain step O(1).

#include "rankwalk/balance.hpp"
#include "rankwalk/cftp.hpp"
#include "rankwalk/counts.hpp"
#include "rankwalk/poset.hpp"
#include "rankwalk/region.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace rankwalk {

class YoungDiagram {
 public:
  struct Run {
    long height;
    long multiplicity;
    bool operator==(const Run&) const = default;
  };

  YoungDiagram() = default;

  // Column heights, nonincreasing; trailing zeros are ignored.
  static YoungDiagram from_heights(const std::vector<long>& heights);
  // Runs must have strictly decreasing positive heights and positive
  // multiplicities.
  static YoungDiagram from_runs(std::vector<Run> runs);

  const std::vector<Run>& runs() const { return runs_; }
  long size() const { return size_; }
  long width() const;
  long height(long x) const;  // 1-based; 0 past the last column
  std::vector<long> heights() const;
  // Row widths, i.e. the conjugate partition.
  std::vector<long> row_widths() const;

  bool fits(const Region& region) const;

  bool operator==(const YoungDiagram&) const = default;

 private:
  std::vector<Run> runs_;
  long size_ = 0;
};

struct Move {
  enum class Kind : std::uint8_t { add, remove };
  Kind kind;
  long column;
  long size_after;
  bool operator==(const Move&) const = default;
};

// Legal single-cell additions and removals within the region, in O(#runs).
std::vector<Move> moves(const YoungDiagram& diagram, const Region& region);

// ceiling(x) = floor(2n/x) for x = 1 .. 2n.
Region hyperbolic_region(long n);

// Graded lattice of diagrams in a region, ordered by containment. Slots:
// [0, s) add on top of column x, [s, 2s) remove from column x,
// [2s, 2s+t) add at the end of row y, [2s+t, 2s+2t) remove from row y.
// Row slots only act on columns past s, so every cell has one slot for each
// direction. max_degree = 2(s+t).
class RegionPoset {
 public:
  struct Element {
    std::vector<long> cols;  // heights of columns 1..s
    std::vector<long> rows;  // widths of rows 1..t
    long size = 0;           // cells including the floor

    bool operator==(const Element& o) const { return cols == o.cols && rows == o.rows; }
  };

  explicit RegionPoset(Region region);

  const Region& region() const { return region_; }

  long rank(const Element& e) const { return e.size - region_.floor_area(); }
  long rank_bound() const { return region_.area(); }
  std::size_t max_degree() const { return slots_ == 0 ? 1 : slots_; }
  std::size_t move_slots() const { return slots_; }
  Element minimum() const { return from_heights_unchecked(region_.floors()); }
  Element maximum() const { return from_heights_unchecked(region_.ceilings()); }

  std::optional<Direction> probe(const Element& e, std::size_t slot) const {
    return legal(e, slot) ? std::optional<Direction>(slot_direction(slot)) : std::nullopt;
  }

  void apply(Element& e, std::size_t slot) const {
    const long s = s_;
    if (slot < static_cast<std::size_t>(s)) {
      const long h = ++e.cols[slot];
      if (h <= t_) ++e.rows[h - 1];
      ++e.size;
    } else if (slot < static_cast<std::size_t>(2 * s)) {
      const long h = e.cols[slot - s]--;
      if (h <= t_) --e.rows[h - 1];
      --e.size;
    } else if (slot < static_cast<std::size_t>(2 * s + t_)) {
      ++e.rows[slot - 2 * s];
      ++e.size;
    } else {
      --e.rows[slot - 2 * s - t_];
      --e.size;
    }
  }

  bool try_move(Element& e, std::size_t slot, const Bias& bias, std::uint64_t u) const {
    if (slot >= slots_ || !legal(e, slot) || !bias.accept(slot_direction(slot), u)) return false;
    apply(e, slot);
    return true;
  }

  Direction slot_direction(std::size_t slot) const {
    const auto s = static_cast<std::size_t>(s_);
    const auto t = static_cast<std::size_t>(t_);
    if (slot < s) return Direction::up;
    if (slot < 2 * s) return Direction::down;
    if (slot < 2 * s + t) return Direction::up;
    return Direction::down;
  }

  // Containment.
  bool leq(const Element& a, const Element& b) const;

  Element from_diagram(const YoungDiagram& d) const;
  YoungDiagram to_diagram(const Element& e) const;
  // Number of runs of to_diagram(e), without building it.
  std::size_t run_count(const Element& e) const;
  // Height of column 1.
  long first_column(const Element& e) const { return s_ > 0 ? e.cols[0] : count_rows_at_least(e, 1); }

 private:
  bool legal(const Element& e, std::size_t slot) const {
    const long s = s_;
    const long t = t_;
    const auto i = static_cast<long>(slot);
    if (i < s) {
      const long x = i + 1;
      const long h = e.cols[i];
      return h + 1 <= ceil_[x] && (x == 1 || e.cols[i - 1] > h);
    }
    if (i < 2 * s) {
      const long x = i - s + 1;
      const long h = e.cols[x - 1];
      if (h <= floor_[x]) return false;
      if (x < s) return e.cols[x] < h;
      return h > t || e.rows[h - 1] <= s;  // column s+1 shorter than h
    }
    if (i < 2 * s + t) {
      const long y = i - 2 * s + 1;
      const long xn = e.rows[y - 1] + 1;
      return xn > s && y <= ceil_at(xn) && (y == 1 || e.rows[y - 2] >= xn);
    }
    const long y = i - 2 * s - t + 1;
    const long w = e.rows[y - 1];
    return w > s && y > floor_at(w) && (y == t || e.rows[y] < w);
  }

  long ceil_at(long x) const { return x < static_cast<long>(ceil_.size()) ? ceil_[x] : 0; }
  long floor_at(long x) const { return x < static_cast<long>(floor_.size()) ? floor_[x] : 0; }
  long count_rows_at_least(const Element& e, long x) const;
  Element from_heights_unchecked(const std::vector<long>& heights) const;

  Region region_;
  long s_;
  long t_;
  std::size_t slots_;
  std::vector<long> ceil_;   // index x = 0 .. width+1, padded with 0
  std::vector<long> floor_;
};

// The hyperbolic region with split s = t = floor(sqrt(2n)), so that
// max_degree = 4 floor(sqrt(2n)).
RegionPoset hyperbolic_poset(long n);

// p(n-1)/p(n). The second form reads a precomputed p table.
Rational lambda_n(long n);
Rational lambda_n(long n, const std::vector<BigCount>& p);

// Shrinks the largest part of a partition of n + k (k >= 0) by k, if it stays
// at least the second part. Parts are nonincreasing.
std::optional<std::vector<long>> salvage(const std::vector<long>& rho, long n);

// Explicit forward-chain step bound for the hyperbolic chain at lambda_n.
// Requires n >= 30 and 0 < epsilon < 1.
std::uint64_t mixing_bound(long n, double epsilon);
Real mixing_bound_real(long n, const Real& epsilon);

// (1 - lambda_n) / (1 + lambda_n), exactly.
Rational spectral_bias(long n);
Rational spectral_bias(const Rational& lambda);

struct ExclusionParameters {
  bool unbiased = false;
  double p = 0.5;
  double bias = 0.0;
  double alpha = 1.0;
};

ExclusionParameters exclusion_parameters(double lambda);

struct PartitionSamplerOptions {
  bool exact = false;
  long fallback_below = 30;       // direct recursive sampling below this n
  std::uint64_t retry_cap = 0;    // 0: 10^4 * ceil(160 n^{1/4})
  std::uint64_t steps = 0;        // forward steps per attempt; 0: mixing_bound(n, 1/e)
  CftpOptions cftp{};
};

// Uniform partitions of n: chain draws on the hyperbolic region at lambda_n,
// kept when the size is in [n, 2n] and salvage succeeds. The forward chain
// continues from its previous state across attempts and draws.
class PartitionSampler {
 public:
  PartitionSampler(long n, PartitionSamplerOptions options, std::uint64_t seed);

  // Parts, nonincreasing.
  std::vector<long> draw();

  long n() const { return n_; }
  bool uses_fallback() const { return fallback_.has_value(); }
  std::uint64_t steps_per_attempt() const { return steps_; }
  std::uint64_t retry_cap() const { return retry_cap_; }
  std::uint64_t attempts() const { return attempts_; }
  std::uint64_t accepted() const { return accepted_; }

 private:
  long n_;
  PartitionSamplerOptions options_;
  std::uint64_t seed_;
  std::uint64_t draws_ = 0;
  std::uint64_t attempts_ = 0;
  std::uint64_t accepted_ = 0;
  std::uint64_t retry_cap_ = 0;
  std::uint64_t steps_ = 0;
  std::optional<BoundedPartitionTable> fallback_;
  std::optional<RegionPoset> poset_;
  std::optional<Bias> bias_;
  std::optional<ChainState<RegionPoset::Element>> chain_;
};

std::vector<long> sample_partition(long n, std::uint64_t seed, bool exact, PartitionSamplerOptions options = {});

// Exactly uniform partition of n by recursion on the largest part.
std::vector<long> sample_partition_direct(long n, const BoundedPartitionTable& table, Rng& rng);

// Uniform diagram of rank k in the region.
YoungDiagram sample_restricted(const Region& region, long k, std::uint64_t seed, const RankSamplingOptions& options = {});

struct CountLevel {
  long width;          // columns of the level's region
  long target;         // rank sought at this level
  long first_column;   // the height m the level conditions on
  double ratio;        // fraction of draws with first column m
};

struct ApproxCount {
  double estimate = 1.0;
  std::vector<CountLevel> levels;
};

// Self-reducible estimate of count_restricted(region, n): at each level draw
// uniform rank-n diagrams, fix the first column to its rounded mean height m,
// multiply by the inverse of the fraction with that height, and recurse on the
// region left after deleting the first column and capping heights at m.
ApproxCount approx_count(const Region& region, long n, std::size_t samples_per_level, std::uint64_t seed,
                         const RankSamplingOptions& options = {});

}  // namespace rankwalk

template <>
struct std::hash<rankwalk::RegionPoset::Element> {
  std::size_t operator()(const rankwalk::RegionPoset::Element& e) const noexcept {
    std::uint64_t h = 0x84222325CBF29CE4ULL;
    for (long v : e.cols) h = rankwalk::mix64(h ^ static_cast<std::uint64_t>(v));
    h = rankwalk::mix64(h ^ 0xFFULL);
    for (long v : e.rows) h = rankwalk::mix64(h ^ static_cast<std::uint64_t>(v));
    return static_cast<std::size_t>(h);
  }
};
