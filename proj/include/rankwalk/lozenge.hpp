#pragma once

// Plane partitions in an a x b x c box, i.e. lozenge tilings of the
// (a, b, c) hexagon, graded by volume.
//
// Slots [0, ab) add a cube on cell (i, j) and [ab, 2ab) remove one. A cell can
// be both addable and removable, so a state can have up to 2ab neighbors and
// max_degree is 2ab.

#include "rankwalk/balance.hpp"
#include "rankwalk/cftp.hpp"
#include "rankwalk/poset.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace rankwalk {

class PlanePartition {
 public:
  PlanePartition() = default;
  // Empty a x b x c plane partition.
  PlanePartition(int a, int b, int c);
  // Rows and columns must be nonincreasing with entries in [0, c].
  static PlanePartition from_matrix(const std::vector<std::vector<int>>& heights, int c);

  int rows() const { return a_; }
  int cols() const { return b_; }
  int cap() const { return c_; }
  long volume() const { return volume_; }
  // 0-based.
  int at(int i, int j) const { return h_[static_cast<std::size_t>(i * b_ + j)]; }
  const std::vector<int>& heights() const { return h_; }
  std::vector<std::vector<int>> matrix() const;

  bool can_add(int i, int j) const {
    const int v = at(i, j) + 1;
    return v <= c_ && (i == 0 || at(i - 1, j) >= v) && (j == 0 || at(i, j - 1) >= v);
  }
  bool can_remove(int i, int j) const {
    const int v = at(i, j) - 1;
    return v >= 0 && (i + 1 == a_ || at(i + 1, j) <= v) && (j + 1 == b_ || at(i, j + 1) <= v);
  }
  void add(int i, int j) {
    ++h_[static_cast<std::size_t>(i * b_ + j)];
    ++volume_;
  }
  void remove(int i, int j) {
    --h_[static_cast<std::size_t>(i * b_ + j)];
    --volume_;
  }

  bool operator==(const PlanePartition& o) const { return h_ == o.h_ && a_ == o.a_ && b_ == o.b_; }

 private:
  int a_ = 0;
  int b_ = 0;
  int c_ = 0;
  std::vector<int> h_;
  long volume_ = 0;
};

struct CubeMove {
  int row;  // 0-based
  int col;
  Direction direction;
  bool operator==(const CubeMove&) const = default;
};

std::vector<CubeMove> cube_moves(const PlanePartition& pp);

class PlanePartitionPoset {
 public:
  using Element = PlanePartition;

  PlanePartitionPoset(int a, int b, int c);

  long rank(const Element& e) const { return e.volume(); }
  long rank_bound() const { return static_cast<long>(a_) * b_ * c_; }
  std::size_t max_degree() const { return 2 * cells(); }
  std::size_t move_slots() const { return 2 * cells(); }
  Element minimum() const { return PlanePartition(a_, b_, c_); }
  Element maximum() const;

  std::optional<Direction> probe(const Element& e, std::size_t slot) const {
    const auto [i, j] = cell(slot);
    const bool ok = slot < cells() ? e.can_add(i, j) : e.can_remove(i, j);
    return ok ? std::optional<Direction>(slot_direction(slot)) : std::nullopt;
  }

  void apply(Element& e, std::size_t slot) const {
    const auto [i, j] = cell(slot);
    if (slot < cells()) {
      e.add(i, j);
    } else {
      e.remove(i, j);
    }
  }

  bool try_move(Element& e, std::size_t slot, const Bias& bias, std::uint64_t u) const {
    if (slot >= move_slots()) return false;
    const auto [i, j] = cell(slot);
    if (slot < cells()) {
      if (!e.can_add(i, j) || !bias.accept(Direction::up, u)) return false;
      e.add(i, j);
    } else {
      if (!e.can_remove(i, j) || !bias.accept(Direction::down, u)) return false;
      e.remove(i, j);
    }
    return true;
  }

  Direction slot_direction(std::size_t slot) const { return slot < cells() ? Direction::up : Direction::down; }

  // Componentwise.
  bool leq(const Element& a, const Element& b) const;

 private:
  std::size_t cells() const { return static_cast<std::size_t>(a_) * static_cast<std::size_t>(b_); }
  std::pair<int, int> cell(std::size_t slot) const {
    const auto k = static_cast<int>(slot % cells());
    return {k / b_, k % b_};
  }

  int a_;
  int b_;
  int c_;
};

PlanePartition sample_fixed_volume(int a, int b, int c, long k, std::uint64_t seed, bool exact,
                                   RankSamplingOptions options = {});

}  // namespace rankwalk

template <>
struct std::hash<rankwalk::PlanePartition> {
  std::size_t operator()(const rankwalk::PlanePartition& p) const noexcept {
    std::uint64_t h = static_cast<std::uint64_t>(p.rows()) * 0x100000001B3ULL + static_cast<std::uint64_t>(p.cols());
    for (int v : p.heights()) h = rankwalk::mix64(h ^ static_cast<std::uint64_t>(v));
    return static_cast<std::size_t>(h);
  }
};
