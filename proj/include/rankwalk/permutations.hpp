#pragma once

// Permutations under adjacent transpositions, graded by inversion count.
//
// The chain has two slots per position i: "sort" swaps i, i+1 if they form a
// descent (rank -1), "unsort" swaps them if they form an ascent (rank +1).
// Exactly one of the two is a move from any permutation, so max_degree = n-1
// and there is no self-loop padding.
//
// For coupling from the past the order is pointwise on Lehmer codes
// c_i = #{j > i : p_j < p_i}. An unsort at i (ascent, c_i <= c_{i+1}) maps
// (c_i, c_{i+1}) to (c_{i+1} + 1, c_i), a sort undoes that, and the other
// entries stay put. Checking the three cases (both move, only the lower one,
// only the upper one) shows the shared-word coupling keeps codes ordered. The
// identity (code 0) and the reversal (code n-1, ..., 0) are the extremes.

#include "rankwalk/balance.hpp"
#include "rankwalk/cftp.hpp"
#include "rankwalk/poset.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace rankwalk {

class Permutation {
 public:
  Permutation() = default;
  // Values must be a rearrangement of 1..n.
  explicit Permutation(std::vector<int> values);

  static Permutation identity(int n);
  static Permutation reversal(int n);

  int size() const { return static_cast<int>(values_.size()); }
  // 1-based.
  int operator()(int i) const { return values_[static_cast<std::size_t>(i - 1)]; }
  const std::vector<int>& values() const { return values_; }
  long inversions() const { return inversions_; }

  // Swaps positions i and i+1 (1-based).
  void swap_adjacent(int i);

  bool operator==(const Permutation& o) const { return values_ == o.values_; }

 private:
  std::vector<int> values_;
  long inversions_ = 0;
};

long count_inversions(const std::vector<int>& values);

struct AdjacentMove {
  int position;  // swaps position and position+1
  int delta;     // change in inversions, +1 or -1
  bool operator==(const AdjacentMove&) const = default;
};

std::vector<AdjacentMove> adjacent_moves(const Permutation& perm);

// Cells (i, j) with perm(i) > j and j appearing after position i.
std::vector<std::pair<int, int>> rothe_cells(const Permutation& perm);

// Strong Bruhat order.
bool bruhat_leq(const Permutation& a, const Permutation& b);

// Pointwise order on inversion tables (Lehmer codes).
bool lehmer_leq(const Permutation& a, const Permutation& b);
std::vector<int> lehmer_code(const Permutation& perm);

class PermutationPoset {
 public:
  using Element = Permutation;
  // Restricts the chain to a class: a move is allowed only if the result is in
  // the class. The caller must make sure the class is connected under
  // adjacent swaps and contains the identity.
  using ClassFilter = std::function<bool(const Permutation&)>;

  explicit PermutationPoset(int n, ClassFilter filter = {});

  int n() const { return n_; }
  bool restricted() const { return static_cast<bool>(filter_); }

  long rank(const Element& e) const { return e.inversions(); }
  long rank_bound() const { return static_cast<long>(n_) * (n_ - 1) / 2; }
  std::size_t max_degree() const { return n_ > 1 ? static_cast<std::size_t>(n_ - 1) : 1; }
  std::size_t move_slots() const { return n_ > 1 ? 2 * static_cast<std::size_t>(n_ - 1) : 0; }
  Element minimum() const { return Permutation::identity(n_); }
  // Throws for a restricted poset: coupling from the past needs the
  // unrestricted extremes.
  Element maximum() const;

  std::optional<Direction> probe(const Element& e, std::size_t slot) const;
  void apply(Element& e, std::size_t slot) const { e.swap_adjacent(position(slot)); }

  bool try_move(Element& e, std::size_t slot, const Bias& bias, std::uint64_t u) const {
    if (slot >= move_slots() || !probe(e, slot) || !bias.accept(slot_direction(slot), u)) return false;
    apply(e, slot);
    return true;
  }

  Direction slot_direction(std::size_t slot) const {
    return slot < static_cast<std::size_t>(n_ - 1) ? Direction::down : Direction::up;
  }

  bool leq(const Element& a, const Element& b) const { return lehmer_leq(a, b); }

 private:
  int position(std::size_t slot) const {
    const auto half = static_cast<std::size_t>(n_ - 1);
    return static_cast<int>(slot < half ? slot : slot - half) + 1;
  }

  int n_;
  ClassFilter filter_;
};

// Uniform permutation of n with k inversions. Exact mode requires an
// unrestricted poset.
Permutation sample_fixed_inversions(int n, long k, std::uint64_t seed, bool exact,
                                    RankSamplingOptions options = {});

}  // namespace rankwalk

template <>
struct std::hash<rankwalk::Permutation> {
  std::size_t operator()(const rankwalk::Permutation& p) const noexcept {
    std::uint64_t h = 0x9AE16A3B2F90404FULL;
    for (int v : p.values()) h = rankwalk::mix64(h ^ static_cast<std::uint64_t>(v));
    return static_cast<std::size_t>(h);
  }
};
