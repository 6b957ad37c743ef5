#include "rankwalk/permutations.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace rankwalk {

long count_inversions(const std::vector<int>& values) {
  long inv = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      if (values[i] > values[j]) ++inv;
    }
  }
  return inv;
}

Permutation::Permutation(std::vector<int> values) : values_(std::move(values)) {
  std::vector<bool> seen(values_.size() + 1, false);
  for (int v : values_) {
    if (v < 1 || v > static_cast<int>(values_.size()) || seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("permutation: values must be a rearrangement of 1..n");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
  inversions_ = count_inversions(values_);
}

Permutation Permutation::identity(int n) {
  if (n < 0) throw std::invalid_argument("permutation: negative size");
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  return Permutation(std::move(v));
}

Permutation Permutation::reversal(int n) {
  Permutation p = identity(n);
  std::reverse(p.values_.begin(), p.values_.end());
  p.inversions_ = static_cast<long>(n) * (n - 1) / 2;
  return p;
}

void Permutation::swap_adjacent(int i) {
  auto& a = values_[static_cast<std::size_t>(i - 1)];
  auto& b = values_[static_cast<std::size_t>(i)];
  inversions_ += a < b ? 1 : -1;
  std::swap(a, b);
}

std::vector<AdjacentMove> adjacent_moves(const Permutation& perm) {
  std::vector<AdjacentMove> out;
  for (int i = 1; i < perm.size(); ++i) out.push_back({i, perm(i) < perm(i + 1) ? 1 : -1});
  return out;
}

std::vector<std::pair<int, int>> rothe_cells(const Permutation& perm) {
  const int n = perm.size();
  std::vector<int> where(static_cast<std::size_t>(n + 1));
  for (int i = 1; i <= n; ++i) where[static_cast<std::size_t>(perm(i))] = i;
  std::vector<std::pair<int, int>> cells;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j < perm(i); ++j) {
      if (where[static_cast<std::size_t>(j)] > i) cells.emplace_back(i, j);
    }
  }
  return cells;
}

bool bruhat_leq(const Permutation& a, const Permutation& b) {
  const int n = a.size();
  if (b.size() != n) throw std::invalid_argument("bruhat_leq: sizes differ");
  // ca[j] = #{m <= i : a_m > j}, updated as i grows.
  std::vector<int> ca(static_cast<std::size_t>(n + 1), 0);
  std::vector<int> cb(static_cast<std::size_t>(n + 1), 0);
  for (int i = 1; i <= n; ++i) {
    for (int j = 0; j < a(i); ++j) ++ca[static_cast<std::size_t>(j)];
    for (int j = 0; j < b(i); ++j) ++cb[static_cast<std::size_t>(j)];
    for (int j = 1; j <= n; ++j) {
      if (ca[static_cast<std::size_t>(j)] > cb[static_cast<std::size_t>(j)]) return false;
    }
  }
  return true;
}

std::vector<int> lehmer_code(const Permutation& perm) {
  const int n = perm.size();
  std::vector<int> code(static_cast<std::size_t>(n), 0);
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      if (perm(j) < perm(i)) ++code[static_cast<std::size_t>(i - 1)];
    }
  }
  return code;
}

bool lehmer_leq(const Permutation& a, const Permutation& b) {
  const auto ca = lehmer_code(a);
  const auto cb = lehmer_code(b);
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (ca[i] > cb[i]) return false;
  }
  return true;
}

PermutationPoset::PermutationPoset(int n, ClassFilter filter) : n_(n), filter_(std::move(filter)) {
  if (n < 1) throw std::invalid_argument("permutation poset: n must be positive");
}

Permutation PermutationPoset::maximum() const {
  if (filter_) throw std::logic_error("permutation poset: no maximum for a restricted class");
  return Permutation::reversal(n_);
}

std::optional<Direction> PermutationPoset::probe(const Element& e, std::size_t slot) const {
  if (slot >= move_slots()) return std::nullopt;
  const int i = position(slot);
  const bool descent = e(i) > e(i + 1);
  const Direction d = slot_direction(slot);
  if ((d == Direction::down) != descent) return std::nullopt;
  if (filter_) {
    Element next = e;
    next.swap_adjacent(i);
    if (!filter_(next)) return std::nullopt;
  }
  return d;
}

Permutation sample_fixed_inversions(int n, long k, std::uint64_t seed, bool exact, RankSamplingOptions options) {
  const PermutationPoset poset(n);
  if (k < 0 || k > poset.rank_bound()) throw std::invalid_argument("sample_fixed_inversions: k out of range");
  options.exact = exact;
  const FixedRankSampler<PermutationPoset> sampler(poset, k, options, split_seed(seed, 0));
  return sampler.draw(split_seed(seed, 1)).element;
}

}  // namespace rankwalk
