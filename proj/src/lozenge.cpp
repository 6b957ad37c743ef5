#include "rankwalk/lozenge.hpp"

#include <stdexcept>

namespace rankwalk {

PlanePartition::PlanePartition(int a, int b, int c) : a_(a), b_(b), c_(c) {
  if (a < 1 || b < 1 || c < 1) throw std::invalid_argument("plane partition: box sides must be positive");
  h_.assign(static_cast<std::size_t>(a) * static_cast<std::size_t>(b), 0);
}

PlanePartition PlanePartition::from_matrix(const std::vector<std::vector<int>>& heights, int c) {
  if (heights.empty() || heights.front().empty()) throw std::invalid_argument("plane partition: empty matrix");
  const int a = static_cast<int>(heights.size());
  const int b = static_cast<int>(heights.front().size());
  PlanePartition pp(a, b, c);
  for (int i = 0; i < a; ++i) {
    if (static_cast<int>(heights[static_cast<std::size_t>(i)].size()) != b) {
      throw std::invalid_argument("plane partition: ragged matrix");
    }
    for (int j = 0; j < b; ++j) {
      const int v = heights[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (v < 0 || v > c) throw std::invalid_argument("plane partition: entry outside [0, c]");
      if ((i > 0 && pp.at(i - 1, j) < v) || (j > 0 && pp.at(i, j - 1) < v)) {
        throw std::invalid_argument("plane partition: rows and columns must be nonincreasing");
      }
      pp.h_[static_cast<std::size_t>(i * b + j)] = v;
      pp.volume_ += v;
    }
  }
  return pp;
}

std::vector<std::vector<int>> PlanePartition::matrix() const {
  std::vector<std::vector<int>> m(static_cast<std::size_t>(a_), std::vector<int>(static_cast<std::size_t>(b_)));
  for (int i = 0; i < a_; ++i) {
    for (int j = 0; j < b_; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = at(i, j);
  }
  return m;
}

std::vector<CubeMove> cube_moves(const PlanePartition& pp) {
  std::vector<CubeMove> out;
  for (int i = 0; i < pp.rows(); ++i) {
    for (int j = 0; j < pp.cols(); ++j) {
      if (pp.can_add(i, j)) out.push_back({i, j, Direction::up});
      if (pp.can_remove(i, j)) out.push_back({i, j, Direction::down});
    }
  }
  return out;
}

PlanePartitionPoset::PlanePartitionPoset(int a, int b, int c) : a_(a), b_(b), c_(c) {
  if (a < 1 || b < 1 || c < 1) throw std::invalid_argument("plane partition poset: box sides must be positive");
}

PlanePartition PlanePartitionPoset::maximum() const {
  return PlanePartition::from_matrix(
      std::vector<std::vector<int>>(static_cast<std::size_t>(a_), std::vector<int>(static_cast<std::size_t>(b_), c_)),
      c_);
}

bool PlanePartitionPoset::leq(const Element& a, const Element& b) const {
  for (std::size_t i = 0; i < a.heights().size(); ++i) {
    if (a.heights()[i] > b.heights()[i]) return false;
  }
  return true;
}

PlanePartition sample_fixed_volume(int a, int b, int c, long k, std::uint64_t seed, bool exact,
                                   RankSamplingOptions options) {
  const PlanePartitionPoset poset(a, b, c);
  if (k < 0 || k > poset.rank_bound()) throw std::invalid_argument("sample_fixed_volume: k out of range");
  options.exact = exact;
  const FixedRankSampler<PlanePartitionPoset> sampler(poset, k, options, split_seed(seed, 0));
  return sampler.draw(split_seed(seed, 1)).element;
}

}  // namespace rankwalk
