#pragma once

// Brute-force enumerations used as ground truth. Deliberately naive and
// independent of the library's counting code.

#include "rankwalk/lozenge.hpp"
#include "rankwalk/partitions.hpp"
#include "rankwalk/permutations.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

namespace oracle {

using Parts = std::vector<long>;

// All partitions of n, parts nonincreasing.
inline std::vector<Parts> partitions(long n) {
  std::vector<Parts> out;
  Parts cur;
  std::function<void(long, long)> rec = [&](long left, long cap) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (long p = std::min(left, cap); p >= 1; --p) {
      cur.push_back(p);
      rec(left - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

// All column-height sequences (nonincreasing, between floor and ceiling) in a
// region given by explicit profiles.
inline std::vector<std::vector<long>> diagrams(const std::vector<long>& ceiling, const std::vector<long>& floor = {}) {
  std::vector<std::vector<long>> out;
  std::vector<long> cur(ceiling.size());
  auto fl = [&](std::size_t x) { return x < floor.size() ? floor[x] : 0L; };
  std::function<void(std::size_t, long)> rec = [&](std::size_t x, long prev) {
    if (x == ceiling.size()) {
      out.push_back(cur);
      return;
    }
    for (long h = fl(x); h <= std::min(prev, ceiling[x]); ++h) {
      cur[x] = h;
      rec(x + 1, h);
    }
  };
  rec(0, ceiling.empty() ? 0 : ceiling[0]);
  return out;
}

inline long sum(const std::vector<long>& v) { return std::accumulate(v.begin(), v.end(), 0L); }

inline bool valid_heights(const std::vector<long>& h, const std::vector<long>& ceiling, const std::vector<long>& floor) {
  for (std::size_t x = 0; x < h.size(); ++x) {
    const long f = x < floor.size() ? floor[x] : 0;
    if (h[x] < f || h[x] > ceiling[x]) return false;
    if (x > 0 && h[x] > h[x - 1]) return false;
  }
  return true;
}

// Neighbors of a height sequence by changing one column by +-1.
inline std::vector<std::vector<long>> diagram_neighbors(const std::vector<long>& h, const std::vector<long>& ceiling,
                                                        const std::vector<long>& floor = {}) {
  std::vector<std::vector<long>> out;
  for (std::size_t x = 0; x < h.size(); ++x) {
    for (long d : {1L, -1L}) {
      auto g = h;
      g[x] += d;
      if (valid_heights(g, ceiling, floor)) out.push_back(g);
    }
  }
  return out;
}

inline std::vector<std::vector<int>> permutations(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

inline long inversions(const std::vector<int>& v) {
  long inv = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) inv += v[i] > v[j];
  }
  return inv;
}

// All a x b matrices with entries in [0, c], rows and columns nonincreasing.
inline std::vector<std::vector<std::vector<int>>> plane_partitions(int a, int b, int c) {
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<std::vector<int>> m(static_cast<std::size_t>(a), std::vector<int>(static_cast<std::size_t>(b)));
  std::function<void(int)> rec = [&](int cell) {
    if (cell == a * b) {
      out.push_back(m);
      return;
    }
    const int i = cell / b;
    const int j = cell % b;
    int cap = c;
    if (i > 0) cap = std::min(cap, m[i - 1][j]);
    if (j > 0) cap = std::min(cap, m[i][j - 1]);
    for (int v = 0; v <= cap; ++v) {
      m[i][j] = v;
      rec(cell + 1);
    }
  };
  rec(0);
  return out;
}

inline long volume(const std::vector<std::vector<int>>& m) {
  long v = 0;
  for (const auto& r : m) v += std::accumulate(r.begin(), r.end(), 0L);
  return v;
}

// Pearson statistic of counts against the uniform law on `cells` outcomes.
template <class Key>
double chi_square_uniform(const std::map<Key, long>& counts, std::size_t cells) {
  long total = 0;
  for (const auto& [k, c] : counts) total += c;
  const double expect = static_cast<double>(total) / static_cast<double>(cells);
  double stat = 0;
  for (const auto& [k, c] : counts) stat += (c - expect) * (c - expect) / expect;
  stat += static_cast<double>(cells - counts.size()) * expect;  // unseen outcomes
  return stat;
}

inline double chi_square_quantile(std::size_t dof, double p) {
  return boost::math::quantile(boost::math::chi_squared(static_cast<double>(dof)), p);
}

}  // namespace oracle
