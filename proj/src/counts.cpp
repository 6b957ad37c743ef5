#include "rankwalk/counts.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <functional>
#include <limits>
#include <stdexcept>

namespace rankwalk {

std::vector<BigCount> partition_numbers(std::size_t n_max) {
  std::vector<BigCount> p(n_max + 1);
  p[0] = 1;
  for (std::size_t n = 1; n <= n_max; ++n) {
    BigCount acc = 0;
    for (std::size_t k = 1;; ++k) {
      const std::size_t g1 = k * (3 * k - 1) / 2;
      if (g1 > n) break;
      const std::size_t g2 = k * (3 * k + 1) / 2;
      BigCount term = p[n - g1];
      if (g2 <= n) term += p[n - g2];
      if (k % 2 == 1) {
        acc += term;
      } else {
        acc -= term;
      }
    }
    p[n] = std::move(acc);
  }
  return p;
}

namespace {

using Poly = std::vector<BigCount>;

void add_shifted(Poly& dst, const Poly& src, std::size_t shift) {
  if (src.empty()) return;
  if (dst.size() < src.size() + shift) dst.resize(src.size() + shift);
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (src[i] != 0) dst[i + shift] += src[i];
  }
}

void add_into(Poly& dst, const Poly& src) { add_shifted(dst, src, 0); }

}  // namespace

std::vector<BigCount> restricted_profile(const Region& region) {
  const long area = region.area();
  if (region.width() == 0) return {BigCount(1)};

  const long top = region.ceiling(1);
  // cur[h]: generating polynomial (by rank) of the columns processed so far
  // whose last column has height h. The virtual column 0 has height `top`.
  std::vector<Poly> cur(static_cast<std::size_t>(top + 1));
  cur[static_cast<std::size_t>(top)] = Poly{BigCount(1)};
  long cur_lo = top;
  long cur_hi = top;

  for (long x = 1; x <= region.width(); ++x) {
    const long lo = region.floor(x);
    const long hi = region.ceiling(x);
    std::vector<Poly> next(static_cast<std::size_t>(top + 1));
    Poly suffix;
    // Heights above hi still feed every smaller choice through the suffix sum.
    for (long h = cur_hi; h >= lo; --h) {
      if (h >= cur_lo) add_into(suffix, cur[static_cast<std::size_t>(h)]);
      if (h <= hi) {
        auto& slot = next[static_cast<std::size_t>(h)];
        slot.clear();
        add_shifted(slot, suffix, static_cast<std::size_t>(h - lo));
      }
    }
    cur = std::move(next);
    cur_lo = lo;
    cur_hi = std::min(hi, cur_hi);
  }

  Poly total(static_cast<std::size_t>(area + 1));
  for (long h = cur_lo; h <= cur_hi; ++h) add_into(total, cur[static_cast<std::size_t>(h)]);
  total.resize(static_cast<std::size_t>(area + 1));
  return total;
}

BigCount count_restricted(const Region& region, long k) {
  if (k < 0 || k > region.area()) return 0;
  return restricted_profile(region)[static_cast<std::size_t>(k)];
}

std::vector<BigCount> inversion_numbers(int n) {
  if (n < 1) throw std::invalid_argument("inversion_numbers: n must be positive");
  Poly poly{BigCount(1)};
  for (int i = 2; i <= n; ++i) {
    // multiply by 1 + q + ... + q^{i-1}
    Poly next(poly.size() + static_cast<std::size_t>(i - 1));
    for (std::size_t d = 0; d < static_cast<std::size_t>(i); ++d) add_shifted(next, poly, d);
    poly = std::move(next);
  }
  return poly;
}

std::vector<BigCount> plane_partition_profile(int a, int b, int c) {
  if (a < 1 || b < 1 || c < 1) throw std::invalid_argument("plane partitions: box sides must be positive");

  // Rows are nonincreasing sequences of length b with entries in [0, c].
  std::vector<std::vector<int>> rows;
  std::vector<int> row(static_cast<std::size_t>(b));
  std::function<void(int, int)> gen = [&](int j, int cap) {
    if (j == b) {
      rows.push_back(row);
      return;
    }
    for (int v = 0; v <= cap; ++v) {
      row[static_cast<std::size_t>(j)] = v;
      gen(j + 1, v);
    }
  };
  gen(0, c);

  auto volume_of = [](const std::vector<int>& r) {
    long s = 0;
    for (int v : r) s += v;
    return s;
  };
  auto dominated = [](const std::vector<int>& lower, const std::vector<int>& upper) {
    for (std::size_t j = 0; j < lower.size(); ++j) {
      if (lower[j] > upper[j]) return false;
    }
    return true;
  };

  const std::size_t m = rows.size();
  std::vector<Poly> cur(m);
  for (std::size_t i = 0; i < m; ++i) {
    cur[i] = Poly(static_cast<std::size_t>(volume_of(rows[i]) + 1));
    cur[i].back() = 1;
  }
  for (int r = 1; r < a; ++r) {
    std::vector<Poly> next(m);
    for (std::size_t i = 0; i < m; ++i) {
      const auto shift = static_cast<std::size_t>(volume_of(rows[i]));
      for (std::size_t prev = 0; prev < m; ++prev) {
        if (!cur[prev].empty() && dominated(rows[i], rows[prev])) add_shifted(next[i], cur[prev], shift);
      }
    }
    cur = std::move(next);
  }

  Poly total(static_cast<std::size_t>(a) * b * c + 1);
  for (const auto& poly : cur) add_into(total, poly);
  total.resize(static_cast<std::size_t>(a) * b * c + 1);
  return total;
}

BigCount box_plane_partitions(int a, int b, int c, long k) {
  const long top = static_cast<long>(a) * b * c;
  if (k < 0 || k > top) return 0;
  return plane_partition_profile(a, b, c)[static_cast<std::size_t>(k)];
}

BoundedPartitionTable::BoundedPartitionTable(long limit) : limit_(limit) {
  if (limit < 0) throw std::invalid_argument("bounded partition table: negative limit");
  const auto w = static_cast<std::size_t>(limit + 1);
  table_.assign(w * w, BigCount(0));
  // q(m, j) = q(m, j-1) + q(m-j, j)
  for (std::size_t j = 0; j < w; ++j) table_[j] = 1;  // m = 0
  for (std::size_t m = 1; m < w; ++m) {
    for (std::size_t j = 1; j < w; ++j) {
      BigCount v = table_[m * w + j - 1];
      if (j <= m) v += table_[(m - j) * w + j];
      table_[m * w + j] = std::move(v);
    }
  }
}

const BigCount& BoundedPartitionTable::at(long m, long j) const {
  static const BigCount zero(0);
  if (m < 0 || m > limit_) return zero;
  j = std::clamp(j, 0L, limit_);
  return table_[static_cast<std::size_t>(m) * static_cast<std::size_t>(limit_ + 1) + static_cast<std::size_t>(j)];
}

HardyRamanujanTerms hardy_ramanujan_terms(long n) {
  if (n < 1) throw std::invalid_argument("hardy_ramanujan_terms: n must be positive");
  const Real pi = boost::math::constants::pi<Real>();
  const Real q = Real(24 * n - 1);
  HardyRamanujanTerms terms;
  terms.mu = pi * sqrt(q) / 6;
  terms.nu = sqrt(Real(12)) / q;
  const Real sign = (n % 2 == 0) ? Real(1) : Real(-1);
  terms.t_value = terms.nu * ((1 - 1 / terms.mu) * exp(terms.mu) + sign / sqrt(Real(2)) * exp(terms.mu / 2));
  return terms;
}

Bracket hardy_ramanujan_bracket(long n) {
  if (n < 2) throw std::invalid_argument("hardy_ramanujan_bracket: n must be at least 2");
  const auto terms = hardy_ramanujan_terms(n);
  const Real center = terms.nu * (1 - 1 / terms.mu) * exp(terms.mu);
  const Real half_width = 1 + exp(terms.mu / 2);
  const Real ulp = std::numeric_limits<Real>::epsilon();
  Bracket bracket{center - half_width, center + half_width};
  bracket.lower -= abs(bracket.lower) * ulp;
  bracket.upper += abs(bracket.upper) * ulp;
  return bracket;
}

}  // namespace rankwalk
