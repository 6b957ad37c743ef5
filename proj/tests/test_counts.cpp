#include "oracles.hpp"
#include "rankwalk/counts.hpp"

#include <doctest.h>

using namespace rankwalk;

TEST_CASE("partition numbers agree with enumeration up to 40") {
  const auto p = partition_numbers(40);
  REQUIRE(p.size() == 41);
  for (long n = 0; n <= 40; ++n) CHECK(p[n] == oracle::partitions(n).size());
  CHECK(p[5] == 7);
  CHECK(p[8] == 22);
  CHECK(partition_numbers(0) == std::vector<BigCount>{1});
}

TEST_CASE("restricted profile matches brute force on boxes and skew regions") {
  const std::vector<std::pair<std::vector<long>, std::vector<long>>> cases = {
      {{2, 2}, {}},       {{3, 3, 3}, {}},    {{5, 3, 3, 1}, {}},     {{4, 4, 2, 2, 1}, {2, 1}},
      {{6, 3, 2, 1, 1, 1}, {}}, {{3, 3, 3, 3}, {3, 1, 1}}, {{1}, {}},
  };
  for (const auto& [ceiling, floor] : cases) {
    const Region region(ceiling, floor);
    const auto profile = restricted_profile(region);
    std::map<long, long> brute;
    for (const auto& h : oracle::diagrams(ceiling, floor)) ++brute[oracle::sum(h) - oracle::sum(floor)];
    REQUIRE(profile.size() == static_cast<std::size_t>(region.area() + 1));
    for (long k = 0; k <= region.area(); ++k) CHECK(profile[k] == brute[k]);
  }
}

TEST_CASE("count_restricted examples") {
  CHECK(count_restricted(Region::box(2, 2), 2) == 2);
  CHECK(count_restricted(Region::box(3, 4), 0) == 1);
  CHECK(count_restricted(Region::box(5, 5), 5) == 7);
  CHECK(count_restricted(Region::box(2, 2), 5) == 0);
}

TEST_CASE("box totals are binomial coefficients") {
  for (long w = 1; w <= 5; ++w) {
    for (long h = 1; h <= 5; ++h) {
      BigCount total = 0;
      for (const auto& c : restricted_profile(Region::box(w, h))) total += c;
      BigCount binom = 1;
      for (long i = 1; i <= h; ++i) binom = binom * (w + i) / i;
      CHECK(total == binom);
    }
  }
}

TEST_CASE("inversion numbers agree with enumeration") {
  CHECK(inversion_numbers(1) == std::vector<BigCount>{1});
  for (int n = 1; n <= 7; ++n) {
    const auto counts = inversion_numbers(n);
    std::map<long, long> brute;
    for (const auto& p : oracle::permutations(n)) ++brute[oracle::inversions(p)];
    REQUIRE(counts.size() == static_cast<std::size_t>(n * (n - 1) / 2 + 1));
    for (std::size_t k = 0; k < counts.size(); ++k) CHECK(counts[k] == brute[static_cast<long>(k)]);
  }
  CHECK(inversion_numbers(4)[2] == 5);
  for (int n = 1; n <= 8; ++n) {
    const auto counts = inversion_numbers(n);
    BigCount total = 0;
    BigCount fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    for (std::size_t k = 0; k < counts.size(); ++k) {
      total += counts[k];
      CHECK(counts[k] == counts[counts.size() - 1 - k]);
    }
    CHECK(total == fact);
  }
  CHECK_THROWS(inversion_numbers(0));
}

TEST_CASE("plane partitions agree with enumeration") {
  for (int a = 1; a <= 3; ++a) {
    for (int b = 1; b <= 3; ++b) {
      for (int c = 1; c <= 3; ++c) {
        std::map<long, long> brute;
        for (const auto& m : oracle::plane_partitions(a, b, c)) ++brute[oracle::volume(m)];
        const auto profile = plane_partition_profile(a, b, c);
        REQUIRE(profile.size() == static_cast<std::size_t>(a * b * c + 1));
        for (long k = 0; k <= a * b * c; ++k) {
          CHECK(profile[k] == brute[k]);
          CHECK(box_plane_partitions(a, b, c, k) == box_plane_partitions(b, a, c, k));
        }
      }
    }
  }
  BigCount total = 0;
  for (long k = 0; k <= 8; ++k) total += box_plane_partitions(2, 2, 2, k);
  CHECK(total == 20);
  CHECK(box_plane_partitions(1, 1, 1, 1) == 1);
  CHECK(box_plane_partitions(2, 3, 2, 0) == 1);
  CHECK(box_plane_partitions(2, 2, 2, 9) == 0);
}

TEST_CASE("bounded partition table") {
  const BoundedPartitionTable q(20);
  for (long m = 0; m <= 20; ++m) {
    for (long j = 0; j <= 20; ++j) {
      long brute = 0;
      for (const auto& p : oracle::partitions(m)) brute += p.empty() || p.front() <= j;
      CHECK(q.at(m, j) == brute);
    }
  }
}

TEST_CASE("Hardy-Ramanujan bracket contains p(n)") {
  const auto p = partition_numbers(2000);
  CHECK(hardy_ramanujan_bracket(2).contains(p[2]));
  CHECK(hardy_ramanujan_bracket(30).contains(p[30]));
  CHECK(hardy_ramanujan_bracket(100).contains(p[100]));
  for (long n = 30; n <= 2000; ++n) {
    if (!hardy_ramanujan_bracket(n).contains(p[n])) FAIL("bracket misses p(" << n << ")");
  }
  const auto t = hardy_ramanujan_terms(5);
  CHECK(t.mu > 0);
  CHECK(t.nu > 0);
  CHECK(t.t_value > 0);
}
