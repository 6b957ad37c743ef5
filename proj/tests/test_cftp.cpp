#include "oracles.hpp"
#include "rankwalk/cftp.hpp"
#include "rankwalk/diagnostics.hpp"
#include "rankwalk/partitions.hpp"

#include <doctest.h>

#include <cmath>

using namespace rankwalk;

namespace {

struct Recorder {
  std::map<std::pair<unsigned, std::uint64_t>, std::pair<std::uint64_t, std::uint64_t>> words;
  bool sandwiched = true;
  const RegionPoset* poset = nullptr;

  void on_word(unsigned epoch, std::uint64_t back, const Word& w) { words[{epoch, back}] = {w.slot, w.accept}; }
  template <class Element>
  void on_pair(unsigned, std::uint64_t, const Element& lower, const Element& upper) {
    sandwiched = sandwiched && poset->leq(lower, upper);
  }
};

}  // namespace

TEST_CASE("single-element lattice coalesces without running") {
  const RegionPoset empty{Region{}};
  const auto r = cftp_sample(empty, Bias(), 1);
  CHECK(r.epochs == 0);
  CHECK(r.total_steps == 0);
  CHECK(r.element == empty.minimum());
}

TEST_CASE("epochs reuse the words of earlier epochs") {
  const RegionPoset box(Region::box(4, 4));
  Recorder rec;
  rec.poset = &box;
  const auto r = cftp_sample(box, Bias::from_rational(Rational(2, 3)), 77, {}, rec);
  CHECK(r.epochs >= 2);
  CHECK(r.horizon == (std::uint64_t{1} << (r.epochs - 1)));
  CHECK(r.total_steps == 2 * r.horizon - 1);
  for (const auto& [key, w] : rec.words) {
    const auto [epoch, back] = key;
    if (epoch == 1) continue;
    const std::uint64_t earlier_horizon = std::uint64_t{1} << (epoch - 2);
    if (back <= earlier_horizon) CHECK(rec.words.at({epoch - 1, back}) == w);
  }
  CHECK(rec.sandwiched);
}

TEST_CASE("cftp is deterministic in its seed") {
  const RegionPoset box(Region::box(4, 4));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CHECK(cftp_sample(box, Bias(), seed).element == cftp_sample(box, Bias(), seed).element);
  }
  CftpOptions tiny;
  tiny.max_total_steps = 3;
  CHECK_THROWS_AS(cftp_sample(box, Bias(), 1, tiny), CoalescenceBudgetExhausted);
}

TEST_CASE("1x1 box at lambda = 1 is a fair coin") {
  const RegionPoset box(Region::box(1, 1));
  const int draws = 100000;
  long full = 0;
  for (int i = 0; i < draws; ++i) full += box.rank(cftp_sample(box, Bias(), split_seed(1, i)).element);
  const double sigma = std::sqrt(draws * 0.25);
  CHECK(std::abs(full - draws / 2.0) <= 4 * sigma);
}

TEST_CASE("4x4 box draws follow the Boltzmann law") {
  const RegionPoset box(Region::box(4, 4));
  const int draws = 35000;

  std::map<std::vector<long>, long> counts;
  for (int i = 0; i < draws; ++i) {
    ++counts[box.to_diagram(cftp_sample(box, Bias(), split_seed(2, i)).element).heights()];
  }
  CHECK(counts.size() == 70);
  CHECK(oracle::chi_square_uniform(counts, 70) < oracle::chi_square_quantile(69, 0.999));

  // lambda = 1/2: compare rank frequencies with the exact law.
  const auto chain = build_chain<double>(box, 0.5);
  std::vector<double> exact(17, 0.0);
  for (std::size_t i = 0; i < chain.size(); ++i) exact[chain.ranks[i]] += chain.stationary(i);
  std::vector<long> hist(17, 0);
  const Bias half = Bias::from_rational(Rational(1, 2));
  for (int i = 0; i < draws; ++i) ++hist[box.rank(cftp_sample(box, half, split_seed(3, i)).element)];
  double stat = 0;
  std::size_t cells = 0;
  for (int k = 0; k <= 16; ++k) {
    const double e = draws * exact[k];
    if (e < 5) continue;  // pooled out
    stat += (hist[k] - e) * (hist[k] - e) / e;
    ++cells;
  }
  CHECK(stat < oracle::chi_square_quantile(cells - 1, 0.999));
}

TEST_CASE("samplers and calibration") {
  const RegionPoset box(Region::box(3, 3));
  const CftpSampler<RegionPoset> exact{&box};
  CHECK(exact(Bias(), 5) == cftp_sample(box, Bias(), 5).element);
  const ChainSampler<RegionPoset> forward{&box, 0, box.minimum()};
  CHECK(forward(Bias(), 5) == box.minimum());
  const auto steps = calibrate_mixing_steps(box, Bias(), 1);
  CHECK(steps >= 1);
  CHECK((steps & (steps - 1)) == 0);
}
