#include "oracles.hpp"
#include "rankwalk/diagnostics.hpp"
#include "rankwalk/partitions.hpp"

#include <doctest.h>

#include <cmath>

using namespace rankwalk;

namespace {

// Kernel entry P(s, r) realized by a Bias, straight from the acceptance
// thresholds.
template <class M>
Rational realized_entry(const M& model, const Bias& bias, Direction d) {
  return bias.acceptance(d) / Rational(2 * static_cast<long>(model.max_degree()));
}

template <class M>
void check_detailed_balance(const M& model, double beta) {
  const Bias bias = Bias::from_log(Real(beta));
  const Rational lambda = beta == 0 ? Rational(1) : bias.realized_lambda();
  const auto chain = build_chain<Rational>(model, lambda, 10000);
  for (std::size_t i = 0; i < chain.size(); ++i) {
    Rational stay(1);
    for (const auto& nb : neighbor_slots(model, chain.states[i])) {
      auto next = chain.states[i];
      model.apply(next, nb.slot);
      const std::size_t j = chain.index.at(next);
      const Rational p = realized_entry(model, bias, nb.direction);
      CHECK(chain.matrix.coeff(i, j) == p);
      const Rational back = realized_entry(model, bias, opposite(nb.direction));
      CHECK(chain.stationary(i) * p == chain.stationary(j) * back);
      CHECK(std::abs(chain.ranks[j] - chain.ranks[i]) == 1);
      stay -= p;
    }
    CHECK(chain.matrix.coeff(i, i) == stay);
    CHECK(stay * 2 >= 1);
  }
}

}  // namespace

TEST_CASE("acceptance probabilities of the kernel") {
  const Bias half = Bias::from_rational(Rational(1, 2));
  CHECK(half.acceptance(Direction::up) == Rational(1, 2));
  CHECK(half.acceptance(Direction::down) == 1);
  const Bias one;
  CHECK(one.acceptance(Direction::up) == 1);
  CHECK(one.acceptance(Direction::down) == 1);
  const Bias two = Bias::from_rational(Rational(2));
  CHECK(two.acceptance(Direction::down) == Rational(1, 2));
  // Thresholds count the u with u * den < 2^64 * num.
  const Bias third = Bias::from_rational(Rational(1, 3));
  const BigCount two64 = BigCount(1) << 64;
  CHECK(third.acceptance(Direction::up) == Rational((two64 + 2) / 3, two64));
  const Bias logged = Bias::from_log(Real(std::log(0.5)));
  CHECK(abs(to_real(logged.acceptance(Direction::up)) - Real(0.5)) < Real(1e-15));
}

TEST_CASE("unbiased self-loop probability is 1 - deg/(2 Delta)") {
  const RegionPoset box(Region::box(3, 3));
  const auto chain = build_chain<Rational>(box, Rational(1));
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const auto deg = static_cast<long>(neighbor_slots(box, chain.states[i]).size());
    CHECK(chain.matrix.coeff(i, i) == 1 - Rational(deg, 2 * static_cast<long>(box.max_degree())));
  }
}

TEST_CASE("detailed balance and laziness hold exactly") {
  for (double beta : {-1.0, 0.0, 0.7}) {
    check_detailed_balance(RegionPoset(Region::box(3, 3)), beta);
    check_detailed_balance(RegionPoset(Region({4, 3, 3, 1}, {2, 1})), beta);
    check_detailed_balance(PermutationPoset(4), beta);
    check_detailed_balance(PlanePartitionPoset(2, 2, 2), beta);
  }
}

TEST_CASE("run_chain basics") {
  const RegionPoset box(Region::box(3, 3));
  const auto start = box.from_diagram(YoungDiagram::from_heights({2, 1}));
  CHECK(run_chain(box, 0.3, 0, 7, start) == start);
  const auto a = run_chain(box, 0.3, 5000, 7, start);
  const auto b = run_chain(box, 0.3, 5000, 7, start);
  CHECK(a == b);

  const RegionPoset single(Region{});
  CHECK(run_chain(single, 0.0, 100, 1, single.minimum()) == single.minimum());

  // Rank moves by at most one per step.
  ChainState<RegionPoset::Element> state{box.minimum(), Bias(), Rng(3)};
  long last = 0;
  for (int i = 0; i < 10000; ++i) {
    metropolis_step(state, box);
    const long r = box.rank(state.element);
    CHECK(std::abs(r - last) <= 1);
    last = r;
  }
}

TEST_CASE("unbiased chain on the 3x3 box reaches the exact rank law") {
  const RegionPoset box(Region::box(3, 3));
  const auto chain = build_chain<double>(box, 1.0);
  std::vector<double> exact(10, 0.0);
  for (std::size_t i = 0; i < chain.size(); ++i) exact[chain.ranks[i]] += chain.stationary(i);

  // Independent replicas, each run well past its mixing time.
  const int replicas = 10000;
  const auto steps = relaxation_mixing_bound(chain, 0.01);
  std::vector<long> hist(10, 0);
  for (int r = 0; r < replicas; ++r) {
    ++hist[box.rank(run_chain(box, 0.0, steps, split_seed(11, r), box.minimum()))];
  }
  for (int k = 0; k <= 9; ++k) {
    const double p = exact[k];
    const double sigma = std::sqrt(replicas * p * (1 - p));
    CHECK(std::abs(hist[k] - replicas * p) <= 4 * sigma);
  }
}

TEST_CASE("enumerate") {
  const auto e22 = enumerate(RegionPoset(Region::box(2, 2)), 100);
  CHECK(e22.elements.size() == 6);
  CHECK(e22.rank_profile == std::vector<BigCount>{1, 1, 2, 1, 1});
  CHECK(enumerate(RegionPoset(Region::box(1, 1)), 100).elements.size() == 2);
  CHECK_THROWS_AS(enumerate(RegionPoset(Region::box(1000, 1000)), 10), TooLarge);
}
