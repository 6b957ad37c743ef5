#pragma once

// Monotone coupling from the past.
//
// The lower and upper trajectories start at the lattice minimum and maximum at
// time -T and are driven by the same words until time 0, for T = 1, 2, 4, ...
// The word used at time -j depends only on (seed, j), so a later epoch replays
// exactly the words of the earlier ones for the final stretch. When the two
// trajectories meet at time 0 every start would have, and the common value is
// an exact draw from pi(s) proportional to lambda^{rank(s)}.

#include "rankwalk/poset.hpp"

#include <cstdint>
#include <utility>

namespace rankwalk {

// A graded poset that is a lattice under leq, with a grand coupling that is
// monotone: a <= b implies apply_word(a, w) <= apply_word(b, w) for every w.
// Each slot has a fixed direction independent of the state.
template <class M>
concept MonotoneLattice = GradedPoset<M> && requires(const M& m, const typename M::Element& a, std::size_t slot) {
  { m.maximum() } -> std::convertible_to<typename M::Element>;
  { m.leq(a, a) } -> std::convertible_to<bool>;
  { m.slot_direction(slot) } -> std::same_as<Direction>;
};

struct CftpOptions {
  // Cap on the summed epoch lengths (time steps simulated, each advancing
  // both trajectories).
  std::uint64_t max_total_steps = std::uint64_t{1} << 40;
};

template <class Element>
struct CftpResult {
  Element element;
  unsigned epochs = 0;          // epochs run; 0 when min == max
  std::uint64_t horizon = 0;    // T of the coalescing epoch
  std::uint64_t total_steps = 0;
};

// Hooks for instrumentation; the default does nothing.
struct NoCftpObserver {
  void on_word(unsigned /*epoch*/, std::uint64_t /*time_back*/, const Word& /*word*/) {}
  template <class Element>
  void on_pair(unsigned /*epoch*/, std::uint64_t /*time_back*/, const Element& /*lower*/, const Element& /*upper*/) {}
};

template <GradedPoset M>
Word word_at(const M& model, const CounterStream& stream, std::uint64_t time_back) {
  Word w;
  w.slot = bounded(stream.value(2 * time_back), 2 * static_cast<std::uint64_t>(model.max_degree()));
  w.accept = stream.value(2 * time_back + 1);
  return w;
}

template <MonotoneLattice L, class Observer = NoCftpObserver>
CftpResult<typename L::Element> cftp_sample(const L& lattice, const Bias& bias, std::uint64_t seed,
                                            const CftpOptions& options = {}, Observer&& observer = {}) {
  using Element = typename L::Element;
  const CounterStream stream(seed);
  const Element bottom = lattice.minimum();
  const Element top = lattice.maximum();

  CftpResult<Element> result{bottom};
  if (bottom == top) return result;

  for (std::uint64_t horizon = 1;; horizon *= 2) {
    if (result.total_steps + horizon > options.max_total_steps) throw CoalescenceBudgetExhausted();
    ++result.epochs;
    Element lower = bottom;
    Element upper = top;
    for (std::uint64_t j = horizon; j >= 1; --j) {
      const Word w = word_at(lattice, stream, j);
      observer.on_word(result.epochs, j, w);
      apply_word(lattice, lower, w, bias);
      apply_word(lattice, upper, w, bias);
      observer.on_pair(result.epochs, j, lower, upper);
    }
    result.total_steps += horizon;
    if (lower == upper) {
      result.element = std::move(lower);
      result.horizon = horizon;
      return result;
    }
  }
}

// Draws exact stationary samples; the seed of each draw picks its stream.
template <MonotoneLattice L>
struct CftpSampler {
  const L* lattice;
  CftpOptions options{};

  typename L::Element operator()(const Bias& bias, std::uint64_t seed) const {
    return cftp_sample(*lattice, bias, seed, options).element;
  }
};

// Approximate stationary samples: `steps` kernel steps from `start`.
template <GradedPoset M>
struct ChainSampler {
  const M* model;
  std::uint64_t steps;
  typename M::Element start;

  typename M::Element operator()(const Bias& bias, std::uint64_t seed) const {
    return run_chain(*model, bias, steps, seed, start);
  }
};

// Largest coalescence horizon over `trials` CFTP runs. Used as a data-driven
// step budget for forward simulation when no analytic mixing bound exists.
template <MonotoneLattice L>
std::uint64_t calibrate_mixing_steps(const L& lattice, const Bias& bias, std::uint64_t seed, unsigned trials = 8,
                                     const CftpOptions& options = {}) {
  std::uint64_t worst = 1;
  for (unsigned i = 0; i < trials; ++i) {
    worst = std::max(worst, cftp_sample(lattice, bias, split_seed(seed, i), options).horizon);
  }
  return worst;
}

}  // namespace rankwalk
