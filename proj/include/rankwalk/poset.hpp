#pragma once

// Graded posets and the lazy Metropolis kernel on their Hasse diagrams.
//
// A model exposes its Hasse diagram through numbered move slots. The kernel
// draws a slot uniformly from [0, 2*max_degree); slots at or past
// move_slots() are self-loops, and from any element every neighbor is
// addressed by exactly one slot. With acceptance min(1, lambda^{+-1}) this
// gives P(s, r) = min(1, pi(r)/pi(s)) / (2 * max_degree) for every Hasse edge
// and P(s, s) >= 1/2.

#include "rankwalk/bias.hpp"
#include "rankwalk/errors.hpp"
#include "rankwalk/numeric.hpp"
#include "rankwalk/rng.hpp"

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <unordered_map>
#include <vector>

namespace rankwalk {

template <class M>
concept GradedPoset = requires(const M& m, const typename M::Element& e, typename M::Element& x, std::size_t slot) {
  typename M::Element;
  requires std::equality_comparable<typename M::Element>;
  { std::hash<typename M::Element>{}(e) } -> std::convertible_to<std::size_t>;
  { m.rank(e) } -> std::convertible_to<long>;
  { m.rank_bound() } -> std::convertible_to<long>;
  { m.max_degree() } -> std::convertible_to<std::size_t>;
  { m.move_slots() } -> std::convertible_to<std::size_t>;
  { m.minimum() } -> std::convertible_to<typename M::Element>;
  // Direction of the move addressed by `slot` from e, or nullopt if the slot
  // is a self-loop at e.
  { m.probe(e, slot) } -> std::same_as<std::optional<Direction>>;
  // Performs that move; only called after a successful probe.
  m.apply(x, slot);
};

// One kernel step's randomness: a slot in [0, 2*max_degree) and a uniform
// 64-bit acceptance word.
struct Word {
  std::uint64_t slot = 0;
  std::uint64_t accept = 0;
};

// Applies a word to e. Returns true if e moved. Models may provide a fused
// try_move for their hot loop; it must agree with probe/apply.
template <GradedPoset M>
bool apply_word(const M& model, typename M::Element& e, const Word& w, const Bias& bias) {
  if constexpr (requires { model.try_move(e, std::size_t{}, bias, std::uint64_t{}); }) {
    return model.try_move(e, static_cast<std::size_t>(w.slot), bias, w.accept);
  } else {
    if (w.slot >= model.move_slots()) return false;
    const auto slot = static_cast<std::size_t>(w.slot);
    const auto dir = model.probe(e, slot);
    if (!dir || !bias.accept(*dir, w.accept)) return false;
    model.apply(e, slot);
    return true;
  }
}

template <class Element>
struct ChainState {
  Element element;
  Bias bias;
  Rng rng;
};

template <GradedPoset M>
Word draw_word(const M& model, Rng& rng) {
  Word w;
  w.slot = rng.below(2 * static_cast<std::uint64_t>(model.max_degree()));
  w.accept = rng();
  return w;
}

template <GradedPoset M>
void metropolis_step(ChainState<typename M::Element>& state, const M& model) {
  const Word w = draw_word(model, state.rng);
  apply_word(model, state.element, w, state.bias);
}

// Iterates the kernel `steps` times from `start`; deterministic in seed.
template <GradedPoset M>
typename M::Element run_chain(const M& model, const Bias& bias, std::uint64_t steps, std::uint64_t seed,
                              typename M::Element start) {
  ChainState<typename M::Element> state{std::move(start), bias, Rng(seed)};
  for (std::uint64_t i = 0; i < steps; ++i) metropolis_step(state, model);
  return std::move(state.element);
}

template <GradedPoset M>
typename M::Element run_chain(const M& model, double log_bias, std::uint64_t steps, std::uint64_t seed,
                              typename M::Element start) {
  return run_chain(model, Bias::from_log(Real(log_bias)), steps, seed, std::move(start));
}

struct Neighbor {
  std::size_t slot;
  Direction direction;
};

template <GradedPoset M>
std::vector<Neighbor> neighbor_slots(const M& model, const typename M::Element& e) {
  std::vector<Neighbor> out;
  for (std::size_t slot = 0; slot < model.move_slots(); ++slot) {
    if (auto d = model.probe(e, slot)) out.push_back({slot, *d});
  }
  return out;
}

template <GradedPoset M>
std::vector<typename M::Element> neighbors(const M& model, const typename M::Element& e, Direction which) {
  std::vector<typename M::Element> out;
  for (const auto& nb : neighbor_slots(model, e)) {
    if (nb.direction != which) continue;
    auto copy = e;
    model.apply(copy, nb.slot);
    out.push_back(std::move(copy));
  }
  return out;
}

template <GradedPoset M>
std::vector<typename M::Element> up_neighbors(const M& model, const typename M::Element& e) {
  return neighbors(model, e, Direction::up);
}

template <GradedPoset M>
std::vector<typename M::Element> down_neighbors(const M& model, const typename M::Element& e) {
  return neighbors(model, e, Direction::down);
}

template <class Element>
struct Enumeration {
  std::vector<Element> elements;
  std::vector<long> ranks;
  // a_i: number of elements of rank i, for i = 0 .. max rank found.
  std::vector<BigCount> rank_profile;
  std::unordered_map<Element, std::size_t> index;
};

// Breadth-first closure of the minimum element over the Hasse diagram.
// Throws TooLarge once more than `cap` elements are found.
template <GradedPoset M>
Enumeration<typename M::Element> enumerate(const M& model, std::size_t cap) {
  using Element = typename M::Element;
  Enumeration<Element> out;
  std::deque<std::size_t> queue;
  auto visit = [&](Element e) {
    if (out.index.contains(e)) return;
    if (out.elements.size() >= cap) throw TooLarge("more than " + std::to_string(cap) + " elements");
    out.index.emplace(e, out.elements.size());
    out.ranks.push_back(model.rank(e));
    queue.push_back(out.elements.size());
    out.elements.push_back(std::move(e));
  };
  visit(model.minimum());
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    const Element current = out.elements[i];
    for (const auto& nb : neighbor_slots(model, current)) {
      Element next = current;
      model.apply(next, nb.slot);
      visit(std::move(next));
    }
  }
  long top = 0;
  for (long r : out.ranks) top = std::max(top, r);
  out.rank_profile.assign(static_cast<std::size_t>(top + 1), BigCount(0));
  for (long r : out.ranks) out.rank_profile[static_cast<std::size_t>(r)] += 1;
  return out;
}

}  // namespace rankwalk
