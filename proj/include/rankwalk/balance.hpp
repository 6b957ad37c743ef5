#pragma once

// Balanced-bias sampling of a fixed rank.
//
// The schedule lambda_t = c^{t/R - 1}, t = 0 .. R^2, runs from 1/c to
// c^{R-1}. For a target rank k the sampler looks for the first t at which
// the Boltzmann mass above k exceeds 1/(c+1); there both the mass at or below
// k and the mass above k are at least 1/(c+1), so draws at lambda_t land on
// rank k often enough for rejection to be efficient. Conditioned on rank k a
// Boltzmann draw is uniform, so accepted draws are uniform on rank k.

#include "rankwalk/cftp.hpp"
#include "rankwalk/poset.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>

namespace rankwalk {

class BiasSchedule {
 public:
  struct Point {
    Real lambda;
    Real log_bias;
  };

  BiasSchedule(Real c, long rank_bound) : c_(std::move(c)), rank_bound_(rank_bound) {
    if (c_ < 2) throw std::invalid_argument("bias schedule: c must be at least 2");
    if (rank_bound_ < 1) throw std::invalid_argument("bias schedule: rank bound must be positive");
    log_c_ = log(c_);
  }

  const Real& c() const { return c_; }
  long rank_bound() const { return rank_bound_; }
  long max_index() const { return rank_bound_ * rank_bound_; }

  // beta_t = ln(1/c) + t ln(c) / R and lambda_t = e^{beta_t}.
  Point at(long t) const {
    if (t < 0 || t > max_index()) throw std::out_of_range("bias schedule: index out of range");
    Point p;
    p.log_bias = -log_c_ + Real(t) * log_c_ / Real(rank_bound_);
    p.lambda = exp(p.log_bias);
    return p;
  }

  Bias bias(long t) const { return Bias::from_log(at(t).log_bias); }

 private:
  Real c_;
  Real log_c_;
  long rank_bound_;
};

inline BiasSchedule::Point lambda_at(const BiasSchedule& schedule, long t) { return schedule.at(t); }

struct Tails {
  Real at_most;  // Pr[rank <= k]
  Real above;    // Pr[rank > k]
};

// Boltzmann tail masses of a rank profile at bias lambda.
template <class T>
Tails rank_tails(const std::vector<BigCount>& profile, const T& lambda, long k) {
  Real low = 0;
  Real high = 0;
  Real power = 1;
  const Real x(lambda);
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const Real term = Real(profile[i]) * power;
    if (static_cast<long>(i) <= k) {
      low += term;
    } else {
      high += term;
    }
    power *= x;
  }
  const Real z = low + high;
  return {low / z, high / z};
}

// Smallest t in [0, R^2] with Pr_t[rank > k] > 1/(c+1), from an exact rank
// profile. nullopt if no such t exists.
inline std::optional<long> balanced_index_exact(const std::vector<BigCount>& profile, long k,
                                                const BiasSchedule& schedule) {
  const Real threshold = 1 / (schedule.c() + 1);
  long lo = -1;
  long hi = schedule.max_index();
  if (rank_tails(profile, schedule.at(hi).lambda, k).above <= threshold) return std::nullopt;
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    if (rank_tails(profile, schedule.at(mid).lambda, k).above > threshold) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

// Samples per probe so that all `probes` estimates are within `slack` of
// their means with probability at least `confidence` (Hoeffding plus a union
// bound).
inline std::size_t hoeffding_samples(double confidence, double slack, std::size_t probes) {
  if (!(confidence > 0 && confidence < 1)) throw std::invalid_argument("confidence must lie in (0, 1)");
  const double n = std::log(2.0 * static_cast<double>(probes) / (1.0 - confidence)) / (2.0 * slack * slack);
  return static_cast<std::size_t>(std::ceil(n));
}

struct BalancedSearchOptions {
  double confidence = 0.99;
  // 0: derive from confidence with slack 1/(2(c+1)).
  std::size_t samples_per_probe = 0;
};

struct BalancedBias {
  long t = 0;
  Bias bias;
  double tail_estimate = 0;  // empirical Pr_t[rank > k] at the returned t
  std::size_t probes = 0;
  std::size_t samples_per_probe = 0;
};

// Binary search over the schedule for the balanced index, using `sampler`
// (a callable (const Bias&, seed) -> Element drawing from Pr_t) to estimate
// Pr_t[rank > k]. The search relies on that tail being nondecreasing in t.
// Estimates equal to the threshold count as not exceeding it.
template <GradedPoset M, class Sampler>
BalancedBias find_balanced_bias(const M& model, long k, const BiasSchedule& schedule, const Sampler& sampler,
                                const BalancedSearchOptions& options, std::uint64_t seed) {
  const long rank_bound = schedule.rank_bound();
  if (k < 1 || k > rank_bound - 1) throw std::invalid_argument("balanced bias: k must lie in [1, R-1]");

  const double c = static_cast<double>(schedule.c());
  const double threshold = 1.0 / (c + 1.0);
  const auto max_probes =
      static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(schedule.max_index()) + 1.0))) + 1;
  const std::size_t samples = options.samples_per_probe != 0
                                  ? options.samples_per_probe
                                  : hoeffding_samples(options.confidence, threshold / 2.0, max_probes);

  BalancedBias out;
  out.samples_per_probe = samples;
  auto estimate = [&](long t) {
    ++out.probes;
    const Bias bias = schedule.bias(t);
    const std::uint64_t probe_seed = split_seed(seed, static_cast<std::uint64_t>(t));
    std::size_t above = 0;
    for (std::size_t i = 0; i < samples; ++i) {
      if (model.rank(sampler(bias, split_seed(probe_seed, i))) > k) ++above;
    }
    return static_cast<double>(above) / static_cast<double>(samples);
  };

  long lo = -1;
  long hi = schedule.max_index();
  double hi_estimate = estimate(hi);
  if (!(hi_estimate > threshold)) throw NoBalancedBias();
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    const double e = estimate(mid);
    if (e > threshold) {
      hi = mid;
      hi_estimate = e;
    } else {
      lo = mid;
    }
  }
  out.t = hi;
  out.bias = schedule.bias(hi);
  out.tail_estimate = hi_estimate;
  return out;
}

template <class Element>
struct FixedRankDraw {
  Element element;
  std::uint64_t attempts = 0;
};

// Rejection: draw at `bias` until the rank is exactly k. retry_cap = 0 means
// no cap.
template <GradedPoset M, class Sampler>
FixedRankDraw<typename M::Element> sample_fixed_rank(const M& model, long k, const Bias& bias, const Sampler& sampler,
                                                     std::uint64_t seed, std::uint64_t retry_cap = 0) {
  for (std::uint64_t attempt = 0; retry_cap == 0 || attempt < retry_cap; ++attempt) {
    auto e = sampler(bias, split_seed(seed, attempt));
    if (model.rank(e) == k) return {std::move(e), attempt + 1};
  }
  throw RetryBudgetExhausted();
}

struct RankSamplingOptions {
  bool exact = true;        // draws via coupling from the past
  std::optional<double> c;  // growth bound; defaults to max_degree
  BalancedSearchOptions search{};
  // Forward-chain steps per draw when !exact; 0 calibrates 4x the worst CFTP
  // coalescence horizon over a few trials at each bias.
  std::uint64_t mixing_steps = 0;
  std::uint64_t retry_cap = 1000000;
  CftpOptions cftp{};
};

// Uniform sampler for one rank of a monotone lattice: finds the balanced bias
// once, then serves independent draws.
template <MonotoneLattice L>
class FixedRankSampler {
 public:
  using Element = typename L::Element;

  FixedRankSampler(const L& lattice, long k, RankSamplingOptions options, std::uint64_t seed)
      : lattice_(&lattice), k_(k), options_(std::move(options)) {
    const long rank_bound = lattice.rank_bound();
    if (k < 0 || k > rank_bound) throw std::invalid_argument("fixed rank: k out of range");
    make_sampler();
    if (k == 0 || k == rank_bound) return;  // unique extreme elements
    const double c = options_.c.value_or(static_cast<double>(lattice.max_degree()));
    const BiasSchedule schedule(Real(std::max(c, 2.0)), rank_bound);
    balanced_ = find_balanced_bias(lattice, k, schedule, sampler_, options_.search, seed);
  }

  long rank() const { return k_; }
  const std::optional<BalancedBias>& balanced() const { return balanced_; }

  FixedRankDraw<Element> draw(std::uint64_t seed) const {
    if (k_ == 0) return {lattice_->minimum(), 1};
    if (k_ == lattice_->rank_bound()) return {lattice_->maximum(), 1};
    return sample_fixed_rank(*lattice_, k_, balanced_->bias, sampler_, seed, options_.retry_cap);
  }

 private:
  void make_sampler() {
    const L* lattice = lattice_;
    if (options_.exact) {
      const CftpOptions cftp = options_.cftp;
      sampler_ = [lattice, cftp](const Bias& bias, std::uint64_t seed) {
        return cftp_sample(*lattice, bias, seed, cftp).element;
      };
      return;
    }
    const std::uint64_t fixed = options_.mixing_steps;
    const CftpOptions cftp = options_.cftp;
    auto cache = std::make_shared<std::map<double, std::uint64_t>>();
    auto guard = std::make_shared<std::mutex>();
    sampler_ = [lattice, fixed, cftp, cache, guard](const Bias& bias, std::uint64_t seed) {
      std::uint64_t steps = fixed;
      if (steps == 0) {
        std::lock_guard lock(*guard);
        auto it = cache->find(bias.log_lambda());
        if (it == cache->end()) {
          it = cache->emplace(bias.log_lambda(), 4 * calibrate_mixing_steps(*lattice, bias, seed, 8, cftp)).first;
        }
        steps = it->second;
      }
      return run_chain(*lattice, bias, steps, seed, lattice->minimum());
    };
  }

  const L* lattice_;
  long k_;
  RankSamplingOptions options_;
  std::function<Element(const Bias&, std::uint64_t)> sampler_;
  std::optional<BalancedBias> balanced_;
};

}  // namespace rankwalk
