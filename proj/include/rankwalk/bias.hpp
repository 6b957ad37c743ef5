#pragma once

// Metropolis acceptance for a fixed bias lambda.
//
// A move that raises the rank is accepted with probability min(1, lambda) and
// one that lowers it with min(1, 1/lambda). Each probability is realized as a
// threshold on a uniform 64-bit word: accept iff u < T, with T = 2^64 meaning
// "always". The realized kernel is therefore exactly Metropolis for the
// rational bias T_up / T_down, which differs from the requested lambda by at
// most 2^-64 in each acceptance probability.

#include "rankwalk/numeric.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>

namespace rankwalk {

enum class Direction : std::uint8_t { up, down };

inline Direction opposite(Direction d) { return d == Direction::up ? Direction::down : Direction::up; }

class Bias {
 public:
  // lambda = 1.
  Bias() = default;

  static Bias from_rational(const Rational& lambda) {
    if (lambda <= 0) throw std::invalid_argument("bias: lambda must be positive");
    Bias b;
    b.lambda_ = lambda;
    b.log_lambda_ = static_cast<double>(log(to_real(lambda)));
    const BigCount two64 = BigCount(1) << 64;
    // T = #{u : u * den < 2^64 * num} = ceil(2^64 num / den).
    auto count_below = [&](const BigCount& num, const BigCount& den) {
      return BigCount((two64 * num + den - 1) / den);
    };
    if (lambda < 1) {
      b.up_ = Threshold::of(count_below(numerator_of(lambda), denominator_of(lambda)));
    } else if (lambda > 1) {
      b.down_ = Threshold::of(count_below(denominator_of(lambda), numerator_of(lambda)));
    }
    return b;
  }

  // lambda = e^beta, quantized; lambda() then reports the realized value.
  // Thresholds are kept at 1 or more so the realized bias stays finite even
  // when e^{-|beta|} < 2^-64.
  static Bias from_log(const Real& log_lambda) {
    Bias b;
    b.log_lambda_ = static_cast<double>(log_lambda);
    const Real two64 = ldexp(Real(1), 64);
    auto quantize = [&](const Real& p) { return Threshold::of(std::max(BigCount(1), BigCount(floor(p * two64)))); };
    if (log_lambda < 0) {
      b.up_ = quantize(exp(log_lambda));
    } else if (log_lambda > 0) {
      b.down_ = quantize(exp(-log_lambda));
    }
    b.lambda_ = b.realized_lambda();
    return b;
  }

  bool accept(Direction d, std::uint64_t u) const {
    const Threshold& t = d == Direction::up ? up_ : down_;
    return t.always || u < t.value;
  }

  // Exact acceptance probability of the realized kernel.
  Rational acceptance(Direction d) const {
    const Threshold& t = d == Direction::up ? up_ : down_;
    if (t.always) return Rational(1);
    return Rational(BigCount(t.value), BigCount(1) << 64);
  }

  // Bias the kernel was defined with (requested value for from_rational,
  // realized value for from_log).
  const Rational& lambda() const { return lambda_; }

  // T_up / T_down. Undefined when down-moves are never accepted.
  Rational realized_lambda() const {
    const Rational down = acceptance(Direction::down);
    if (down == 0) throw std::domain_error("bias: down-moves are never accepted");
    return acceptance(Direction::up) / down;
  }

  double log_lambda() const { return log_lambda_; }

 private:
  struct Threshold {
    bool always = true;
    std::uint64_t value = 0;

    static Threshold of(const BigCount& t) {
      if (t >= (BigCount(1) << 64)) return {};
      return {false, t.convert_to<std::uint64_t>()};
    }
  };

  Threshold up_;
  Threshold down_;
  Rational lambda_{1};
  double log_lambda_ = 0.0;
};

}  // namespace rankwalk
