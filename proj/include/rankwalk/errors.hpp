#pragma once

#include <stdexcept>
#include <string>

namespace rankwalk {

// Raised when a run gives up rather than return a biased answer. The CLI maps
// every subclass to exit status 2.
class RuntimeFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RetryBudgetExhausted : public RuntimeFailure {
 public:
  RetryBudgetExhausted() : RuntimeFailure("rejection budget exhausted") {}
};

class CoalescenceBudgetExhausted : public RuntimeFailure {
 public:
  CoalescenceBudgetExhausted() : RuntimeFailure("coalescence budget exhausted") {}
};

class NoBalancedBias : public RuntimeFailure {
 public:
  NoBalancedBias() : RuntimeFailure("no balanced bias found") {}
};

class HypothesisViolation : public RuntimeFailure {
 public:
  explicit HypothesisViolation(const std::string& what) : RuntimeFailure("hypothesis violation: " + what) {}
};

class TooLarge : public RuntimeFailure {
 public:
  explicit TooLarge(const std::string& what) : RuntimeFailure("too large: " + what) {}
};

}  // namespace rankwalk
