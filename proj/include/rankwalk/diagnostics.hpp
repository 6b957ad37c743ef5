#pragma once

// Finite-state analysis of the Metropolis kernel on an enumerable poset.
//
// FiniteChain is templated on the scalar: Rational gives exact kernels and
// stationary laws (the acceptance min(1, lambda^{+-1}) is rational whenever
// lambda is), double is for spectra and long matrix powers.

#include "rankwalk/balance.hpp"
#include "rankwalk/poset.hpp"

#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace rankwalk {

template <class Scalar>
Scalar scalar_from(const Rational& q) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return q;
  } else {
    return static_cast<Scalar>(q.template convert_to<double>());
  }
}

template <class Scalar>
double to_double(const Scalar& x) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return x;
  } else {
    return x.template convert_to<double>();
  }
}

template <class Element, class Scalar>
struct FiniteChain {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::SparseMatrix<Scalar, Eigen::RowMajor>;

  std::vector<Element> states;
  std::vector<long> ranks;
  std::vector<BigCount> rank_profile;
  std::unordered_map<Element, std::size_t> index;
  Matrix matrix;      // row-stochastic
  Vector stationary;  // proportional to lambda^rank
  Scalar lambda;

  std::size_t size() const { return states.size(); }
};

// Enumerates the poset and fills the kernel P(s, r) = min(1, lambda^{+-1}) /
// (2 max_degree) on Hasse edges, the rest on the diagonal.
template <class Scalar, GradedPoset M>
FiniteChain<typename M::Element, Scalar> build_chain(const M& model, const Scalar& lambda, std::size_t cap = 100000) {
  if (!(lambda > 0)) throw std::invalid_argument("build_chain: lambda must be positive");
  auto en = enumerate(model, cap);
  FiniteChain<typename M::Element, Scalar> chain;
  chain.lambda = lambda;
  const std::size_t n = en.elements.size();
  const Scalar two_delta = Scalar(2 * static_cast<long>(model.max_degree()));
  const Scalar one(1);
  const Scalar up = (lambda < one ? lambda : one) / two_delta;
  const Scalar down = (lambda > one ? one / lambda : one) / two_delta;

  std::vector<Eigen::Triplet<Scalar>> triplets;
  for (std::size_t i = 0; i < n; ++i) {
    Scalar stay = one;
    for (const auto& nb : neighbor_slots(model, en.elements[i])) {
      auto next = en.elements[i];
      model.apply(next, nb.slot);
      const std::size_t j = en.index.at(next);
      const Scalar& p = nb.direction == Direction::up ? up : down;
      triplets.emplace_back(static_cast<int>(i), static_cast<int>(j), p);
      stay -= p;
    }
    triplets.emplace_back(static_cast<int>(i), static_cast<int>(i), stay);
  }
  chain.matrix.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  chain.matrix.setFromTriplets(triplets.begin(), triplets.end());

  chain.stationary.resize(static_cast<Eigen::Index>(n));
  if constexpr (std::is_same_v<Scalar, double>) {
    // Log domain, so large ranks at large lambda do not overflow.
    const double ll = std::log(lambda);
    double top = -std::numeric_limits<double>::infinity();
    for (long r : en.ranks) top = std::max(top, static_cast<double>(r) * ll);
    for (std::size_t i = 0; i < n; ++i) chain.stationary(i) = std::exp(static_cast<double>(en.ranks[i]) * ll - top);
    chain.stationary /= chain.stationary.sum();
  } else {
    std::vector<Scalar> power(en.rank_profile.size());
    power[0] = one;
    for (std::size_t r = 1; r < power.size(); ++r) power[r] = power[r - 1] * lambda;
    Scalar z(0);
    for (std::size_t r = 0; r < power.size(); ++r) z += Scalar(en.rank_profile[r]) * power[r];
    for (std::size_t i = 0; i < n; ++i) chain.stationary(i) = power[static_cast<std::size_t>(en.ranks[i])] / z;
  }

  chain.states = std::move(en.elements);
  chain.ranks = std::move(en.ranks);
  chain.rank_profile = std::move(en.rank_profile);
  chain.index = std::move(en.index);
  return chain;
}

// Largest |row sum - 1| and |pi P - pi| entries.
template <class Element, class Scalar>
std::pair<Scalar, Scalar> chain_residuals(const FiniteChain<Element, Scalar>& chain) {
  using std::abs;
  Scalar rows(0);
  for (Eigen::Index i = 0; i < chain.matrix.outerSize(); ++i) {
    Scalar sum(0);
    for (typename FiniteChain<Element, Scalar>::Matrix::InnerIterator it(chain.matrix, i); it; ++it) sum += it.value();
    const Scalar d = abs(sum - Scalar(1));
    if (d > rows) rows = d;
  }
  const typename FiniteChain<Element, Scalar>::Vector moved = chain.matrix.transpose() * chain.stationary;
  Scalar stat(0);
  for (Eigen::Index i = 0; i < moved.size(); ++i) {
    const Scalar d = abs(moved(i) - chain.stationary(i));
    if (d > stat) stat = d;
  }
  return {rows, stat};
}

template <class Element, class Scalar>
std::vector<bool> rank_cut(const FiniteChain<Element, Scalar>& chain, long k) {
  std::vector<bool> cut(chain.size());
  for (std::size_t i = 0; i < chain.size(); ++i) cut[i] = chain.ranks[i] <= k;
  return cut;
}

// pi(Omega_k).
template <class Element, class Scalar>
Scalar rank_mass(const FiniteChain<Element, Scalar>& chain, long k) {
  Scalar mass(0);
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (chain.ranks[i] == k) mass += chain.stationary(static_cast<Eigen::Index>(i));
  }
  return mass;
}

// Phi(S) = sum_{s in S, r not in S} pi(s) P(s, r) / pi(S).
template <class Element, class Scalar>
Scalar conductance_of_cut(const FiniteChain<Element, Scalar>& chain, const std::vector<bool>& cut) {
  if (cut.size() != chain.size()) throw std::invalid_argument("conductance: cut has the wrong size");
  Scalar flow(0);
  Scalar mass(0);
  bool any_in = false;
  bool any_out = false;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (!cut[i]) {
      any_out = true;
      continue;
    }
    any_in = true;
    const Scalar& pi = chain.stationary(static_cast<Eigen::Index>(i));
    mass += pi;
    for (typename FiniteChain<Element, Scalar>::Matrix::InnerIterator it(chain.matrix, static_cast<Eigen::Index>(i));
         it; ++it) {
      if (!cut[static_cast<std::size_t>(it.col())]) flow += pi * it.value();
    }
  }
  if (!any_in || !any_out) throw std::invalid_argument("conductance: cut must be a nonempty proper subset");
  return flow / mass;
}

// min Phi(S) over S with pi(S) <= 1/2, by exhaustion (at most 24 states).
template <class Element, class Scalar>
Scalar chain_conductance(const FiniteChain<Element, Scalar>& chain) {
  const std::size_t n = chain.size();
  if (n > 24) throw TooLarge("chain conductance needs at most 24 states");
  if (n < 2) throw std::invalid_argument("chain conductance needs at least 2 states");
  std::optional<Scalar> best;
  std::vector<bool> cut(n);
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
    Scalar mass(0);
    for (std::size_t i = 0; i < n; ++i) {
      cut[i] = (mask >> i) & 1U;
      if (cut[i]) mass += chain.stationary(static_cast<Eigen::Index>(i));
    }
    if (mass * 2 > Scalar(1)) continue;
    const Scalar phi = conductance_of_cut(chain, cut);
    if (!best || phi < *best) best = phi;
  }
  return *best;
}

template <class Element, class Scalar>
Eigen::MatrixXd dense_transition(const FiniteChain<Element, Scalar>& chain) {
  const auto n = static_cast<Eigen::Index>(chain.size());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (typename FiniteChain<Element, Scalar>::Matrix::InnerIterator it(chain.matrix, i); it; ++it) {
      p(i, it.col()) = to_double(it.value());
    }
  }
  return p;
}

template <class Element, class Scalar>
Eigen::VectorXd stationary_double(const FiniteChain<Element, Scalar>& chain) {
  Eigen::VectorXd pi(static_cast<Eigen::Index>(chain.size()));
  for (Eigen::Index i = 0; i < pi.size(); ++i) pi(i) = to_double(chain.stationary(i));
  return pi;
}

// Absolute spectral gap 1 - max(|eigenvalue| != 1), from the symmetrized
// kernel D^{1/2} P D^{-1/2} (the chain is reversible).
template <class Element, class Scalar>
double spectral_gap(const FiniteChain<Element, Scalar>& chain) {
  const Eigen::MatrixXd p = dense_transition(chain);
  if (p.rows() < 2) return 1.0;
  const Eigen::VectorXd root = stationary_double(chain).cwiseSqrt();
  Eigen::MatrixXd a = root.asDiagonal() * p * root.cwiseInverse().asDiagonal();
  a = (0.5 * (a + a.transpose())).eval();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();  // ascending
  const double second = std::max(ev(ev.size() - 2), std::abs(ev(0)));
  return 1.0 - second;
}

// ceil(ln(1/(eps * min pi)) / gap): the relaxation-time upper bound on tau(eps).
template <class Element, class Scalar>
std::uint64_t relaxation_mixing_bound(const FiniteChain<Element, Scalar>& chain, double epsilon) {
  const double gap = spectral_gap(chain);
  const double pi_min = stationary_double(chain).minCoeff();
  return static_cast<std::uint64_t>(std::ceil(std::log(1.0 / (epsilon * pi_min)) / gap));
}

// || P^t(start, .) - pi ||_tv for t = 1 .. horizon.
template <class Element, class Scalar>
std::vector<double> tv_curve(const FiniteChain<Element, Scalar>& chain, std::size_t start, std::size_t horizon) {
  if (horizon < 1) throw std::invalid_argument("tv_curve: horizon must be positive");
  if (start >= chain.size()) throw std::invalid_argument("tv_curve: start out of range");
  const Eigen::MatrixXd p = dense_transition(chain);
  const Eigen::RowVectorXd pi = stationary_double(chain).transpose();
  Eigen::RowVectorXd v = Eigen::RowVectorXd::Zero(p.rows());
  v(static_cast<Eigen::Index>(start)) = 1.0;
  std::vector<double> out;
  out.reserve(horizon);
  for (std::size_t t = 0; t < horizon; ++t) {
    v = (v * p).eval();
    out.push_back(0.5 * (v - pi).cwiseAbs().sum());
  }
  return out;
}

// tau(eps) = min t with max_start || P^t(start, .) - pi ||_tv <= eps.
template <class Element, class Scalar>
std::uint64_t mixing_time(const FiniteChain<Element, Scalar>& chain, double epsilon,
                          std::uint64_t max_steps = 1000000) {
  const Eigen::MatrixXd p = dense_transition(chain);
  const Eigen::RowVectorXd pi = stationary_double(chain).transpose();
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(p.rows(), p.cols());
  for (std::uint64_t t = 1; t <= max_steps; ++t) {
    power = (power * p).eval();
    double worst = 0;
    for (Eigen::Index i = 0; i < power.rows(); ++i) {
      worst = std::max(worst, 0.5 * (power.row(i) - pi).cwiseAbs().sum());
    }
    if (worst <= epsilon) return t;
  }
  throw TooLarge("mixing time beyond the step cap");
}

// ---- verification of the balanced-bias inequalities ------------------------

struct Section2Check {
  long k = 0;
  long t_star = -1;
  Rational lambda;  // realized bias at t_star
  Rational tail_at_most;
  Rational tail_above;
  bool tails_ok = false;
  Rational conductance;  // Phi(Omega_{<=k})
  Rational rank_mass;    // pi(Omega_k)
  bool conductance_ok = false;
  double gap = 0;
  std::uint64_t tau_spectral = 0;  // relaxation bound at eps = 1/e
  bool mass_ok_spectral = false;
  std::uint64_t tau_tv = 0;  // exact tau(1/e)
  bool mass_ok_tv = false;

  bool passed() const { return tails_ok && conductance_ok && mass_ok_spectral && mass_ok_tv; }
};

struct Section2Report {
  Rational c;
  long rank_bound = 0;
  std::size_t states = 0;
  std::vector<BigCount> rank_profile;
  bool hypothesis_ok = false;  // 1 <= a_i <= c^i
  std::string hypothesis_detail;
  bool ratio_ok = false;      // Pr_{t+1}[s] / Pr_t[s] >= 1/c for all s, t
  bool existence_ok = false;  // every k has a t with both tails >= 1/(c+1)
  std::vector<Section2Check> checks;

  bool passed() const {
    if (!hypothesis_ok || !ratio_ok || !existence_ok) return false;
    for (const auto& c : checks) {
      if (!c.passed()) return false;
    }
    return true;
  }
};

// Growth hypothesis 1 <= a_i <= c^i.
inline std::optional<std::string> growth_violation(const std::vector<BigCount>& profile, const Rational& c) {
  Rational bound(1);
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (profile[i] < 1) return "rank " + std::to_string(i) + " is empty";
    if (Rational(profile[i]) > bound) return "rank " + std::to_string(i) + " has more than c^" + std::to_string(i);
    bound *= c;
  }
  return std::nullopt;
}

// Minimum over ranks r and t = 0 .. R^2 - 1 of Pr_{t+1}[s] / Pr_t[s] for an
// element s of rank r, which is q^r Z_t / Z_{t+1} with q = lambda_{t+1} / lambda_t.
inline Real min_step_ratio(const std::vector<BigCount>& profile, const BiasSchedule& schedule) {
  Real worst = std::numeric_limits<double>::infinity();
  for (long t = 0; t < schedule.max_index(); ++t) {
    const auto now = schedule.at(t);
    const auto next = schedule.at(t + 1);
    const Real base = evaluate_profile(profile, now.lambda) / evaluate_profile(profile, next.lambda);
    const Real q = next.lambda / now.lambda;
    Real power = 1;
    for (std::size_t r = 0; r < profile.size(); ++r) {
      worst = std::min(worst, power * base);
      power *= q;
    }
  }
  return worst;
}

// Exact Boltzmann tails at a rational bias.
inline std::pair<Rational, Rational> exact_tails(const std::vector<BigCount>& profile, const Rational& lambda, long k) {
  Rational low(0);
  Rational high(0);
  Rational power(1);
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const Rational term = Rational(profile[i]) * power;
    if (static_cast<long>(i) <= k) {
      low += term;
    } else {
      high += term;
    }
    power *= lambda;
  }
  const Rational z = low + high;
  return {low / z, high / z};
}

// Checks, for each k in [1, R-1] (or just `only_k`), at the balanced index
// t* from the exact rank profile: (i) both tails >= 1/(c+1); (ii)
// Phi(Omega_{<=k}) <= (c+1) pi(Omega_k); (iii) pi(Omega_k) >=
// 1/(2(c+1)(tau+1)) with tau both the spectral bound and the exact tau(1/e).
// All of this runs at the realized rational bias of t*.
template <GradedPoset M>
Section2Report verify_section2(const M& model, const Rational& c, std::optional<long> only_k = std::nullopt,
                               std::size_t cap = 2000) {
  Section2Report report;
  report.c = c;
  const auto en = enumerate(model, cap);
  report.states = en.elements.size();
  report.rank_profile = en.rank_profile;
  report.rank_bound = static_cast<long>(en.rank_profile.size()) - 1;
  const long rank_bound = report.rank_bound;

  if (auto why = growth_violation(en.rank_profile, c)) {
    report.hypothesis_detail = *why;
    return report;
  }
  if (c < 2 || rank_bound < 1) {
    report.hypothesis_detail = c < 2 ? "c must be at least 2" : "rank bound must be positive";
    return report;
  }
  report.hypothesis_ok = true;

  const BiasSchedule schedule(to_real(c), rank_bound);
  const Real c_real = to_real(c);
  report.ratio_ok = min_step_ratio(en.rank_profile, schedule) >= 1 / c_real;

  const Real threshold = 1 / (c_real + 1);
  report.existence_ok = true;
  for (long k = 1; k <= rank_bound - 1; ++k) {
    bool found = false;
    for (long t = 0; t <= schedule.max_index() && !found; ++t) {
      const Tails tails = rank_tails(en.rank_profile, schedule.at(t).lambda, k);
      found = tails.at_most >= threshold && tails.above >= threshold;
    }
    report.existence_ok = report.existence_ok && found;
  }

  const Rational c_plus_1 = c + 1;
  for (long k = 1; k <= rank_bound - 1; ++k) {
    if (only_k && *only_k != k) continue;
    Section2Check check;
    check.k = k;
    const auto t_star = balanced_index_exact(en.rank_profile, k, schedule);
    if (!t_star) {
      report.checks.push_back(check);
      continue;
    }
    check.t_star = *t_star;
    check.lambda = schedule.bias(*t_star).lambda();

    const auto [low, high] = exact_tails(en.rank_profile, check.lambda, k);
    check.tail_at_most = low;
    check.tail_above = high;
    check.tails_ok = low * c_plus_1 >= 1 && high * c_plus_1 >= 1;

    const auto exact = build_chain<Rational>(model, check.lambda, cap);
    check.conductance = conductance_of_cut(exact, rank_cut(exact, k));
    check.rank_mass = rank_mass(exact, k);
    check.conductance_ok = check.conductance <= c_plus_1 * check.rank_mass;

    const auto approx = build_chain<double>(model, check.lambda.convert_to<double>(), cap);
    check.gap = spectral_gap(approx);
    check.tau_spectral = relaxation_mixing_bound(approx, std::exp(-1.0));
    check.tau_tv = mixing_time(approx, std::exp(-1.0));
    auto mass_ok = [&](std::uint64_t tau) {
      return check.rank_mass * 2 * c_plus_1 * Rational(BigCount(tau) + 1) >= 1;
    };
    check.mass_ok_spectral = mass_ok(check.tau_spectral);
    check.mass_ok_tv = mass_ok(check.tau_tv);
    report.checks.push_back(check);
  }
  return report;
}

}  // namespace rankwalk
