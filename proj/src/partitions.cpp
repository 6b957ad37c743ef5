#include "rankwalk/partitions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace rankwalk {

// ---- YoungDiagram ---------------------------------------------------------

YoungDiagram YoungDiagram::from_heights(const std::vector<long>& heights) {
  YoungDiagram d;
  for (std::size_t i = 0; i < heights.size(); ++i) {
    const long h = heights[i];
    if (h < 0) throw std::invalid_argument("diagram: negative height");
    if (i > 0 && h > heights[i - 1]) throw std::invalid_argument("diagram: heights must be nonincreasing");
    if (h == 0) continue;
    if (!d.runs_.empty() && d.runs_.back().height == h) {
      ++d.runs_.back().multiplicity;
    } else {
      d.runs_.push_back({h, 1});
    }
    d.size_ += h;
  }
  return d;
}

YoungDiagram YoungDiagram::from_runs(std::vector<Run> runs) {
  YoungDiagram d;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (runs[i].height <= 0 || runs[i].multiplicity <= 0) throw std::invalid_argument("diagram: empty run");
    if (i > 0 && runs[i].height >= runs[i - 1].height) {
      throw std::invalid_argument("diagram: run heights must strictly decrease");
    }
    d.size_ += runs[i].height * runs[i].multiplicity;
  }
  d.runs_ = std::move(runs);
  return d;
}

long YoungDiagram::width() const {
  long w = 0;
  for (const auto& r : runs_) w += r.multiplicity;
  return w;
}

long YoungDiagram::height(long x) const {
  if (x < 1) return 0;
  for (const auto& r : runs_) {
    if (x <= r.multiplicity) return r.height;
    x -= r.multiplicity;
  }
  return 0;
}

std::vector<long> YoungDiagram::heights() const {
  std::vector<long> out;
  for (const auto& r : runs_) out.insert(out.end(), static_cast<std::size_t>(r.multiplicity), r.height);
  return out;
}

std::vector<long> YoungDiagram::row_widths() const {
  if (runs_.empty()) return {};
  std::vector<long> out(static_cast<std::size_t>(runs_.front().height));
  long cum = 0;
  for (std::size_t i = 0; i < runs_.size(); ++i) {
    cum += runs_[i].multiplicity;
    const long below = i + 1 < runs_.size() ? runs_[i + 1].height : 0;
    for (long y = below + 1; y <= runs_[i].height; ++y) out[static_cast<std::size_t>(y - 1)] = cum;
  }
  return out;
}

bool YoungDiagram::fits(const Region& region) const {
  long x = 1;
  for (const auto& r : runs_) {
    const long last = x + r.multiplicity - 1;
    if (r.height > region.ceiling(last) || r.height < region.floor(x)) return false;
    x = last + 1;
  }
  return region.floor(x) == 0;
}

std::vector<Move> moves(const YoungDiagram& diagram, const Region& region) {
  std::vector<Move> out;
  const long size = diagram.size();
  long x = 1;
  for (const auto& r : diagram.runs()) {
    const long first = x;
    const long last = x + r.multiplicity - 1;
    // The run to the left is strictly taller, so its first column can grow;
    // the run to the right is strictly shorter, so its last column can shrink.
    if (r.height + 1 <= region.ceiling(first)) out.push_back({Move::Kind::add, first, size + 1});
    if (r.height > region.floor(last)) out.push_back({Move::Kind::remove, last, size - 1});
    x = last + 1;
  }
  if (region.ceiling(x) >= 1) out.push_back({Move::Kind::add, x, size + 1});
  return out;
}

Region hyperbolic_region(long n) {
  if (n < 1) throw std::invalid_argument("hyperbolic region: n must be positive");
  std::vector<long> ceiling(static_cast<std::size_t>(2 * n));
  for (long x = 1; x <= 2 * n; ++x) ceiling[static_cast<std::size_t>(x - 1)] = 2 * n / x;
  return Region(std::move(ceiling));
}

// ---- RegionPoset ----------------------------------------------------------

RegionPoset::RegionPoset(Region region)
    : region_(std::move(region)), s_(region_.column_slots()), t_(region_.row_slots()) {
  slots_ = static_cast<std::size_t>(2 * (s_ + t_));
  const long w = region_.width();
  ceil_.assign(static_cast<std::size_t>(w + 2), 0);
  floor_.assign(static_cast<std::size_t>(w + 2), 0);
  for (long x = 1; x <= w; ++x) {
    ceil_[static_cast<std::size_t>(x)] = region_.ceiling(x);
    floor_[static_cast<std::size_t>(x)] = region_.floor(x);
  }
}

RegionPoset::Element RegionPoset::from_heights_unchecked(const std::vector<long>& heights) const {
  Element e;
  e.cols.assign(static_cast<std::size_t>(s_), 0);
  e.rows.assign(static_cast<std::size_t>(t_), 0);
  for (std::size_t i = 0; i < heights.size(); ++i) {
    const long h = heights[i];
    e.size += h;
    if (static_cast<long>(i) < s_) e.cols[i] = h;
    for (long y = 1; y <= std::min(h, t_); ++y) ++e.rows[static_cast<std::size_t>(y - 1)];
  }
  return e;
}

long RegionPoset::count_rows_at_least(const Element& e, long x) const {
  auto it = std::partition_point(e.rows.begin(), e.rows.end(), [x](long w) { return w >= x; });
  return static_cast<long>(it - e.rows.begin());
}

bool RegionPoset::leq(const Element& a, const Element& b) const {
  for (std::size_t i = 0; i < a.cols.size(); ++i) {
    if (a.cols[i] > b.cols[i]) return false;
  }
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    if (a.rows[i] > b.rows[i]) return false;
  }
  return true;
}

RegionPoset::Element RegionPoset::from_diagram(const YoungDiagram& d) const {
  if (!d.fits(region_)) throw std::invalid_argument("diagram does not fit the region");
  Element e;
  e.size = d.size();
  e.cols.resize(static_cast<std::size_t>(s_));
  for (long x = 1; x <= s_; ++x) e.cols[static_cast<std::size_t>(x - 1)] = d.height(x);
  const auto widths = d.row_widths();
  e.rows.assign(static_cast<std::size_t>(t_), 0);
  for (long y = 1; y <= t_ && y <= static_cast<long>(widths.size()); ++y) {
    e.rows[static_cast<std::size_t>(y - 1)] = widths[static_cast<std::size_t>(y - 1)];
  }
  return e;
}

namespace {

void push_run(std::vector<YoungDiagram::Run>& runs, long height, long multiplicity) {
  if (height <= 0 || multiplicity <= 0) return;
  if (!runs.empty() && runs.back().height == height) {
    runs.back().multiplicity += multiplicity;
  } else {
    runs.push_back({height, multiplicity});
  }
}

}  // namespace

YoungDiagram RegionPoset::to_diagram(const Element& e) const {
  std::vector<YoungDiagram::Run> runs;
  for (long h : e.cols) push_run(runs, h, 1);
  // Columns past s have height y exactly when rows[y] >= x > rows[y+1].
  for (long y = t_; y >= 1; --y) {
    const long hi = e.rows[static_cast<std::size_t>(y - 1)];
    const long lo = std::max(s_, y < t_ ? e.rows[static_cast<std::size_t>(y)] : 0L);
    push_run(runs, y, hi - lo);
  }
  return YoungDiagram::from_runs(std::move(runs));
}

std::size_t RegionPoset::run_count(const Element& e) const {
  std::size_t count = 0;
  long last = -1;
  auto see = [&](long h, long m) {
    if (h <= 0 || m <= 0) return;
    if (h != last) ++count;
    last = h;
  };
  for (long h : e.cols) see(h, 1);
  for (long y = t_; y >= 1; --y) {
    const long hi = e.rows[static_cast<std::size_t>(y - 1)];
    const long lo = std::max(s_, y < t_ ? e.rows[static_cast<std::size_t>(y)] : 0L);
    see(y, hi - lo);
  }
  return count;
}

RegionPoset hyperbolic_poset(long n) {
  const long s = static_cast<long>(std::sqrt(static_cast<double>(2 * n)));
  long root = s;
  while (root * root > 2 * n) --root;
  while ((root + 1) * (root + 1) <= 2 * n) ++root;
  return RegionPoset(hyperbolic_region(n).with_split(root, root));
}

// ---- lambda_n and friends ---------------------------------------------------

Rational lambda_n(long n, const std::vector<BigCount>& p) {
  if (n < 1) throw std::invalid_argument("lambda_n: n must be positive");
  if (static_cast<std::size_t>(n) >= p.size()) throw std::invalid_argument("lambda_n: table too short");
  return Rational(p[static_cast<std::size_t>(n - 1)], p[static_cast<std::size_t>(n)]);
}

Rational lambda_n(long n) {
  if (n < 1) throw std::invalid_argument("lambda_n: n must be positive");
  return lambda_n(n, partition_numbers(static_cast<std::size_t>(n)));
}

Rational spectral_bias(const Rational& lambda) { return (1 - lambda) / (1 + lambda); }

Rational spectral_bias(long n) { return spectral_bias(lambda_n(n)); }

std::optional<std::vector<long>> salvage(const std::vector<long>& rho, long n) {
  long total = 0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (rho[i] <= 0 || (i > 0 && rho[i] > rho[i - 1])) {
      throw std::invalid_argument("salvage: parts must be positive and nonincreasing");
    }
    total += rho[i];
  }
  const long k = total - n;
  if (k < 0) return std::nullopt;
  if (rho.empty()) return std::vector<long>{};
  const long second = rho.size() > 1 ? rho[1] : 0;
  if (rho[0] - k < second) return std::nullopt;
  std::vector<long> out = rho;
  out[0] -= k;
  if (out[0] == 0) out.erase(out.begin());
  return out;
}

Real mixing_bound_real(long n, const Real& epsilon) {
  if (n < 30) throw std::invalid_argument("mixing_bound: requires n >= 30");
  if (!(epsilon > 0 && epsilon < 1)) throw std::invalid_argument("mixing_bound: epsilon must lie in (0, 1)");
  const Real beta = to_real(spectral_bias(n));
  const Real two_n(2 * n);
  const Real bracket = log(1 / epsilon) + log(two_n * (log(two_n) + 1)) + 3 * sqrt(Real(n));
  return ceil(8 * sqrt(two_n) / (beta * beta) * bracket);
}

std::uint64_t mixing_bound(long n, double epsilon) {
  const Real bound = mixing_bound_real(n, Real(epsilon));
  if (bound > Real(std::numeric_limits<std::uint64_t>::max())) throw TooLarge("mixing bound exceeds 64 bits");
  return static_cast<std::uint64_t>(bound);
}

ExclusionParameters exclusion_parameters(double lambda) {
  if (!(lambda > 0)) throw std::invalid_argument("exclusion parameters: lambda must be positive");
  ExclusionParameters out;
  if (lambda == 1.0) {
    out.unbiased = true;
    return out;
  }
  const double small = lambda < 1 ? lambda : 1 / lambda;
  out.p = 1 / (1 + small);
  out.bias = (1 - small) / (1 + small);
  out.alpha = std::sqrt(1 / small);
  return out;
}

// ---- samplers -------------------------------------------------------------

namespace {

// Uniform integer in [0, bound).
BigCount uniform_below(const BigCount& bound, Rng& rng) {
  if (bound <= 0) throw std::invalid_argument("uniform_below: empty range");
  const unsigned bits = mp::msb(bound) + 1;
  for (;;) {
    BigCount r = 0;
    for (unsigned got = 0; got < bits; got += 64) r = (r << 64) | BigCount(rng());
    r >>= static_cast<unsigned>((bits + 63) / 64 * 64 - bits);
    if (r < bound) return r;
  }
}

}  // namespace

std::vector<long> sample_partition_direct(long n, const BoundedPartitionTable& table, Rng& rng) {
  if (n < 0 || n > table.limit()) throw std::invalid_argument("direct sampler: n outside the table");
  std::vector<long> parts;
  long m = n;
  long cap = n;
  while (m > 0) {
    BigCount r = uniform_below(table.at(m, cap), rng);
    long part = std::min(cap, m);
    for (; part >= 1; --part) {
      const BigCount& c = table.at(m - part, part);  // largest part exactly `part`
      if (r < c) break;
      r -= c;
    }
    parts.push_back(part);
    m -= part;
    cap = part;
  }
  return parts;
}

PartitionSampler::PartitionSampler(long n, PartitionSamplerOptions options, std::uint64_t seed)
    : n_(n), options_(std::move(options)), seed_(seed) {
  if (n < 0) throw std::invalid_argument("partition sampler: n must be nonnegative");
  if (n < options_.fallback_below || n == 0) {
    fallback_.emplace(n);
    return;
  }
  poset_.emplace(hyperbolic_poset(n));
  bias_ = Bias::from_rational(lambda_n(n));
  retry_cap_ = options_.retry_cap;
  if (retry_cap_ == 0) {
    retry_cap_ = 10000 * static_cast<std::uint64_t>(std::ceil(160.0 * std::pow(static_cast<double>(n), 0.25)));
  }
  if (!options_.exact) {
    steps_ = options_.steps;
    if (steps_ == 0) {
      if (n < 30) throw std::invalid_argument("partition sampler: give a step budget when n < 30");
      steps_ = mixing_bound(n, std::exp(-1.0));
    }
    chain_.emplace(ChainState<RegionPoset::Element>{poset_->minimum(), *bias_, Rng(seed)});
  }
}

std::vector<long> PartitionSampler::draw() {
  const std::uint64_t index = draws_++;
  if (fallback_) {
    Rng rng(split_seed(seed_, index));
    return sample_partition_direct(n_, *fallback_, rng);
  }
  for (std::uint64_t attempt = 0; attempt < retry_cap_; ++attempt) {
    const std::uint64_t serial = attempts_++;
    RegionPoset::Element sigma;
    if (options_.exact) {
      sigma = cftp_sample(*poset_, *bias_, split_seed(seed_, serial), options_.cftp).element;
    } else {
      for (std::uint64_t i = 0; i < steps_; ++i) metropolis_step(*chain_, *poset_);
      sigma = chain_->element;
    }
    const long size = sigma.size;
    if (size < n_ || size > 2 * n_) continue;
    auto parts = salvage(poset_->to_diagram(sigma).heights(), n_);
    if (parts) {
      ++accepted_;
      return std::move(*parts);
    }
  }
  throw RetryBudgetExhausted();
}

std::vector<long> sample_partition(long n, std::uint64_t seed, bool exact, PartitionSamplerOptions options) {
  options.exact = exact;
  PartitionSampler sampler(n, std::move(options), seed);
  return sampler.draw();
}

YoungDiagram sample_restricted(const Region& region, long k, std::uint64_t seed, const RankSamplingOptions& options) {
  if (k < 0 || k > region.area()) throw std::invalid_argument("sample_restricted: k out of range");
  const RegionPoset poset(region);
  const FixedRankSampler<RegionPoset> sampler(poset, k, options, split_seed(seed, 0));
  return poset.to_diagram(sampler.draw(split_seed(seed, 1)).element);
}

ApproxCount approx_count(const Region& region, long n, std::size_t samples_per_level, std::uint64_t seed,
                         const RankSamplingOptions& options) {
  if (n < 0 || n > region.area()) throw std::invalid_argument("approx_count: n out of range");
  if (samples_per_level == 0) throw std::invalid_argument("approx_count: need at least one sample per level");
  ApproxCount out;
  Region current = region;
  long target = n;
  for (std::uint64_t level = 0; target != 0 && target != current.area(); ++level) {
    const RegionPoset poset(current);
    const FixedRankSampler<RegionPoset> sampler(poset, target, options, split_seed(seed, 2 * level));
    const std::uint64_t draw_seed = split_seed(seed, 2 * level + 1);

    std::map<long, std::size_t> histogram;
    double sum = 0;
    for (std::size_t i = 0; i < samples_per_level; ++i) {
      const long h = poset.first_column(sampler.draw(split_seed(draw_seed, i)).element);
      ++histogram[h];
      sum += static_cast<double>(h);
    }
    long m = std::lround(sum / static_cast<double>(samples_per_level));
    if (!histogram.contains(m)) {
      // Mean falls between observed heights; use the most frequent one.
      m = std::max_element(histogram.begin(), histogram.end(),
                           [](const auto& a, const auto& b) { return a.second < b.second; })
              ->first;
    }
    const double ratio = static_cast<double>(histogram[m]) / static_cast<double>(samples_per_level);
    out.levels.push_back({current.width(), target, m, ratio});
    out.estimate /= ratio;

    std::vector<long> ceiling;
    std::vector<long> floor;
    for (long x = 2; x <= current.width(); ++x) {
      ceiling.push_back(std::min(current.ceiling(x), m));
      floor.push_back(current.floor(x));
    }
    target -= m - current.floor(1);
    current = Region(std::move(ceiling), std::move(floor));
  }
  return out;
}

}  // namespace rankwalk
