// rankwalk: command-line front end.
//
//   rankwalk sample partitions --n 5 --samples 3 --seed 1
//   rankwalk count partitions --n 8
//   rankwalk verify section2 --family partitions --box 3x3
//
// Results go to stdout as JSON lines; diagnostics to stderr. Exit status is
// 0 on success, 1 on a usage error, 2 when a run gives up (retry cap,
// coalescence budget, hypothesis violation) or a verification fails.

#include "rankwalk/counts.hpp"
#include "rankwalk/diagnostics.hpp"
#include "rankwalk/errors.hpp"
#include "rankwalk/io.hpp"
#include "rankwalk/lozenge.hpp"
#include "rankwalk/partitions.hpp"
#include "rankwalk/permutations.hpp"
#include "rankwalk/render.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace rankwalk;
using nlohmann::json;

namespace {

struct Config {
  std::string family;
  std::string check;
  std::optional<long> n;
  std::optional<long> k;
  std::optional<double> percent;
  std::string region_file;
  std::string box;
  std::optional<std::uint64_t> seed;
  std::size_t samples = 1;
  bool exact = false;
  unsigned parallel = 1;
  std::string format;
  std::string input;
  std::string output;

  // Budgets; 0 or unset means the module default.
  std::optional<std::string> c;
  std::uint64_t retry_cap = 0;
  std::uint64_t steps = 0;
  std::uint64_t cftp_max_steps = 0;
  std::size_t probe_samples = 0;
  double confidence = 0.99;
  long fallback_below = 30;
  std::size_t level_samples = 1000;
  std::size_t state_cap = 2000;
};

class Usage : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::vector<long> parse_box(const std::string& text, std::size_t dims) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, 'x')) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != part.size() || part.empty() || v < 1) throw Usage("--box: expected positive sides like 3x3 or 2x2x2");
    out.push_back(v);
  }
  if (out.size() != dims) throw Usage("--box: expected " + std::to_string(dims) + " sides");
  return out;
}

std::uint64_t resolve_seed(const Config& cfg) {
  if (cfg.seed) return *cfg.seed;
  std::random_device rd;
  const std::uint64_t seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  std::cerr << "seed: " << seed << '\n';
  return seed;
}

long require_n(const Config& cfg) {
  if (!cfg.n) throw Usage(cfg.family + ": --n is required");
  if (*cfg.n < 0) throw Usage("--n must be nonnegative");
  return *cfg.n;
}

long require_k(const Config& cfg) {
  if (!cfg.k) throw Usage(cfg.family + ": --rank/--k is required");
  return *cfg.k;
}

bool has_region(const Config& cfg) { return !cfg.region_file.empty() || !cfg.box.empty(); }

Region resolve_region(const Config& cfg) {
  if (!cfg.region_file.empty() && !cfg.box.empty()) throw Usage("give --region or --box, not both");
  if (!cfg.region_file.empty()) return read_region_file(cfg.region_file);
  if (!cfg.box.empty()) {
    const auto sides = parse_box(cfg.box, 2);
    return Region::box(sides[0], sides[1]);
  }
  throw Usage(cfg.family + ": --region or --box is required");
}

std::vector<int> lozenge_box(const Config& cfg) {
  if (cfg.box.empty()) throw Usage("lozenge: --box AxBxC is required");
  const auto s = parse_box(cfg.box, 3);
  return {static_cast<int>(s[0]), static_cast<int>(s[1]), static_cast<int>(s[2])};
}

RankSamplingOptions rank_options(const Config& cfg) {
  RankSamplingOptions o;
  o.exact = cfg.exact;
  if (cfg.c) o.c = std::stod(*cfg.c);
  o.search.confidence = cfg.confidence;
  o.search.samples_per_probe = cfg.probe_samples;
  o.mixing_steps = cfg.steps;
  if (cfg.retry_cap != 0) o.retry_cap = cfg.retry_cap;
  if (cfg.cftp_max_steps != 0) o.cftp.max_total_steps = cfg.cftp_max_steps;
  return o;
}

PartitionSamplerOptions partition_options(const Config& cfg) {
  PartitionSamplerOptions o;
  o.exact = cfg.exact;
  o.fallback_below = cfg.fallback_below;
  o.retry_cap = cfg.retry_cap;
  o.steps = cfg.steps;
  if (cfg.cftp_max_steps != 0) o.cftp.max_total_steps = cfg.cftp_max_steps;
  return o;
}

std::ostream& out_stream(const Config& cfg, std::ofstream& file) {
  if (cfg.output.empty()) return std::cout;
  file.open(cfg.output);
  if (!file) throw Usage("cannot open " + cfg.output);
  return file;
}

// Runs make_line(i) for i in [0, samples), serially in order or on
// `parallel` threads in completion order.
void emit_samples(const Config& cfg, std::ostream& out, const std::function<json(std::size_t)>& make_line) {
  if (cfg.parallel <= 1) {
    for (std::size_t i = 0; i < cfg.samples; ++i) out << make_line(i).dump() << '\n' << std::flush;
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex lock;
  std::exception_ptr failure;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < cfg.parallel; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next++;
        if (i >= cfg.samples) return;
        try {
          const std::string line = make_line(i).dump();
          std::lock_guard g(lock);
          out << line << '\n' << std::flush;
        } catch (...) {
          std::lock_guard g(lock);
          if (!failure) failure = std::current_exception();
          next = cfg.samples;
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

json base_line(const Config& cfg, std::size_t i, std::uint64_t seed) {
  json j;
  j["index"] = i;
  j["seed"] = seed;
  j["family"] = cfg.family;
  return j;
}

// Draws of one rank from a monotone lattice: the balanced search runs once,
// draws use split seeds.
template <MonotoneLattice L, class Encode>
void sample_rank(const Config& cfg, const L& lattice, long k, std::uint64_t seed, std::ostream& out, Encode encode,
                 const std::function<void(json&)>& decorate) {
  if (k < 0 || k > lattice.rank_bound()) {
    throw Usage("--k must lie in [0, " + std::to_string(lattice.rank_bound()) + "]");
  }
  const FixedRankSampler<L> sampler(lattice, k, rank_options(cfg), split_seed(seed, ~std::uint64_t{0}));
  if (const auto& b = sampler.balanced()) {
    std::cerr << "balanced index t = " << b->t << " (lambda = " << std::exp(b->bias.log_lambda())
              << ", estimated upper tail " << b->tail_estimate << ", " << b->probes << " probes x "
              << b->samples_per_probe << " samples)\n";
  }
  emit_samples(cfg, out, [&](std::size_t i) {
    const auto draw = sampler.draw(split_seed(seed, i));
    json j = base_line(cfg, i, seed);
    decorate(j);
    j["k"] = k;
    j["attempts"] = draw.attempts;
    j["sample"] = encode(draw.element);
    return j;
  });
}

int run_sample(Config cfg) {
  if (cfg.samples == 0) throw Usage("--samples must be positive");
  if (!cfg.format.empty() && cfg.format != "jsonl") throw Usage("sample: --format must be jsonl");
  std::ofstream file;
  std::ostream& out = out_stream(cfg, file);

  if (cfg.family == "partitions" && !has_region(cfg)) {
    const long n = require_n(cfg);
    const std::uint64_t seed = resolve_seed(cfg);
    const auto opts = partition_options(cfg);
    emit_samples(cfg, out, [&](std::size_t i) {
      PartitionSampler sampler(n, opts, split_seed(seed, i));
      json j = base_line(cfg, i, seed);
      j["n"] = n;
      j["sample"] = sampler.draw();
      if (!sampler.uses_fallback()) j["attempts"] = sampler.attempts();
      return j;
    });
    return 0;
  }
  if (cfg.family == "partitions" || cfg.family == "region") {
    const Region region = resolve_region(cfg);
    const long k = require_k(cfg);
    const std::uint64_t seed = resolve_seed(cfg);
    const RegionPoset poset(region);
    const json shape = json::parse(format_region(region));
    sample_rank(
        cfg, poset, k, seed, out, [&](const RegionPoset::Element& e) { return poset.to_diagram(e).heights(); },
        [&](json& j) { j["region"] = shape; });
    return 0;
  }
  if (cfg.family == "permutations") {
    const long n = require_n(cfg);
    if (n < 1) throw Usage("permutations: --n must be positive");
    const long k = require_k(cfg);
    const std::uint64_t seed = resolve_seed(cfg);
    const PermutationPoset poset(static_cast<int>(n));
    sample_rank(
        cfg, poset, k, seed, out, [](const Permutation& p) { return p.values(); }, [&](json& j) { j["n"] = n; });
    return 0;
  }
  if (cfg.family == "lozenge") {
    const auto box = lozenge_box(cfg);
    const long volume = static_cast<long>(box[0]) * box[1] * box[2];
    long k = 0;
    if (cfg.percent) {
      if (cfg.k) throw Usage("lozenge: give --k or --percent, not both");
      if (*cfg.percent < 0 || *cfg.percent > 100) throw Usage("--percent must lie in [0, 100]");
      k = std::lround(*cfg.percent / 100.0 * static_cast<double>(volume));
    } else {
      k = require_k(cfg);
    }
    const std::uint64_t seed = resolve_seed(cfg);
    const PlanePartitionPoset poset(box[0], box[1], box[2]);
    sample_rank(
        cfg, poset, k, seed, out, [](const PlanePartition& p) { return p.matrix(); },
        [&](json& j) { j["box"] = box; });
    return 0;
  }
  throw Usage("unknown family " + cfg.family);
}

std::string profile_json(const std::vector<BigCount>& profile) {
  std::string s = "[";
  for (std::size_t i = 0; i < profile.size(); ++i) s += (i ? "," : "") + profile[i].str();
  return s + "]";
}

// A single count, or the whole rank profile when no rank is given.
int print_count(const std::vector<BigCount>& profile, const std::optional<long>& k) {
  if (!k) {
    std::cout << profile_json(profile) << '\n';
    return 0;
  }
  const bool inside = *k >= 0 && *k < static_cast<long>(profile.size());
  std::cout << (inside ? profile[static_cast<std::size_t>(*k)].str() : "0") << '\n';
  return 0;
}

int run_count(Config cfg) {
  if (cfg.family == "partitions" && !has_region(cfg)) {
    const long n = require_n(cfg);
    std::cout << partition_numbers(static_cast<std::size_t>(n)).back().str() << '\n';
    return 0;
  }
  if (cfg.family == "partitions" || cfg.family == "region") {
    return print_count(restricted_profile(resolve_region(cfg)), cfg.k);
  }
  if (cfg.family == "permutations") {
    const long n = require_n(cfg);
    if (n < 1) throw Usage("permutations: --n must be positive");
    return print_count(inversion_numbers(static_cast<int>(n)), cfg.k);
  }
  if (cfg.family == "lozenge") {
    const auto b = lozenge_box(cfg);
    return print_count(plane_partition_profile(b[0], b[1], b[2]), cfg.k);
  }
  throw Usage("unknown family " + cfg.family);
}

int run_estimate(Config cfg) {
  Region region;
  long k = 0;
  if (cfg.family == "partitions" && !has_region(cfg)) {
    // Every partition of n lies under y <= n/x.
    k = require_n(cfg);
    if (k < 1) throw Usage("estimate: --n must be positive");
    std::vector<long> ceiling;
    for (long x = 1; x <= k; ++x) ceiling.push_back(k / x);
    region = Region(std::move(ceiling));
  } else if (cfg.family == "partitions" || cfg.family == "region") {
    region = resolve_region(cfg);
    k = require_k(cfg);
  } else {
    throw Usage("estimate supports the partitions and region families");
  }
  if (k < 0 || k > region.area()) throw Usage("rank out of range for the region");
  const std::uint64_t seed = resolve_seed(cfg);
  const auto est = approx_count(region, k, cfg.level_samples, seed, rank_options(cfg));
  json j;
  j["seed"] = seed;
  j["family"] = cfg.family;
  j["k"] = k;
  j["estimate"] = est.estimate;
  j["levels"] = json::array();
  for (const auto& l : est.levels) {
    j["levels"].push_back({{"width", l.width}, {"target", l.target}, {"first_column", l.first_column},
                           {"ratio", l.ratio}});
  }
  std::cout << j.dump() << '\n';
  return 0;
}

std::string rational_text(const Rational& q) { return q.str(); }

template <GradedPoset M>
int report_section2(const Config& cfg, const M& model) {
  Rational c;
  if (cfg.c) {
    try {
      c = Rational(*cfg.c);
    } catch (const std::exception&) {
      throw Usage("--c must be a rational like 6 or 5/2");
    }
  } else {
    c = Rational(static_cast<long>(std::max<std::size_t>(model.max_degree(), 2)));
  }
  const auto r = verify_section2(model, c, cfg.k, cfg.state_cap);
  json j;
  j["family"] = cfg.family;
  j["c"] = rational_text(r.c);
  j["rank_bound"] = r.rank_bound;
  j["states"] = r.states;
  j["rank_profile"] = json::parse(profile_json(r.rank_profile));
  j["hypothesis_ok"] = r.hypothesis_ok;
  if (!r.hypothesis_detail.empty()) j["hypothesis_detail"] = r.hypothesis_detail;
  j["ratio_ok"] = r.ratio_ok;
  j["existence_ok"] = r.existence_ok;
  j["checks"] = json::array();
  for (const auto& ck : r.checks) {
    j["checks"].push_back({{"k", ck.k},
                           {"t_star", ck.t_star},
                           {"lambda", ck.lambda.template convert_to<double>()},
                           {"tail_at_most", ck.tail_at_most.template convert_to<double>()},
                           {"tail_above", ck.tail_above.template convert_to<double>()},
                           {"tails_ok", ck.tails_ok},
                           {"conductance", ck.conductance.template convert_to<double>()},
                           {"rank_mass", ck.rank_mass.template convert_to<double>()},
                           {"conductance_ok", ck.conductance_ok},
                           {"spectral_gap", ck.gap},
                           {"tau_spectral", ck.tau_spectral},
                           {"mass_ok_spectral", ck.mass_ok_spectral},
                           {"tau_tv", ck.tau_tv},
                           {"mass_ok_tv", ck.mass_ok_tv},
                           {"passed", ck.passed()}});
  }
  j["passed"] = r.passed();
  std::cout << j.dump(2) << '\n';
  if (!r.hypothesis_ok) {
    std::cerr << "hypothesis violation: " << r.hypothesis_detail << '\n';
    return 2;
  }
  if (!r.passed()) {
    std::cerr << "verification failed\n";
    return 2;
  }
  return 0;
}

int run_verify(Config cfg) {
  if (cfg.check != "section2") throw Usage("verify: unknown check '" + cfg.check + "' (expected section2)");
  if (!cfg.format.empty() && cfg.format != "json") throw Usage("verify: --format must be json");
  if (cfg.family.empty()) throw Usage("verify: --family is required");
  if (cfg.family == "partitions" || cfg.family == "region") {
    if (!has_region(cfg) && cfg.n) return report_section2(cfg, RegionPoset(hyperbolic_region(*cfg.n)));
    return report_section2(cfg, RegionPoset(resolve_region(cfg)));
  }
  if (cfg.family == "permutations") {
    const long n = require_n(cfg);
    if (n < 2) throw Usage("permutations: --n must be at least 2");
    return report_section2(cfg, PermutationPoset(static_cast<int>(n)));
  }
  if (cfg.family == "lozenge") {
    const auto b = lozenge_box(cfg);
    return report_section2(cfg, PlanePartitionPoset(b[0], b[1], b[2]));
  }
  throw Usage("unknown family " + cfg.family);
}

int run_render(Config cfg) {
  const std::string format = cfg.format.empty() ? "svg" : cfg.format;
  if (format != "svg" && format != "ascii") throw Usage("render: --format must be svg or ascii");
  std::ifstream file;
  if (!cfg.input.empty()) {
    file.open(cfg.input);
    if (!file) throw Usage("cannot open " + cfg.input);
  }
  std::istream& in = cfg.input.empty() ? std::cin : file;
  std::string line;
  while (std::getline(in, line) && line.find_first_not_of(" \t\r") == std::string::npos) {
  }
  if (line.empty()) throw Usage("render: no input");

  // Either a sample record or the bare object.
  json record;
  try {
    record = json::parse(line);
  } catch (const json::exception& e) {
    throw Usage(std::string("render: malformed JSON: ") + e.what());
  }
  const json object = record.is_object() && record.contains("sample") ? record["sample"] : record;
  const std::string text = object.dump();

  std::string doc;
  if (cfg.family == "partitions" || cfg.family == "region") {
    auto parts = parse_parts(text);
    doc = format == "ascii" ? young_ascii(parts) : young_svg(parts);
  } else if (format == "ascii") {
    throw Usage("render: ascii is only available for partitions");
  } else if (cfg.family == "permutations") {
    doc = rothe_svg(parse_permutation(text));
  } else if (cfg.family == "lozenge") {
    int c = 0;
    if (!cfg.box.empty()) {
      c = lozenge_box(cfg)[2];
    } else if (record.is_object() && record.contains("box")) {
      c = record["box"][2].get<int>();
    } else {
      throw Usage("render lozenge: give --box AxBxC for the height cap");
    }
    doc = lozenge_svg(parse_plane_partition(text, c));
  } else {
    throw Usage("unknown family " + cfg.family);
  }
  std::ofstream of;
  out_stream(cfg, of) << doc;
  return 0;
}

void add_family(CLI::App* cmd, Config& cfg) {
  cmd->add_option("family", cfg.family, "partitions | permutations | lozenge | region")
      ->required()
      ->check(CLI::IsMember({"partitions", "permutations", "lozenge", "region"}));
}

void add_shape(CLI::App* cmd, Config& cfg) {
  cmd->add_option("--n", cfg.n, "size: partitions of n, permutations of n");
  cmd->add_option("--rank,--k", cfg.k, "rank: cells above the floor, inversions, or volume");
  cmd->add_option("--region", cfg.region_file, "region JSON file {\"ceiling\": [[h, m], ...], \"floor\": [...]}");
  cmd->add_option("--box", cfg.box, "AxB for a region of A columns of height B; AxBxC for lozenge");
}

void add_budgets(CLI::App* cmd, Config& cfg) {
  cmd->add_option("--c", cfg.c, "growth constant of the bias schedule (default: max_degree, at least 2)");
  cmd->add_option("--retry-cap", cfg.retry_cap,
                  "rejection attempts per draw (default: 10^4 * ceil(160 n^{1/4}) for partitions of n, "
                  "10^6 for fixed-rank sampling)");
  cmd->add_option("--steps", cfg.steps,
                  "forward chain steps per attempt without --exact (default: the explicit mixing bound at "
                  "eps = 1/e for partitions of n; 4x the worst of 8 coalescence horizons otherwise)");
  cmd->add_option("--cftp-max-steps", cfg.cftp_max_steps, "coalescence budget in total steps (default: 2^40)");
  cmd->add_option("--probe-samples", cfg.probe_samples,
                  "draws per binary-search probe (default: Hoeffding bound at --confidence)");
  cmd->add_option("--confidence", cfg.confidence, "confidence of the balanced-bias search (default: 0.99)")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--fallback-below", cfg.fallback_below,
                  "partitions of n below this are drawn by direct recursion (default: 30)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uniform sampling of fixed-rank objects via biased Markov chains"};
  app.require_subcommand(1);
  Config cfg;

  auto* sample = app.add_subcommand("sample", "draw uniform samples as JSON lines");
  add_family(sample, cfg);
  add_shape(sample, cfg);
  sample->add_option("--percent", cfg.percent, "lozenge: volume as a percentage of the box");
  sample->add_option("--seed", cfg.seed, "64-bit seed (default: fresh entropy, printed on stderr)");
  sample->add_option("--samples", cfg.samples, "number of draws (default: 1)");
  sample->add_flag("--exact", cfg.exact, "draw through coupling from the past instead of forward simulation");
  sample->add_option("--parallel", cfg.parallel, "worker threads; lines then appear in completion order");
  sample->add_option("--format", cfg.format, "jsonl (default)");
  sample->add_option("--output,-o", cfg.output, "write to a file instead of stdout");
  add_budgets(sample, cfg);

  auto* count = app.add_subcommand("count", "exact counts; the whole rank profile when no rank is given");
  add_family(count, cfg);
  add_shape(count, cfg);

  auto* estimate = app.add_subcommand("estimate", "approximate counting by self-reduction");
  add_family(estimate, cfg);
  add_shape(estimate, cfg);
  estimate->add_option("--seed", cfg.seed, "64-bit seed (default: fresh entropy, printed on stderr)");
  estimate->add_option("--samples", cfg.level_samples, "draws per level (default: 1000)");
  estimate->add_flag("--exact", cfg.exact, "draw through coupling from the past");
  add_budgets(estimate, cfg);

  auto* verify = app.add_subcommand("verify", "exact checks of the balanced-bias inequalities on a small poset");
  verify->add_option("check", cfg.check, "section2")->required();
  verify->add_option("--family", cfg.family, "partitions | permutations | lozenge | region")
      ->check(CLI::IsMember({"partitions", "permutations", "lozenge", "region"}));
  add_shape(verify, cfg);
  verify->add_option("--c", cfg.c, "growth constant, integer or fraction (default: max_degree, at least 2)");
  verify->add_option("--cap", cfg.state_cap, "largest poset to enumerate (default: 2000)");
  verify->add_option("--format", cfg.format, "json (default)");

  auto* render = app.add_subcommand("render", "draw one sample as SVG (or ASCII for partitions)");
  add_family(render, cfg);
  render->add_option("--input,-i", cfg.input, "file holding a sample line (default: stdin)");
  render->add_option("--box", cfg.box, "AxBxC, for the height cap of a lozenge tiling");
  render->add_option("--format", cfg.format, "svg (default) | ascii");
  render->add_option("--output,-o", cfg.output, "write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*sample) return run_sample(cfg);
    if (*count) return run_count(cfg);
    if (*estimate) return run_estimate(cfg);
    if (*verify) return run_verify(cfg);
    if (*render) return run_render(cfg);
  } catch (const RuntimeFailure& e) {
    std::cerr << "rankwalk: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "rankwalk: " << e.what() << '\n';
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "rankwalk: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "rankwalk: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
