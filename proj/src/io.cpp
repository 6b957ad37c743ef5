#include "rankwalk/io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rankwalk {

namespace {

using nlohmann::json;

std::vector<long> expand_runs(const json& runs) {
  if (!runs.is_array()) throw std::invalid_argument("region: profile must be an array of [height, multiplicity]");
  std::vector<long> out;
  for (const auto& r : runs) {
    if (!r.is_array() || r.size() != 2) throw std::invalid_argument("region: expected [height, multiplicity]");
    const long h = r[0].get<long>();
    const long m = r[1].get<long>();
    if (m < 0) throw std::invalid_argument("region: negative multiplicity");
    out.insert(out.end(), static_cast<std::size_t>(m), h);
  }
  return out;
}

json compress(const std::vector<long>& v) {
  json out = json::array();
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    out.push_back({v[i], static_cast<long>(j - i)});
    i = j;
  }
  return out;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

Region parse_region(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object() || !j.contains("ceiling")) throw std::invalid_argument("region: missing \"ceiling\"");
  try {
    std::vector<long> floor;
    if (j.contains("floor") && !j["floor"].is_null()) floor = expand_runs(j["floor"]);
    return Region(expand_runs(j["ceiling"]), std::move(floor));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("region: ") + e.what());
  }
}

std::string format_region(const Region& region) {
  json j;
  j["ceiling"] = compress(region.ceilings());
  if (region.has_floor()) {
    std::vector<long> floor = region.floors();
    while (!floor.empty() && floor.back() == 0) floor.pop_back();
    j["floor"] = compress(floor);
  }
  return j.dump();
}

Region read_region_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open region file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_region(ss.str());
}

std::string format_parts(const std::vector<long>& parts) { return json(parts).dump(); }

std::vector<long> parse_parts(const std::string& line) {
  const json j = parse_json(line);
  if (!j.is_array()) throw std::invalid_argument("partition: expected an array");
  std::vector<long> parts;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw std::invalid_argument("partition: parts must be integers");
    parts.push_back(v.get<long>());
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] <= 0 || (i > 0 && parts[i] > parts[i - 1])) {
      throw std::invalid_argument("partition: parts must be positive and nonincreasing");
    }
  }
  return parts;
}

std::string format_permutation(const Permutation& perm) { return json(perm.values()).dump(); }

Permutation parse_permutation(const std::string& line) {
  const json j = parse_json(line);
  if (!j.is_array()) throw std::invalid_argument("permutation: expected an array");
  std::vector<int> v;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw std::invalid_argument("permutation: values must be integers");
    v.push_back(x.get<int>());
  }
  return Permutation(std::move(v));
}

std::string format_plane_partition(const PlanePartition& pp) { return json(pp.matrix()).dump(); }

PlanePartition parse_plane_partition(const std::string& line, int c) {
  const json j = parse_json(line);
  if (!j.is_array()) throw std::invalid_argument("plane partition: expected a matrix");
  std::vector<std::vector<int>> m;
  for (const auto& row : j) {
    if (!row.is_array()) throw std::invalid_argument("plane partition: expected a matrix");
    std::vector<int> r;
    for (const auto& x : row) {
      if (!x.is_number_integer()) throw std::invalid_argument("plane partition: entries must be integers");
      r.push_back(x.get<int>());
    }
    m.push_back(std::move(r));
  }
  return PlanePartition::from_matrix(m, c);
}

}  // namespace rankwalk
