#pragma once

// Region files and sample lines.
//
// Region JSON: {"ceiling": [[height, multiplicity], ...], "floor": [...]}
// with the floor optional. Samples are one-line JSON values: a part list for
// partitions, the value list for permutations, the height matrix for plane
// partitions.

#include "rankwalk/lozenge.hpp"
#include "rankwalk/permutations.hpp"
#include "rankwalk/region.hpp"

#include <string>
#include <vector>

namespace rankwalk {

Region parse_region(const std::string& text);
std::string format_region(const Region& region);
Region read_region_file(const std::string& path);

std::string format_parts(const std::vector<long>& parts);
// Throws std::invalid_argument unless the parts are positive and nonincreasing.
std::vector<long> parse_parts(const std::string& line);

std::string format_permutation(const Permutation& perm);
Permutation parse_permutation(const std::string& line);

std::string format_plane_partition(const PlanePartition& pp);
PlanePartition parse_plane_partition(const std::string& line, int c);

}  // namespace rankwalk
