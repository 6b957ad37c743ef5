#pragma once

// Deterministic SVG and ASCII pictures of the sampled objects.

#include "rankwalk/lozenge.hpp"
#include "rankwalk/permutations.hpp"

#include <string>
#include <vector>

namespace rankwalk {

// One row of '#' per part, largest first.
std::string young_ascii(const std::vector<long>& parts);
// Unit squares, one row per part, with both axes drawn.
std::string young_svg(const std::vector<long>& parts);

// n x n grid with the Rothe cells filled and the permutation's points dotted.
std::string rothe_svg(const Permutation& perm);

// Isometric lozenge tiling of the a x b x c hexagon: one top lozenge per cell
// and one side lozenge per visible wall unit.
std::string lozenge_svg(const PlanePartition& pp);

}  // namespace rankwalk
