#pragma once

#include <string>
#include <utility>
#include <vector>

#include "confpara/group.hpp"

namespace confpara::catalog {

Group cyclic(std::size_t n);
/// Elements are pairs (a, b) at index a*|H| + b.
Group direct_product(const Group& g, const Group& h, std::string name = {});
Group symmetric(std::size_t degree);
Group alternating(std::size_t degree);
/// Symmetries of the regular n-gon, order 2n.
Group dihedral(std::size_t n);
/// Quaternion group {+-1, +-i, +-j, +-k}, indices 0..7 = 1, -1, i, -i, j, -j, k, -k.
Group quaternion();

/// Z2, Z3, Z4, Z2xZ2, Z5, Z6, S3, Z7, Z8, Z4xZ2, Z2^3, D4, Q8.
std::vector<std::pair<std::string, Group>> fixture_groups();

}  // namespace confpara::catalog
