#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "confpara/element.hpp"
#include "confpara/group.hpp"

namespace confpara {

/// A bijection between an initial segment of N (all of N when `size` is empty)
/// and a set of elements or points. Position 0 is the first element.
struct Enumeration {
  std::string name;
  std::function<Element(std::uint64_t)> unrank;
  std::function<std::uint64_t(const Element&)> rank;
  std::optional<std::uint64_t> size;

  bool is_infinite() const { return !size.has_value(); }
};

/// Z as a rank-1 free abelian group: 0, 1, -1, 2, -2, ...
Enumeration zigzag_enumeration();
/// Z^k as a free abelian group: nested Cantor pairing of zigzag coordinates.
Enumeration lattice_enumeration(std::size_t rank);
/// Reduced words of F_rank in shortlex order.
Enumeration shortlex_enumeration(std::size_t rank);
/// Identity codec for finite and enumerated groups (index = position).
Enumeration index_enumeration(const Group& group);
/// The builtin enumeration of a group, starting at the identity for every
/// kind except finite groups whose identity index is not 0.
Enumeration canonical_enumeration(const Group& group);

}  // namespace confpara
