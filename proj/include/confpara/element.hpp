#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace confpara {

/// Uniform value type for group elements and points of G-sets.
///
/// Layout by representation:
///   finite / enumerated group element   {index}
///   free group word                     reduced letters, +i for a_i and -i for a_i^-1
///   free abelian vector                 coordinates
///   explicit / trivial action point     {index}
///   product action point                base point data followed by the layer index
///
/// The ordering is plain lexicographic on `data`; canonical (shortlex, ...)
/// ordering is a property of the group and lives in Group::less.
struct Element {
  std::vector<std::int64_t> data;

  Element() = default;
  explicit Element(std::vector<std::int64_t> d) : data(std::move(d)) {}
  Element(std::initializer_list<std::int64_t> d) : data(d) {}

  static Element index(std::uint64_t i) { return Element{static_cast<std::int64_t>(i)}; }

  std::uint64_t as_index() const { return static_cast<std::uint64_t>(data.at(0)); }

  friend bool operator==(const Element&, const Element&) = default;
  friend auto operator<=>(const Element& a, const Element& b) { return a.data <=> b.data; }
};

/// Points of an action's underlying set share the element representation so
/// that left translation can act on elements directly.
using Point = Element;

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL ^ e.data.size();
    for (auto v : e.data) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

}  // namespace confpara
