#include "confpara/enumeration.hpp"

#include <vector>

#include "confpara/codec.hpp"
#include "confpara/errors.hpp"

namespace confpara {

Enumeration zigzag_enumeration() {
  return {"zigzag",
          [](std::uint64_t r) { return Element{codec::zigzag_unrank(r)}; },
          [](const Element& e) { return codec::zigzag_rank(e.data.at(0)); },
          std::nullopt};
}

Enumeration lattice_enumeration(std::size_t rank) {
  if (rank == 1) return zigzag_enumeration();
  return {"cantor-zigzag",
          [rank](std::uint64_t r) {
            auto parts = codec::tuple_unpair(r, rank);
            std::vector<std::int64_t> v;
            for (auto p : parts) v.push_back(codec::zigzag_unrank(p));
            return Element(std::move(v));
          },
          [rank](const Element& e) {
            if (e.data.size() != rank) throw InputError("vector has wrong dimension");
            std::vector<std::uint64_t> parts;
            for (auto x : e.data) parts.push_back(codec::zigzag_rank(x));
            return codec::tuple_pair(parts);
          },
          std::nullopt};
}

Enumeration shortlex_enumeration(std::size_t rank) {
  return {"shortlex",
          [rank](std::uint64_t r) { return Element(codec::shortlex_unrank(r, rank)); },
          [rank](const Element& e) { return codec::shortlex_rank(e.data, rank); },
          std::nullopt};
}

Enumeration index_enumeration(const Group& group) {
  std::optional<std::uint64_t> size;
  if (auto n = group.order()) size = *n;
  return {"index",
          [size](std::uint64_t r) {
            if (size && r >= *size) throw InputError("position beyond finite enumeration");
            return Element::index(r);
          },
          [group](const Element& e) {
            group.validate(e);
            return e.as_index();
          },
          size};
}

Enumeration canonical_enumeration(const Group& group) {
  switch (group.kind()) {
    case GroupKind::free:
      return shortlex_enumeration(group.rank());
    case GroupKind::free_abelian:
      return lattice_enumeration(group.rank());
    case GroupKind::finite:
    case GroupKind::enumerated:
      return index_enumeration(group);
  }
  throw PreconditionError("unknown group kind");
}

}  // namespace confpara
