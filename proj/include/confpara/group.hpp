#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "confpara/element.hpp"

namespace confpara {

enum class GroupKind { finite, free, free_abelian, enumerated };

using Permutation = std::vector<std::size_t>;
using CayleyTable = std::vector<std::vector<std::size_t>>;

/// Oracles of a countable group whose elements are natural-number indices.
/// All functions must be pure.
struct EnumeratedOracles {
  std::string name;
  std::function<std::uint64_t(std::uint64_t, std::uint64_t)> mul;
  std::function<std::uint64_t(std::uint64_t)> inv;
  std::uint64_t identity = 0;
  std::function<std::string(std::uint64_t)> label;  // optional
  /// Optional geometric decoding, used for box windows.
  std::function<std::vector<std::int64_t>(std::uint64_t)> coordinates;
  std::function<std::uint64_t(const std::vector<std::int64_t>&)> from_coordinates;
  /// Name of a builtin, if this is one (used for serialization).
  std::string builtin;
};

namespace detail {
class GroupImpl;
}

/// Immutable handle to a group. Copies share the representation.
class Group {
 public:
  /// Finite group from a Cayley table over indices 0..n-1 with table[a][b] = a*b.
  /// Rejects tables that are not Latin squares, lack a two-sided identity, or
  /// are not associative.
  static Group finite_cayley(CayleyTable table, std::size_t identity,
                             std::vector<std::string> labels = {}, std::string name = {});
  /// Closure of permutation generators of {0..degree-1}. Elements are indexed
  /// in lexicographic order of their image vectors, so the identity is 0.
  static Group from_permutations(std::size_t degree, std::vector<Permutation> generators,
                                 std::string name = {});
  static Group free(std::size_t rank);
  static Group free_abelian(std::size_t rank);
  /// Countable group given by index oracles. The identity and inverse laws are
  /// checked on the first `check_prefix` indices.
  static Group enumerated(EnumeratedOracles oracles, std::size_t check_prefix = 32);
  /// Z with indices 0, 1, -1, 2, -2, ...
  static Group enumerated_integers();
  /// Z^2 with index = Cantor pairing of the zigzag indices of the coordinates.
  static Group enumerated_lattice();

  GroupKind kind() const;
  const std::string& name() const;
  bool is_finite() const;
  std::optional<std::size_t> order() const;
  /// Rank of a free or free abelian group; 0 otherwise.
  std::size_t rank() const;

  Element identity() const;
  Element mul(const Element& a, const Element& b) const;
  Element inv(const Element& a) const;
  Element pow(const Element& a, std::int64_t exponent) const;

  bool contains(const Element& a) const;
  /// Throws InputError if `a` is not a valid element representation.
  void validate(const Element& a) const;
  /// Canonical order: shortlex for words, index order for finite and
  /// enumerated groups, lexicographic coordinates for free abelian groups.
  bool less(const Element& a, const Element& b) const;

  std::string format(const Element& a) const;
  Element parse(std::string_view text) const;

  /// Every element in index order. Finite groups only.
  std::vector<Element> elements() const;
  /// Standard generators: letters, unit vectors, or (finite) the permutation
  /// generators / all non-identity elements.
  std::vector<Element> generators() const;

  const CayleyTable& cayley_table() const;
  const std::vector<std::string>& labels() const;
  /// Non-empty only for groups built by from_permutations.
  const std::vector<Permutation>& permutation_generators() const;
  const std::vector<Permutation>& permutations() const;
  std::size_t degree() const;
  const EnumeratedOracles& oracles() const;

  friend bool operator==(const Group& a, const Group& b) { return a.impl_ == b.impl_; }

 private:
  explicit Group(std::shared_ptr<const detail::GroupImpl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const detail::GroupImpl> impl_;
};

struct ProductAndInverse {
  Element product;
  Element inverse;
};

/// Returns a*b and a^-1 in canonical form.
ProductAndInverse mul_inv(const Group& group, const Element& a, const Element& b);

/// Closure of S u S^-1 under multiplication equals the group. Finite groups only.
bool is_generating(const Group& group, const std::vector<Element>& subset);

/// Subgroup generated by `subset`, as a sorted element list. Finite groups only.
std::vector<Element> generated_subgroup(const Group& group, const std::vector<Element>& subset);

}  // namespace confpara
