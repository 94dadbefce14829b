#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "confpara/element.hpp"
#include "confpara/enumeration.hpp"

namespace confpara {

/// Lists the points of one block: nth(0), nth(1), ...
struct BlockEnumerator {
  std::function<Point(std::uint64_t)> nth;
  std::function<std::uint64_t(const Point&)> position;
  std::optional<std::uint64_t> size;  // empty: infinite block

  bool is_infinite() const { return !size.has_value(); }
};

/// A partition of a G-set into blocks numbered from 1, given either by an
/// explicit list of blocks or by a classifier function.
class Partition {
 public:
  /// Blocks must be non-empty and pairwise disjoint. Coverage of X is checked
  /// against an action by check_covers.
  static Partition explicit_blocks(std::vector<std::vector<Point>> blocks);
  /// `block_of` must return a block number >= 1 for every point it is asked
  /// about; 0 is reported as an input error.
  static Partition classifier(std::string name, std::function<std::size_t(const Point&)> block_of,
                              std::optional<std::size_t> block_count,
                              std::map<std::size_t, BlockEnumerator> enumerators = {});

  std::size_t block_of(const Point& x) const;
  /// Number of blocks; empty for infinite partitions.
  std::optional<std::size_t> block_count() const;
  bool is_explicit() const;
  const std::vector<std::vector<Point>>& blocks() const;
  const BlockEnumerator* enumerator(std::size_t block) const;
  const std::string& name() const;

  /// Every point is classified, and (explicit partitions) every block point is
  /// one of `points`.
  void check_covers(const std::vector<Point>& points) const;

 private:
  struct Impl;
  explicit Partition(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// Partition of Z (rank-1 free abelian points) by residue classes: block b+1
/// is the union of the residues listed in residue_blocks[b]. Every block is
/// infinite and enumerated in zigzag order.
Partition residue_partition(std::int64_t modulus, std::vector<std::vector<std::int64_t>> residue_blocks);

/// Singleton blocks: the point at position k of the enumeration is block k+1.
Partition singleton_partition(const Enumeration& enumeration);

}  // namespace confpara
