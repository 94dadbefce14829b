#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "confpara/action.hpp"
#include "confpara/partition.hpp"
#include "confpara/window.hpp"

namespace confpara {

/// Block indices (C_0, C_1, ..., C_n), all 1-based.
struct Configuration {
  std::vector<std::size_t> entries;

  std::size_t size() const { return entries.size(); }
  std::size_t operator[](std::size_t i) const { return entries[i]; }

  friend bool operator==(const Configuration&, const Configuration&) = default;
  friend auto operator<=>(const Configuration& a, const Configuration& b) { return a.entries <=> b.entries; }
};

/// Sorted, duplicate-free.
using ConfigSet = std::vector<Configuration>;

/// A finite configuration pair: tuple (g_1, ..., g_n) and a partition of X.
/// Repeated tuple entries are allowed.
struct ConfigPair {
  std::vector<Element> tuple;
  Partition partition;
  /// Asserted by the caller for Con*; checked when the group is finite.
  bool generating = false;
};

/// An infinite sequence g_1, g_2, ... of group elements: an explicit head
/// followed either by the identity forever or by an oracle.
class Sequence {
 public:
  static Sequence eventually_identity(std::vector<Element> head, Element identity);
  /// `tail(i)` gives g_i for i > head.size() (1-based).
  static Sequence with_tail(std::vector<Element> head, std::function<Element(std::size_t)> tail, std::string name);

  /// g_i, 1-based.
  Element at(std::size_t i) const;
  const std::vector<Element>& head() const { return head_; }
  /// Index from which every entry is the identity (head.size() + 1), when the
  /// tail is the identity.
  std::optional<std::size_t> identity_from() const;
  const std::string& name() const { return name_; }

 private:
  std::vector<Element> head_;
  std::function<Element(std::size_t)> tail_;
  Element identity_;
  std::string name_;
};

struct CountablePair {
  Sequence sequence;
  Partition partition;
  bool generating = false;
};

/// {(block(x), block(g_1 x), ..., block(g_n x)) : x in base_points}, sorted.
ConfigSet configurations_on(const Action& action, const ConfigPair& pair, std::span<const Point> base_points);

/// Con(g, E; X) for a finite action. Validates the tuple, the generating flag
/// and that the partition covers X.
ConfigSet configurations_finite(const Action& action, const ConfigPair& pair);

/// Cells x_0(C), x_1(C), ..., x_n(C); cells[0] = E_{C_0} cap g_1^-1 E_{C_1} cap ...
struct ConfigCells {
  Configuration config;
  std::vector<std::vector<Point>> cells;
};

/// Exact cells over a finite X.
ConfigCells cells(const Action& action, const ConfigPair& pair, const Configuration& config);
/// Cells restricted to base points in a window.
ConfigCells cells(const Action& action, const ConfigPair& pair, const Configuration& config, const Window& window);
/// Cells of every configuration realized by the base points.
std::vector<ConfigCells> all_cells(const Action& action, const ConfigPair& pair, std::span<const Point> base_points);

struct RefinementViolation {
  std::size_t position = 0;  // j
  std::size_t block = 0;     // i (0 when the point is in no cell)
  Point point;
  std::string reason;
};

struct RefinementCheck {
  bool holds = true;
  std::optional<RefinementViolation> violation;
};

/// For every position j: the cells {x_j(C)} partition g_j . base_points, and
/// E_i restricted to that set is the disjoint union of the x_j(C) with C_j = i.
/// For a finite X with base_points = X both sets are X itself. Reports the first
/// violation by (position, canonical point order).
RefinementCheck verify_refinement(const Action& action, const ConfigPair& pair, std::span<const ConfigCells> cells,
                                  std::span<const Point> base_points);
/// Computes the cells itself over the whole (finite) X.
RefinementCheck verify_refinement(const Action& action, const ConfigPair& pair);

struct PrefixSet {
  ConfigSet prefixes;
  std::size_t depth = 0;
  std::string window;
  /// True only when the window is the whole (finite) X.
  bool exact = false;
  std::string note;
};

/// Depth-k prefixes (block(x), block(g_1 x), ..., block(g_k x)) over the window.
/// Finite actions route to the finite machinery over all of X and are exact;
/// otherwise the result under-approximates the true prefix set.
PrefixSet countable_config_prefixes(const Action& action, const CountablePair& pair, std::size_t depth,
                                    const Window& window);

/// Replaces the designated infinite block E_m (which must be the last block and
/// carry an enumerator y_m, y_{m+1}, ...) by singletons {y_m}, {y_{m+1}}, ...
/// and pads the tuple with identities.
CountablePair singleton_split(const Group& group, const ConfigPair& pair, std::size_t block);

/// Truncates the sequence to `tuple_length` entries (default: up to the identity
/// tail) and merges blocks m, m+1, ... into block m.
ConfigPair merge_blocks(const CountablePair& pair, std::size_t cutoff,
                        std::optional<std::size_t> tuple_length = std::nullopt);

/// Applies c_k = min(d_k, m) to every entry, then truncates each configuration
/// to `length` entries (all entries when empty). Result is sorted and deduplicated.
ConfigSet merge_configurations(const ConfigSet& configs, std::size_t cutoff,
                               std::optional<std::size_t> length = std::nullopt);

}  // namespace confpara
