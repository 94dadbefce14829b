#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "confpara/action.hpp"
#include "confpara/configurations.hpp"
#include "confpara/window.hpp"

namespace confpara {

/// Default enumeration cap: 5'000'000 pairs, or CONFPARA_CAP when set.
std::uint64_t default_cap();

/// Number of set partitions of `points` points into at most `max_blocks`
/// blocks. Saturates at UINT64_MAX.
std::uint64_t partition_count(std::size_t points, std::size_t max_blocks);

/// Visits every restricted growth string of the given length with at most
/// `max_blocks` distinct labels (labels 0-based, in lexicographic order).
/// The visitor returns false to stop.
void for_each_rgs(std::size_t points, std::size_t max_blocks,
                  const std::function<bool(const std::vector<std::size_t>&)>& visit);

/// Configuration set under the least block relabeling, as packed rows.
/// Labels must be at most 15 and configurations at most 16 entries long.
using ConfigKey = std::vector<std::uint64_t>;
ConfigKey canonical_key(const ConfigSet& configs);
ConfigSet canonical_form(const ConfigSet& configs);
/// Equal up to a bijective relabeling of blocks.
bool equal_up_to_relabeling(const ConfigSet& a, const ConfigSet& b);

struct EquivalenceOptions {
  std::uint64_t cap = 0;  // 0: default_cap()
  /// Windows for countable left translations (required there, ignored otherwise).
  std::optional<Window> window_a;
  std::optional<Window> window_b;
};

enum class WitnessSide { a, b };

struct EquivalenceWitness {
  WitnessSide side = WitnessSide::a;
  std::vector<Element> tuple;
  /// Blocks as point lists, 1-based by position. For windowed searches the
  /// last block is the complement of the window and is not listed in `blocks`.
  std::vector<std::vector<Point>> blocks;
  bool complement_block = false;
  ConfigSet configurations;
};

struct EquivalenceVerdict {
  bool equivalent = false;
  std::size_t n = 0;
  std::size_t m = 0;
  /// True for countable groups: only pairs supported on the windows were searched.
  bool windowed = false;
  std::string window_a;
  std::string window_b;
  std::uint64_t pairs_a = 0;
  std::uint64_t pairs_b = 0;
  std::uint64_t classes_a = 0;  // distinct Con sets up to relabeling
  std::uint64_t classes_b = 0;
  std::optional<EquivalenceWitness> witness;
};

/// Compares the families {Con(g, E)} of two actions over all tuples of length n
/// and all partitions into at most m blocks, up to block relabeling.
///
/// Finite actions are searched exhaustively. Countable left translations are
/// searched over tuples from the window and partitions whose first blocks
/// split the window (at most m-1 of them) and whose last block is the
/// complement; each Con set is then exact. Mixing the two kinds is an error.
/// The witness is the first pair (partitions outer, tuples inner) of side a
/// without a counterpart, else the first such pair of side b.
EquivalenceVerdict config_equiv_bounded(const Action& a, const Action& b, std::size_t n, std::size_t m,
                                        const EquivalenceOptions& options = {});

}  // namespace confpara
