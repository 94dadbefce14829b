#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "confpara/action.hpp"
#include "confpara/group.hpp"
#include "confpara/partition.hpp"

namespace testing {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

/// Free reduction by repeated cancellation, written independently of the library.
inline std::vector<std::int64_t> reduce_word(std::vector<std::int64_t> w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i] == -w[i + 1]) {
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        changed = true;
        break;
      }
    }
  }
  return w;
}

/// Random set partition of n points into at most m blocks, as block labels 1..k
/// renumbered by first occurrence.
inline std::vector<std::size_t> random_labels(Rng& rng, std::size_t n, std::size_t m) {
  std::vector<std::size_t> raw(n);
  for (auto& v : raw) v = pick(rng, m);
  std::vector<std::size_t> rename(m, 0), out(n);
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (rename[raw[i]] == 0) rename[raw[i]] = ++next;
    out[i] = rename[raw[i]];
  }
  return out;
}

inline confpara::Partition blocks_from_labels(const std::vector<confpara::Point>& points,
                                              const std::vector<std::size_t>& labels) {
  std::size_t k = 0;
  for (auto l : labels) k = std::max(k, l);
  std::vector<std::vector<confpara::Point>> blocks(k);
  for (std::size_t i = 0; i < points.size(); ++i) blocks[labels[i] - 1].push_back(points[i]);
  return confpara::Partition::explicit_blocks(std::move(blocks));
}

}  // namespace testing
