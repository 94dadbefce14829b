#include "confpara/configurations.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "confpara/errors.hpp"

namespace confpara {

Sequence Sequence::eventually_identity(std::vector<Element> head, Element identity) {
  Sequence s;
  s.head_ = std::move(head);
  s.identity_ = std::move(identity);
  s.name_ = "eventually-identity";
  return s;
}

Sequence Sequence::with_tail(std::vector<Element> head, std::function<Element(std::size_t)> tail, std::string name) {
  Sequence s;
  s.head_ = std::move(head);
  s.tail_ = std::move(tail);
  s.name_ = std::move(name);
  return s;
}

Element Sequence::at(std::size_t i) const {
  if (i == 0) throw InputError("sequence indices start at 1");
  if (i <= head_.size()) return head_[i - 1];
  if (tail_) return tail_(i);
  return identity_;
}

std::optional<std::size_t> Sequence::identity_from() const {
  if (tail_) return std::nullopt;
  return head_.size() + 1;
}

namespace {

void validate_tuple(const Group& group, const std::vector<Element>& tuple) {
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    try {
      group.validate(tuple[i]);
    } catch (const InputError& e) {
      throw InputError(std::string("tuple entry ") + std::to_string(i + 1) + ": " + e.what(),
                       "/tuple/" + std::to_string(i));
    }
  }
}

Configuration configuration_of(const Action& action, const std::vector<Element>& tuple, const Partition& partition,
                               const Point& x) {
  Configuration c;
  c.entries.reserve(tuple.size() + 1);
  c.entries.push_back(partition.block_of(x));
  for (const auto& g : tuple) c.entries.push_back(partition.block_of(action.act(g, x)));
  return c;
}

void sort_points(const Action& action, std::vector<Point>& points) {
  std::sort(points.begin(), points.end(), [&](const Point& a, const Point& b) { return action.less(a, b); });
}

void check_config_shape(const ConfigPair& pair, const Configuration& config) {
  if (config.size() != pair.tuple.size() + 1) {
    throw InputError("configuration has " + std::to_string(config.size()) + " entries, expected " +
                     std::to_string(pair.tuple.size() + 1));
  }
  const auto m = pair.partition.block_count();
  for (auto b : config.entries) {
    if (b == 0 || (m && b > *m)) throw InputError("block index " + std::to_string(b) + " is out of range");
  }
}

ConfigCells cells_over(const Action& action, const ConfigPair& pair, const Configuration& config,
                       std::span<const Point> base_points) {
  check_config_shape(pair, config);
  ConfigCells out{config, std::vector<std::vector<Point>>(pair.tuple.size() + 1)};
  for (const auto& x : base_points) {
    if (configuration_of(action, pair.tuple, pair.partition, x) == config) out.cells[0].push_back(x);
  }
  sort_points(action, out.cells[0]);
  for (std::size_t j = 1; j <= pair.tuple.size(); ++j) {
    for (const auto& x : out.cells[0]) out.cells[j].push_back(action.act(pair.tuple[j - 1], x));
    sort_points(action, out.cells[j]);
  }
  return out;
}

}  // namespace

ConfigSet configurations_on(const Action& action, const ConfigPair& pair, std::span<const Point> base_points) {
  validate_tuple(action.group(), pair.tuple);
  std::set<Configuration> found;
  for (const auto& x : base_points) found.insert(configuration_of(action, pair.tuple, pair.partition, x));
  return {found.begin(), found.end()};
}

ConfigSet configurations_finite(const Action& action, const ConfigPair& pair) {
  if (!action.is_finite()) throw PreconditionError("configurations_finite needs a finite point set");
  const auto& group = action.group();
  validate_tuple(group, pair.tuple);
  if (pair.generating && group.is_finite() && !is_generating(group, pair.tuple)) {
    throw InputError("tuple is flagged as generating but does not generate " + group.name(), "/generating");
  }
  const auto points = action.points();
  pair.partition.check_covers(points);
  return configurations_on(action, pair, points);
}

ConfigCells cells(const Action& action, const ConfigPair& pair, const Configuration& config) {
  const auto points = action.points();
  return cells_over(action, pair, config, points);
}

ConfigCells cells(const Action& action, const ConfigPair& pair, const Configuration& config, const Window& window) {
  return cells_over(action, pair, config, window.points);
}

std::vector<ConfigCells> all_cells(const Action& action, const ConfigPair& pair, std::span<const Point> base_points) {
  validate_tuple(action.group(), pair.tuple);
  std::map<Configuration, std::vector<Point>> by_config;
  for (const auto& x : base_points) by_config[configuration_of(action, pair.tuple, pair.partition, x)].push_back(x);
  std::vector<ConfigCells> out;
  out.reserve(by_config.size());
  for (auto& [config, base] : by_config) {
    ConfigCells c{config, std::vector<std::vector<Point>>(pair.tuple.size() + 1)};
    sort_points(action, base);
    c.cells[0] = base;
    for (std::size_t j = 1; j <= pair.tuple.size(); ++j) {
      for (const auto& x : base) c.cells[j].push_back(action.act(pair.tuple[j - 1], x));
      sort_points(action, c.cells[j]);
    }
    out.push_back(std::move(c));
  }
  return out;
}

RefinementCheck verify_refinement(const Action& action, const ConfigPair& pair, std::span<const ConfigCells> cells,
                                  std::span<const Point> base_points) {
  const auto n = pair.tuple.size();
  for (std::size_t j = 0; j <= n; ++j) {
    std::vector<Point> universe;
    universe.reserve(base_points.size());
    for (const auto& x : base_points) universe.push_back(j == 0 ? x : action.act(pair.tuple[j - 1], x));
    sort_points(action, universe);

    std::map<Point, std::vector<std::size_t>> holders;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (cells[c].cells.size() != n + 1) {
        throw InputError("cell list " + std::to_string(c) + " has the wrong length");
      }
      for (const auto& y : cells[c].cells[j]) holders[y].push_back(c);
    }

    for (const auto& y : universe) {
      const auto i = pair.partition.block_of(y);
      auto it = holders.find(y);
      if (it == holders.end()) return {false, RefinementViolation{j, i, y, "point lies in no cell"}};
      if (it->second.size() > 1) return {false, RefinementViolation{j, i, y, "point lies in two cells"}};
      const auto& config = cells[it->second.front()].config;
      if (config.entries.at(j) != i) {
        return {false, RefinementViolation{j, i, y,
                                           "point of block " + std::to_string(i) + " lies in a cell with C_" +
                                               std::to_string(j) + " = " + std::to_string(config.entries[j])}};
      }
    }

    std::vector<Point> stray;
    std::set<Point> in_universe(universe.begin(), universe.end());
    for (const auto& [y, where] : holders) {
      if (!in_universe.count(y)) stray.push_back(y);
    }
    if (!stray.empty()) {
      sort_points(action, stray);
      return {false, RefinementViolation{j, 0, stray.front(), "cell contains a point outside the universe"}};
    }
  }
  return {};
}

RefinementCheck verify_refinement(const Action& action, const ConfigPair& pair) {
  const auto points = action.points();
  pair.partition.check_covers(points);
  const auto cs = all_cells(action, pair, points);
  return verify_refinement(action, pair, cs, points);
}

PrefixSet countable_config_prefixes(const Action& action, const CountablePair& pair, std::size_t depth,
                                    const Window& window) {
  ConfigPair truncated{{}, pair.partition, pair.generating};
  for (std::size_t i = 1; i <= depth; ++i) truncated.tuple.push_back(pair.sequence.at(i));

  PrefixSet out;
  out.depth = depth;
  if (action.is_finite()) {
    const auto points = action.points();
    pair.partition.check_covers(points);
    out.prefixes = configurations_on(action, truncated, points);
    out.window = "all";
    out.exact = true;
    out.note = "finite point set: exact";
  } else {
    out.prefixes = configurations_on(action, truncated, window.points);
    out.window = window.describe();
    out.exact = false;
    out.note = "window under-approximation of the prefix set";
  }
  return out;
}

CountablePair singleton_split(const Group& group, const ConfigPair& pair, std::size_t block) {
  const auto& partition = pair.partition;
  const auto count = partition.block_count();
  if (!count) throw PreconditionError("singleton_split needs a partition with finitely many blocks");
  if (block == 0 || block != *count) {
    throw PreconditionError("the designated block must be the last block (" + std::to_string(*count) + ")");
  }
  const auto* e = partition.enumerator(block);
  if (!e) throw PreconditionError("block " + std::to_string(block) + " has no enumerator");
  if (!e->is_infinite()) throw PreconditionError("block " + std::to_string(block) + " is finite");

  const auto m = block;
  const auto position = e->position;
  auto split = Partition::classifier(
      "split(" + partition.name() + ")",
      [partition, m, position](const Point& x) -> std::size_t {
        const auto b = partition.block_of(x);
        if (b < m) return b;
        return m + static_cast<std::size_t>(position(x));
      },
      std::nullopt);
  return CountablePair{Sequence::eventually_identity(pair.tuple, group.identity()), std::move(split), pair.generating};
}

ConfigPair merge_blocks(const CountablePair& pair, std::size_t cutoff, std::optional<std::size_t> tuple_length) {
  if (cutoff == 0) throw InputError("cutoff must be at least 1");
  std::size_t n = 0;
  if (tuple_length) {
    n = *tuple_length;
  } else if (auto from = pair.sequence.identity_from()) {
    n = *from - 1;
  } else {
    throw PreconditionError("the sequence has no known identity tail; pass a tuple length");
  }
  std::vector<Element> tuple;
  for (std::size_t i = 1; i <= n; ++i) tuple.push_back(pair.sequence.at(i));
  const auto partition = pair.partition;
  auto merged = Partition::classifier(
      "merge(" + partition.name() + "," + std::to_string(cutoff) + ")",
      [partition, cutoff](const Point& x) { return std::min(partition.block_of(x), cutoff); }, cutoff);
  return ConfigPair{std::move(tuple), std::move(merged), pair.generating};
}

ConfigSet merge_configurations(const ConfigSet& configs, std::size_t cutoff, std::optional<std::size_t> length) {
  std::set<Configuration> out;
  for (const auto& c : configs) {
    Configuration d;
    const auto len = length ? std::min(*length, c.size()) : c.size();
    for (std::size_t k = 0; k < len; ++k) d.entries.push_back(std::min(c.entries[k], cutoff));
    out.insert(std::move(d));
  }
  return {out.begin(), out.end()};
}

}  // namespace confpara
