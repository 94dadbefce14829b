#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "confpara/element.hpp"
#include "confpara/group.hpp"

namespace confpara {

enum class ActionKind { left_translation, explicit_table, trivial, product };

namespace detail {
struct ActionImpl;
}

/// A left action G x X -> X. Immutable; copies share the representation.
class Action {
 public:
  /// G acting on itself by g.x = gx.
  static Action left_translation(Group group);
  /// Finite action given by table[g][x] over points 0..p-1. Both action laws
  /// are checked on every triple.
  static Action explicit_table(Group group, std::vector<std::vector<std::size_t>> table);
  /// g.x = x on points 0..count-1, or on N when `point_count` is empty.
  static Action trivial(Group group, std::optional<std::size_t> point_count);
  /// base x N with g.(x, k) = (g.x, k).
  static Action product(Action base);

  ActionKind kind() const;
  const Group& group() const;
  /// Base action of a product action.
  const Action& base() const;
  /// Number of points of an explicit or trivial action (empty when countable).
  std::optional<std::size_t> point_count() const;
  const std::vector<std::vector<std::size_t>>& table() const;

  Point act(const Element& g, const Point& x) const;
  bool contains(const Point& x) const;
  void validate(const Point& x) const;

  bool is_finite() const;
  /// Every point, canonically ordered. Finite actions only.
  std::vector<Point> points() const;
  bool less(const Point& a, const Point& b) const;
  std::string format(const Point& x) const;

  /// Splits a product point into (base point, layer).
  static std::pair<Point, std::uint64_t> split_layer(const Point& x);
  static Point with_layer(const Point& base, std::uint64_t layer);

 private:
  explicit Action(std::shared_ptr<const detail::ActionImpl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const detail::ActionImpl> impl_;
};

struct OrbitStabilizer {
  std::vector<Point> orbit;          // canonical order
  std::vector<Element> stabilizer;   // canonical order
  std::size_t elements_searched = 0;
  /// True when the whole group was searched (finite groups).
  bool exact = false;
};

/// Orbit and stabilizer of x. Finite groups are searched completely; countable
/// groups over the canonical window of the given bound (ball, box or prefix),
/// and the result is flagged as bounded.
OrbitStabilizer orbit_and_stabilizer(const Action& action, const Point& x, std::size_t bound);

}  // namespace confpara
