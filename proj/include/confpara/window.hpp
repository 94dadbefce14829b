#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "confpara/action.hpp"
#include "confpara/element.hpp"
#include "confpara/enumeration.hpp"
#include "confpara/group.hpp"

namespace confpara {

enum class WindowKind { all, ball, box, prefix, layered, custom };

/// A finite, canonically ordered set of points on which countable claims are
/// checked. Verification on a window refutes soundly and confirms only up to
/// the window.
struct Window {
  WindowKind kind = WindowKind::custom;
  std::int64_t parameter = 0;  // radius or prefix length
  std::size_t layers = 0;      // layered windows: layer count
  WindowKind base_kind = WindowKind::custom;
  std::vector<Point> points;

  std::size_t size() const { return points.size(); }
  std::string describe() const;
};

/// Every point of a finite action.
Window all_points(const Action& action);
/// Word-metric ball over the group's standard generators (and inverses).
/// Shortlex order for free groups.
Window ball(const Group& group, std::int64_t radius);
Window ball(const Group& group, std::int64_t radius, const std::vector<Element>& generators);
/// Max-norm box in Z^k, or in an enumerated group with coordinate decoding.
Window box(const Group& group, std::int64_t radius);
/// First `count` positions of an enumeration, in enumeration order.
Window prefix(const Enumeration& enumeration, std::int64_t count);
/// Base window x {0..layers-1} for product actions, layer-major.
Window layered(const Window& base, std::size_t layers);
Window custom_window(std::vector<Point> points);

/// Every point of `inner` is a point of `outer`.
bool is_subset(const Window& inner, const Window& outer);

}  // namespace confpara
