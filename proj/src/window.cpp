#include "confpara/window.hpp"

#include <algorithm>
#include <set>

#include "confpara/errors.hpp"

namespace confpara {

namespace {

void require_non_negative(std::int64_t v, const char* what) {
  if (v < 0) throw InputError(std::string(what) + " must be non-negative, got " + std::to_string(v));
}

std::string kind_name(WindowKind k, std::int64_t p) {
  switch (k) {
    case WindowKind::all:
      return "all";
    case WindowKind::ball:
      return "ball(" + std::to_string(p) + ")";
    case WindowKind::box:
      return "box(" + std::to_string(p) + ")";
    case WindowKind::prefix:
      return "prefix(" + std::to_string(p) + ")";
    case WindowKind::layered:
    case WindowKind::custom:
      break;
  }
  return "custom";
}

}  // namespace

std::string Window::describe() const {
  if (kind == WindowKind::layered) {
    return kind_name(base_kind, parameter) + "x{0.." + std::to_string(layers == 0 ? 0 : layers - 1) + "}";
  }
  if (kind == WindowKind::custom) return "custom(" + std::to_string(points.size()) + ")";
  return kind_name(kind, parameter);
}

Window all_points(const Action& action) {
  Window w;
  w.kind = WindowKind::all;
  w.points = action.points();
  return w;
}

Window ball(const Group& group, std::int64_t radius) { return ball(group, radius, group.generators()); }

Window ball(const Group& group, std::int64_t radius, const std::vector<Element>& generators) {
  require_non_negative(radius, "ball radius");
  std::vector<Element> steps;
  for (const auto& g : generators) {
    steps.push_back(g);
    steps.push_back(group.inv(g));
  }
  std::set<Element> reached{group.identity()};
  std::vector<Element> frontier{group.identity()};
  for (std::int64_t r = 0; r < radius && !frontier.empty(); ++r) {
    std::vector<Element> next;
    for (const auto& x : frontier) {
      for (const auto& s : steps) {
        auto y = group.mul(x, s);
        if (reached.insert(y).second) next.push_back(std::move(y));
      }
    }
    frontier = std::move(next);
  }
  Window w;
  w.kind = WindowKind::ball;
  w.parameter = radius;
  w.points.assign(reached.begin(), reached.end());
  std::sort(w.points.begin(), w.points.end(), [&](const Element& a, const Element& b) { return group.less(a, b); });
  return w;
}

Window box(const Group& group, std::int64_t radius) {
  require_non_negative(radius, "box radius");
  std::size_t dim = 0;
  std::function<Element(const std::vector<std::int64_t>&)> make;
  if (group.kind() == GroupKind::free_abelian) {
    dim = group.rank();
    make = [](const std::vector<std::int64_t>& v) { return Element(v); };
  } else if (group.kind() == GroupKind::enumerated && group.oracles().from_coordinates) {
    const auto& o = group.oracles();
    dim = o.coordinates(o.identity).size();
    make = [&o](const std::vector<std::int64_t>& v) { return Element::index(o.from_coordinates(v)); };
  } else {
    throw PreconditionError("box windows need a free abelian group or coordinate decoding");
  }
  std::vector<std::int64_t> v(dim, -radius);
  Window w;
  w.kind = WindowKind::box;
  w.parameter = radius;
  while (true) {
    w.points.push_back(make(v));
    std::size_t i = dim;
    while (i > 0 && v[i - 1] == radius) {
      v[i - 1] = -radius;
      --i;
    }
    if (i == 0) break;
    ++v[i - 1];
  }
  if (group.kind() == GroupKind::enumerated) {
    std::sort(w.points.begin(), w.points.end(), [&](const Element& a, const Element& b) { return group.less(a, b); });
  }
  return w;
}

Window prefix(const Enumeration& enumeration, std::int64_t count) {
  require_non_negative(count, "prefix length");
  if (enumeration.size && static_cast<std::uint64_t>(count) > *enumeration.size) {
    throw InputError("prefix longer than the finite enumeration");
  }
  Window w;
  w.kind = WindowKind::prefix;
  w.parameter = count;
  for (std::int64_t i = 0; i < count; ++i) w.points.push_back(enumeration.unrank(static_cast<std::uint64_t>(i)));
  return w;
}

Window layered(const Window& base, std::size_t layers) {
  Window w;
  w.kind = WindowKind::layered;
  w.base_kind = base.kind;
  w.parameter = base.parameter;
  w.layers = layers;
  for (std::size_t k = 0; k < layers; ++k) {
    for (const auto& p : base.points) w.points.push_back(Action::with_layer(p, k));
  }
  return w;
}

Window custom_window(std::vector<Point> points) {
  Window w;
  w.kind = WindowKind::custom;
  w.points = std::move(points);
  return w;
}

bool is_subset(const Window& inner, const Window& outer) {
  std::set<Point> o(outer.points.begin(), outer.points.end());
  return std::all_of(inner.points.begin(), inner.points.end(), [&](const Point& p) { return o.count(p) > 0; });
}

}  // namespace confpara
