#include "confpara/action.hpp"

#include <algorithm>
#include <set>

#include "confpara/errors.hpp"
#include "confpara/window.hpp"

namespace confpara {

namespace detail {

struct ActionImpl {
  ActionKind kind = ActionKind::left_translation;
  Group group;
  std::vector<std::vector<std::size_t>> table;  // explicit
  std::optional<std::size_t> point_count;       // explicit / trivial
  std::optional<Action> base;                   // product
};

}  // namespace detail

namespace {

std::size_t point_index(const Point& x) {
  if (x.data.size() != 1 || x.data[0] < 0) throw InputError("point is not a natural-number index");
  return static_cast<std::size_t>(x.data[0]);
}

}  // namespace

Action Action::left_translation(Group group) {
  return Action(std::make_shared<detail::ActionImpl>(detail::ActionImpl{ActionKind::left_translation, std::move(group), {}, {}, {}}));
}

Action Action::explicit_table(Group group, std::vector<std::vector<std::size_t>> table) {
  if (!group.is_finite()) throw InputError("explicit action tables need a finite group");
  const auto n = *group.order();
  if (table.size() != n) throw InputError("action table needs one row per group element", "/table");
  const auto p = table.empty() ? 0 : table[0].size();
  for (std::size_t g = 0; g < n; ++g) {
    if (table[g].size() != p) throw InputError("action table rows differ in length", "/table/" + std::to_string(g));
    std::vector<bool> seen(p, false);
    for (auto y : table[g]) {
      if (y >= p || seen[y]) throw InputError("action table row is not a permutation of the points", "/table/" + std::to_string(g));
      seen[y] = true;
    }
  }
  const auto id = group.identity().as_index();
  for (std::size_t x = 0; x < p; ++x) {
    if (table[id][x] != x) throw InputError("identity does not fix point " + std::to_string(x));
  }
  const auto& cayley = group.cayley_table();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t x = 0; x < p; ++x) {
        if (table[a][table[b][x]] != table[cayley[a][b]][x]) {
          throw InputError("action table violates g1.(g2.x) = (g1g2).x at (" + std::to_string(a) + "," +
                           std::to_string(b) + "," + std::to_string(x) + ")");
        }
      }
    }
  }
  return Action(std::make_shared<detail::ActionImpl>(
      detail::ActionImpl{ActionKind::explicit_table, std::move(group), std::move(table), p, {}}));
}

Action Action::trivial(Group group, std::optional<std::size_t> point_count) {
  return Action(std::make_shared<detail::ActionImpl>(
      detail::ActionImpl{ActionKind::trivial, std::move(group), {}, point_count, {}}));
}

Action Action::product(Action base) {
  Group g = base.group();
  return Action(std::make_shared<detail::ActionImpl>(
      detail::ActionImpl{ActionKind::product, std::move(g), {}, {}, std::move(base)}));
}

ActionKind Action::kind() const { return impl_->kind; }
const Group& Action::group() const { return impl_->group; }

const Action& Action::base() const {
  if (!impl_->base) throw PreconditionError("only product actions have a base action");
  return *impl_->base;
}

std::optional<std::size_t> Action::point_count() const { return impl_->point_count; }
const std::vector<std::vector<std::size_t>>& Action::table() const { return impl_->table; }

std::pair<Point, std::uint64_t> Action::split_layer(const Point& x) {
  if (x.data.empty() || x.data.back() < 0) throw InputError("product point needs a non-negative layer index");
  Point base(std::vector<std::int64_t>(x.data.begin(), x.data.end() - 1));
  return {std::move(base), static_cast<std::uint64_t>(x.data.back())};
}

Point Action::with_layer(const Point& base, std::uint64_t layer) {
  Point out = base;
  out.data.push_back(static_cast<std::int64_t>(layer));
  return out;
}

Point Action::act(const Element& g, const Point& x) const {
  switch (impl_->kind) {
    case ActionKind::left_translation:
      return impl_->group.mul(g, x);
    case ActionKind::explicit_table: {
      impl_->group.validate(g);
      const auto i = point_index(x);
      if (i >= *impl_->point_count) throw InputError("point " + std::to_string(i) + " is not in the action's domain");
      return Point::index(impl_->table[g.as_index()][i]);
    }
    case ActionKind::trivial:
      impl_->group.validate(g);
      validate(x);
      return x;
    case ActionKind::product: {
      auto [b, k] = split_layer(x);
      return with_layer(impl_->base->act(g, b), k);
    }
  }
  throw PreconditionError("unknown action kind");
}

bool Action::contains(const Point& x) const {
  switch (impl_->kind) {
    case ActionKind::left_translation:
      return impl_->group.contains(x);
    case ActionKind::explicit_table:
    case ActionKind::trivial:
      if (x.data.size() != 1 || x.data[0] < 0) return false;
      return !impl_->point_count || static_cast<std::size_t>(x.data[0]) < *impl_->point_count;
    case ActionKind::product:
      if (x.data.empty() || x.data.back() < 0) return false;
      return impl_->base->contains(split_layer(x).first);
  }
  return false;
}

void Action::validate(const Point& x) const {
  if (!contains(x)) throw InputError("point is not in the action's domain");
}

bool Action::is_finite() const {
  switch (impl_->kind) {
    case ActionKind::left_translation:
      return impl_->group.is_finite();
    case ActionKind::explicit_table:
    case ActionKind::trivial:
      return impl_->point_count.has_value();
    case ActionKind::product:
      return false;
  }
  return false;
}

std::vector<Point> Action::points() const {
  if (!is_finite()) throw PreconditionError("the action's point set is infinite; use a window");
  if (impl_->kind == ActionKind::left_translation) return impl_->group.elements();
  std::vector<Point> out;
  for (std::size_t i = 0; i < *impl_->point_count; ++i) out.push_back(Point::index(i));
  return out;
}

bool Action::less(const Point& a, const Point& b) const {
  switch (impl_->kind) {
    case ActionKind::left_translation:
      return impl_->group.less(a, b);
    case ActionKind::product: {
      auto [pa, ka] = split_layer(a);
      auto [pb, kb] = split_layer(b);
      if (ka != kb) return ka < kb;
      return impl_->base->less(pa, pb);
    }
    default:
      return a < b;
  }
}

std::string Action::format(const Point& x) const {
  switch (impl_->kind) {
    case ActionKind::left_translation:
      return impl_->group.format(x);
    case ActionKind::product: {
      auto [b, k] = split_layer(x);
      return "(" + impl_->base->format(b) + "," + std::to_string(k) + ")";
    }
    default:
      return std::to_string(point_index(x));
  }
}

OrbitStabilizer orbit_and_stabilizer(const Action& action, const Point& x, std::size_t bound) {
  action.validate(x);
  const Group& group = action.group();
  OrbitStabilizer out;
  std::vector<Element> search;
  if (group.is_finite()) {
    search = group.elements();
    out.exact = true;
  } else if (group.kind() == GroupKind::free) {
    search = ball(group, static_cast<std::int64_t>(bound)).points;
  } else if (group.kind() == GroupKind::free_abelian) {
    search = box(group, static_cast<std::int64_t>(bound)).points;
  } else {
    search = prefix(canonical_enumeration(group), static_cast<std::int64_t>(bound)).points;
  }
  std::set<Point> orbit;
  for (const auto& g : search) {
    auto y = action.act(g, x);
    if (y == x) out.stabilizer.push_back(g);
    orbit.insert(std::move(y));
  }
  out.elements_searched = search.size();
  out.orbit.assign(orbit.begin(), orbit.end());
  std::sort(out.orbit.begin(), out.orbit.end(), [&](const Point& a, const Point& b) { return action.less(a, b); });
  std::sort(out.stabilizer.begin(), out.stabilizer.end(),
            [&](const Element& a, const Element& b) { return group.less(a, b); });
  return out;
}

}  // namespace confpara
