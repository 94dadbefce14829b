#include "confpara/paradox.hpp"

#include <algorithm>
#include <memory>

#include "confpara/codec.hpp"
#include "confpara/errors.hpp"

namespace confpara {

namespace {

constexpr const char* kPartitionEq = "X = (disjoint union of A_i) u (disjoint union of B_j)";
constexpr const char* kAEq = "X = disjoint union of g_i A_i";
constexpr const char* kBEq = "X = disjoint union of h_j B_j";

const char* side_name(Side s) { return s == Side::a ? "a" : "b"; }

std::string translate_name(Side s, std::uint64_t i) {
  return (s == Side::a ? "g_" : "h_") + std::to_string(i) + (s == Side::a ? " A_" : " B_") + std::to_string(i);
}

std::uint64_t index_limit(std::optional<std::uint64_t> count, std::uint64_t bound) {
  return count ? std::min(*count, bound) : bound;
}

/// Inverses of translators 1..limit, computed once per verification.
std::vector<Element> inverse_translators(const Decomposition& dec, Side side, std::uint64_t limit) {
  const auto& g = dec.action.group();
  std::vector<Element> out;
  out.reserve(static_cast<std::size_t>(limit));
  for (std::uint64_t i = 1; i <= limit; ++i) out.push_back(g.inv(dec.translator(side, i)));
  return out;
}

}  // namespace

std::string format_piece(const Piece& p) {
  return std::string(p.side == Side::a ? "A" : "B") + "_" + std::to_string(p.index);
}

Decomposition pieces_decomposition(Action action, std::string name,
                                   std::function<std::optional<Piece>(const Point&)> classify,
                                   std::vector<Element> a_translators, std::vector<Element> b_translators) {
  for (const auto* list : {&a_translators, &b_translators}) {
    for (const auto& g : *list) action.group().validate(g);
  }
  const auto group = action.group();
  auto a_inv = std::make_shared<std::vector<Element>>();
  auto b_inv = std::make_shared<std::vector<Element>>();
  for (const auto& g : a_translators) a_inv->push_back(group.inv(g));
  for (const auto& g : b_translators) b_inv->push_back(group.inv(g));
  auto scan = [action, classify](std::shared_ptr<std::vector<Element>> inv, Side side) {
    return [action, classify, inv, side](const Point& x) -> std::optional<std::uint64_t> {
      for (std::size_t i = 0; i < inv->size(); ++i) {
        const auto p = classify(action.act((*inv)[i], x));
        if (p && *p == Piece{side, i + 1}) return i + 1;
      }
      return std::nullopt;
    };
  };
  auto at = [](std::vector<Element> list, const char* which) {
    return [list = std::move(list), which](std::uint64_t i) {
      if (i == 0 || i > list.size()) throw InputError(std::string(which) + " translator index out of range");
      return list[i - 1];
    };
  };
  Decomposition d{action,
                  std::move(name),
                  classify,
                  at(a_translators, "a"),
                  at(b_translators, "b"),
                  scan(a_inv, Side::a),
                  scan(b_inv, Side::b),
                  a_translators.size(),
                  b_translators.size(),
                  {}};
  d.metadata["cover"] = "scan";
  return d;
}

Verdict verify_paradoxical(const Decomposition& dec, const Window& window, std::uint64_t index_bound) {
  Verdict v;
  v.window = window.describe();
  v.index_bound = index_bound;
  const auto& act = dec.action;
  auto refute = [&](const Point& x, const char* eq, std::string detail) {
    v.status = VerdictStatus::refuted;
    v.witness = x;
    v.witness_text = act.format(x);
    v.equation = eq;
    v.detail = std::move(detail);
    return v;
  };

  const std::uint64_t limit[2] = {index_limit(dec.a_count, index_bound), index_limit(dec.b_count, index_bound)};
  const std::vector<Element> inv[2] = {inverse_translators(dec, Side::a, limit[0]),
                                       inverse_translators(dec, Side::b, limit[1])};
  const auto& group = act.group();

  for (const auto& x : window.points) {
    ++v.points_checked;
    const auto p = dec.classify(x);
    if (!p) return refute(x, kPartitionEq, "the point lies in no piece");
    if (p->index == 0 || (dec.count(p->side) && p->index > *dec.count(p->side))) {
      throw MalformedWitness("classifier returned " + format_piece(*p) + " outside the family");
    }
    for (const auto side : {Side::a, Side::b}) {
      const auto s = static_cast<std::size_t>(side);
      const char* eq = side == Side::a ? kAEq : kBEq;
      auto covers_with = [&](std::uint64_t i, const Element& g_inv) {
        const auto q = dec.classify(act.act(g_inv, x));
        return q && *q == Piece{side, i};
      };
      auto covers = [&](std::uint64_t i) {
        if (i <= limit[s]) return covers_with(i, inv[s][i - 1]);
        return covers_with(i, group.inv(dec.translator(side, i)));
      };
      const auto c = dec.cover(side, x);
      if (c && (*c == 0 || (dec.count(side) && *c > *dec.count(side)))) {
        throw MalformedWitness(std::string(side_name(side)) + "-cover returned index " + std::to_string(*c) +
                               " outside the family");
      }
      if (!c || !covers(*c)) {
        for (std::uint64_t i = 1; i <= limit[s]; ++i) {
          if (covers(i)) {
            throw MalformedWitness(std::string(side_name(side)) + "-cover of " + act.format(x) + " gives " +
                                   (c ? std::to_string(*c) : std::string("nothing")) + " but " +
                                   translate_name(side, i) + " contains it");
          }
        }
        return refute(x, eq,
                      c ? "the named translate " + translate_name(side, *c) +
                              " misses the point and no index up to the bound covers it"
                        : "no translate with index up to the bound covers the point");
      }
      for (std::uint64_t i = 1; i <= limit[s]; ++i) {
        if (i != *c && covers(i)) {
          return refute(x, eq,
                        "the point lies in both " + translate_name(side, *c) + " and " + translate_name(side, i));
        }
      }
    }
  }
  return v;
}

Verdict verify_equidecomposable(const Action& action, const std::function<bool(const Point&)>& in_a,
                                const std::function<bool(const Point&)>& in_b, const EquidecompositionWitness& witness,
                                const Window& window, std::uint64_t index_bound) {
  Verdict v;
  v.window = window.describe();
  v.index_bound = index_bound;
  auto refute = [&](const Point& x, const char* eq, std::string detail) {
    v.status = VerdictStatus::refuted;
    v.witness = x;
    v.witness_text = action.format(x);
    v.equation = eq;
    v.detail = std::move(detail);
    return v;
  };
  const auto& group = action.group();
  const auto limit = index_limit(witness.count, index_bound);
  std::vector<Element> inv;
  for (std::uint64_t i = 1; i <= limit; ++i) inv.push_back(group.inv(witness.translator(i)));
  auto covers = [&](const Point& x, std::uint64_t i) {
    const auto& g_inv = i <= limit ? inv[i - 1] : group.inv(witness.translator(i));
    return witness.classify(action.act(g_inv, x)) == std::optional<std::uint64_t>(i);
  };
  constexpr const char* kPieces = "A = disjoint union of A_i";
  constexpr const char* kImage = "B = disjoint union of g_i A_i";

  for (const auto& x : window.points) {
    ++v.points_checked;
    const auto i = witness.classify(x);
    if (i) {
      if (*i == 0 || (witness.count && *i > *witness.count)) {
        throw MalformedWitness("classifier returned piece " + std::to_string(*i) + " outside the family");
      }
      if (!in_a(x)) return refute(x, kPieces, "piece " + std::to_string(*i) + " contains a point outside A");
      if (!in_b(action.act(witness.translator(*i), x))) {
        return refute(x, kImage, "g_" + std::to_string(*i) + " moves the point outside B");
      }
    } else if (in_a(x)) {
      return refute(x, kPieces, "the point of A lies in no piece");
    }

    if (!in_b(x)) {
      for (std::uint64_t k = 1; k <= limit; ++k) {
        if (covers(x, k)) return refute(x, kImage, "g_" + std::to_string(k) + " A_" + std::to_string(k) + " leaves B");
      }
      continue;
    }
    const auto c = witness.cover(x);
    if (!c || *c == 0 || !covers(x, *c)) {
      for (std::uint64_t k = 1; k <= limit; ++k) {
        if (covers(x, k)) {
          throw MalformedWitness("cover oracle of " + action.format(x) + " disagrees with g_" + std::to_string(k) +
                                 " A_" + std::to_string(k));
        }
      }
      return refute(x, kImage, "no translated piece with index up to the bound covers the point");
    }
    for (std::uint64_t k = 1; k <= limit; ++k) {
      if (k != *c && covers(x, k)) {
        return refute(x, kImage,
                      "the point lies in both g_" + std::to_string(*c) + " A_" + std::to_string(*c) + " and g_" +
                          std::to_string(k) + " A_" + std::to_string(k));
      }
    }
  }
  return v;
}

Decomposition singleton_decomposition(const Group& group, const Enumeration& enumeration) {
  if (group.is_finite()) {
    throw PreconditionError("a finite group has no countable paradoxical decomposition");
  }
  if (!enumeration.is_infinite()) throw PreconditionError("the enumeration must be infinite");
  const auto e = enumeration;
  auto x = [e](std::uint64_t k) { return e.unrank(k - 1); };
  auto position = [e](const Point& y) -> std::optional<std::uint64_t> { return e.rank(y) + 1; };
  Decomposition d{Action::left_translation(group),
                  "singleton(" + enumeration.name + ")",
                  [e](const Point& y) -> std::optional<Piece> {
                    const auto k = e.rank(y) + 1;
                    if (k % 2 == 0) return Piece{Side::a, k / 2};
                    return Piece{Side::b, (k + 1) / 2};
                  },
                  [group, x](std::uint64_t i) { return group.mul(x(i), group.inv(x(2 * i))); },
                  [group, x](std::uint64_t i) { return group.mul(x(i), group.inv(x(2 * i - 1))); },
                  position,
                  position,
                  std::nullopt,
                  std::nullopt,
                  {}};
  d.metadata["enumeration"] = enumeration.name;
  return d;
}

Decomposition f2_standard() {
  const auto f2 = Group::free(2);
  auto classify = [](const Point& w) -> std::optional<Piece> {
    const bool neg_a_power = std::all_of(w.data.begin(), w.data.end(), [](std::int64_t l) { return l == -1; });
    if (neg_a_power) return Piece{Side::a, 1};
    switch (w.data.front()) {
      case 1:
        return Piece{Side::a, 1};
      case -1:
        return Piece{Side::a, 2};
      case 2:
        return Piece{Side::b, 1};
      case -2:
        return Piece{Side::b, 2};
    }
    throw InputError("not a word of F_2");
  };
  auto translators = [](std::int64_t letter) {
    return [letter](std::uint64_t i) {
      if (i == 1) return Element{};
      if (i == 2) return Element{letter};
      throw InputError("translator index out of range");
    };
  };
  Decomposition d{Action::left_translation(f2),
                  "f2-standard",
                  classify,
                  translators(1),
                  translators(2),
                  [classify](const Point& x) -> std::optional<std::uint64_t> {
                    return classify(x) == std::optional<Piece>(Piece{Side::a, 1}) ? 1 : 2;
                  },
                  [](const Point& x) -> std::optional<std::uint64_t> {
                    return !x.data.empty() && x.data.front() == 2 ? 1 : 2;
                  },
                  2,
                  2,
                  {}};
  return d;
}

std::pair<SubgroupEmbedding, RightTransversal> multiples_in_integers(std::int64_t k) {
  if (k < 1) throw InputError("the multiplier must be positive");
  SubgroupEmbedding emb{std::to_string(k) + "Z",
                        Group::free_abelian(1),
                        [k](const Element& n) { return Element{k * n.data.at(0)}; },
                        [k](const Element& g) -> std::optional<Element> {
                          if (g.data.size() != 1 || g.data[0] % k != 0) return std::nullopt;
                          return Element{g.data[0] / k};
                        }};
  RightTransversal tr{"residues mod " + std::to_string(k), [k](const Element& g) {
                        auto r = g.data.at(0) % k;
                        if (r < 0) r += k;
                        return std::pair{Element{g.data[0] - r}, Element{r}};
                      }};
  return {std::move(emb), std::move(tr)};
}

std::pair<SubgroupEmbedding, RightTransversal> cyclic_in_free(std::size_t rank, std::size_t letter) {
  if (letter == 0 || letter > rank) throw InputError("letter out of range");
  const auto a = static_cast<std::int64_t>(letter);
  SubgroupEmbedding emb{"<" + std::string(1, static_cast<char>('a' + letter - 1)) + ">",
                        Group::free_abelian(1),
                        [a](const Element& n) {
                          const auto e = n.data.at(0);
                          return Element(std::vector<std::int64_t>(static_cast<std::size_t>(e < 0 ? -e : e), e < 0 ? -a : a));
                        },
                        [a](const Element& w) -> std::optional<Element> {
                          if (w.data.empty()) return Element{0};
                          const auto l = w.data.front();
                          if (l != a && l != -a) return std::nullopt;
                          if (!std::all_of(w.data.begin(), w.data.end(), [l](std::int64_t x) { return x == l; })) {
                            return std::nullopt;
                          }
                          const auto n = static_cast<std::int64_t>(w.data.size());
                          return Element{l > 0 ? n : -n};
                        }};
  RightTransversal tr{"words not starting with the letter", [a](const Element& w) {
                        std::size_t p = 0;
                        if (!w.data.empty() && (w.data[0] == a || w.data[0] == -a)) {
                          while (p < w.data.size() && w.data[p] == w.data[0]) ++p;
                        }
                        Element h(std::vector<std::int64_t>(w.data.begin(), w.data.begin() + static_cast<std::ptrdiff_t>(p)));
                        Element t(std::vector<std::int64_t>(w.data.begin() + static_cast<std::ptrdiff_t>(p), w.data.end()));
                        return std::pair{std::move(h), std::move(t)};
                      }};
  return {std::move(emb), std::move(tr)};
}

std::pair<SubgroupEmbedding, RightTransversal> whole_group(const Group& group) {
  SubgroupEmbedding emb{group.name(), group, [](const Element& g) { return g; },
                        [group](const Element& g) -> std::optional<Element> {
                          if (!group.contains(g)) return std::nullopt;
                          return g;
                        }};
  const auto e = group.identity();
  RightTransversal tr{"{e}", [e](const Element& g) { return std::pair{g, e}; }};
  return {std::move(emb), std::move(tr)};
}

Decomposition lift_via_transversal(const Group& group, const SubgroupEmbedding& embedding,
                                   const RightTransversal& transversal, const Decomposition& sub) {
  if (sub.action.kind() != ActionKind::left_translation) {
    throw PreconditionError("the subgroup decomposition must be for the subgroup acting on itself");
  }
  // h part of g = h t, projected into the abstract subgroup
  auto coset_part = [group, embedding, transversal](const Element& g) {
    auto [h, t] = transversal.decode(g);
    if (group.mul(h, t) != g) {
      throw MalformedWitness("transversal decoder: h t != g for g = " + group.format(g));
    }
    auto ph = embedding.project(h);
    if (!ph) throw MalformedWitness("transversal decoder: h is not in " + embedding.name + " for g = " + group.format(g));
    return *ph;
  };
  auto embed_translator = [embedding](std::function<Element(std::uint64_t)> f) {
    return [embedding, f = std::move(f)](std::uint64_t i) { return embedding.embed(f(i)); };
  };
  Decomposition d{Action::left_translation(group),
                  "lift(" + sub.name + ")",
                  [coset_part, sub](const Point& g) { return sub.classify(coset_part(g)); },
                  embed_translator(sub.a_translator),
                  embed_translator(sub.b_translator),
                  [coset_part, sub](const Point& g) { return sub.a_cover(coset_part(g)); },
                  [coset_part, sub](const Point& g) { return sub.b_cover(coset_part(g)); },
                  sub.a_count,
                  sub.b_count,
                  sub.metadata};
  d.metadata["subgroup"] = embedding.name;
  d.metadata["transversal"] = transversal.name;
  return d;
}

Decomposition countable_paradox_of_infinite(const Group& group, const std::optional<SubgroupWitness>& witness) {
  if (group.is_finite()) {
    throw PreconditionError("a finite group has no infinite countable subgroup, so no countable paradoxical decomposition");
  }
  if (!witness) return singleton_decomposition(group, canonical_enumeration(group));
  const auto& h = witness->embedding.subgroup;
  return lift_via_transversal(group, witness->embedding, witness->transversal,
                              singleton_decomposition(h, canonical_enumeration(h)));
}

namespace {

struct RangeScan {
  std::vector<Element> range;
  std::string failure;
};

RangeScan scan_range(const Decomposition& dec, Side side, std::uint64_t bound,
                     const std::optional<std::vector<Element>>& declared) {
  RangeScan out;
  const auto count = dec.count(side);
  const auto limit = index_limit(count, bound);
  std::uint64_t last_new = 0;
  for (std::uint64_t i = 1; i <= limit; ++i) {
    const auto g = dec.translator(side, i);
    if (declared) {
      if (std::find(declared->begin(), declared->end(), g) == declared->end()) {
        out.failure = std::string("translator ") + (side == Side::a ? "g_" : "h_") + std::to_string(i) + " = " +
                      dec.action.group().format(g) + " is outside the declared range";
        return out;
      }
      continue;
    }
    if (std::find(out.range.begin(), out.range.end(), g) == out.range.end()) {
      out.range.push_back(g);
      last_new = i;
    }
  }
  if (declared) {
    out.range = *declared;
    return out;
  }
  const bool exact = count && *count <= bound;
  if (!exact && last_new > bound / 2) {
    out.failure = std::string(side == Side::a ? "a" : "b") + "-translators: " + std::to_string(out.range.size()) +
                  " distinct values up to index " + std::to_string(limit) + ", the last new one at index " +
                  std::to_string(last_new);
  }
  return out;
}

std::uint64_t position_in(const std::vector<Element>& range, const Element& g, const Group& group) {
  const auto it = std::find(range.begin(), range.end(), g);
  if (it == range.end()) throw MalformedWitness("translator " + group.format(g) + " lies outside the compressed range");
  return static_cast<std::uint64_t>(it - range.begin()) + 1;
}

}  // namespace

CompressionResult compress_translators(const Decomposition& dec, std::uint64_t bound,
                                       const std::optional<std::pair<std::vector<Element>, std::vector<Element>>>& declared) {
  CompressionResult result;
  const auto a = scan_range(dec, Side::a, bound, declared ? std::optional(declared->first) : std::nullopt);
  const auto b = scan_range(dec, Side::b, bound, declared ? std::optional(declared->second) : std::nullopt);
  result.a_range = a.range;
  result.b_range = b.range;
  if (!a.failure.empty() || !b.failure.empty()) {
    result.reason = "not compressible within bound " + std::to_string(bound) + ": " +
                    (a.failure.empty() ? b.failure : a.failure);
    return result;
  }
  auto ranges = std::make_shared<std::pair<std::vector<Element>, std::vector<Element>>>(a.range, b.range);
  const auto group = dec.action.group();
  auto range_of = [ranges](Side s) -> const std::vector<Element>& { return s == Side::a ? ranges->first : ranges->second; };
  auto translator = [ranges](Side s) {
    return [ranges, s](std::uint64_t j) {
      const auto& r = s == Side::a ? ranges->first : ranges->second;
      if (j == 0 || j > r.size()) throw InputError("translator index out of range");
      return r[j - 1];
    };
  };
  auto cover = [dec, group, range_of](Side s) {
    return [dec, group, range_of, s](const Point& x) -> std::optional<std::uint64_t> {
      const auto c = dec.cover(s, x);
      if (!c) return std::nullopt;
      return position_in(range_of(s), dec.translator(s, *c), group);
    };
  };
  Decomposition d{dec.action,
                  "compress(" + dec.name + ")",
                  [dec, group, range_of](const Point& x) -> std::optional<Piece> {
                    const auto p = dec.classify(x);
                    if (!p) return std::nullopt;
                    return Piece{p->side, position_in(range_of(p->side), dec.translator(p->side, p->index), group)};
                  },
                  translator(Side::a),
                  translator(Side::b),
                  cover(Side::a),
                  cover(Side::b),
                  a.range.size(),
                  b.range.size(),
                  dec.metadata};
  d.metadata["compressed-bound"] = std::to_string(bound);
  result.decomposition = std::move(d);
  result.reason = "compressed";
  return result;
}

Decomposition refine_to_singletons(const Decomposition& dec, const Enumeration& points) {
  const auto group = dec.action.group();
  auto translator = [dec, points, group](Side s) {
    return [dec, points, group, s](std::uint64_t k) {
      if (k == 0) throw InputError("translator index out of range");
      const auto p = dec.classify(points.unrank(k - 1));
      if (p && p->side == s) return dec.translator(s, p->index);
      return group.identity();
    };
  };
  auto cover = [dec, points, group](Side s) {
    return [dec, points, group, s](const Point& y) -> std::optional<std::uint64_t> {
      const auto c = dec.cover(s, y);
      if (!c) return std::nullopt;
      return points.rank(dec.action.act(group.inv(dec.translator(s, *c)), y)) + 1;
    };
  };
  Decomposition d{dec.action,
                  "refine(" + dec.name + ")",
                  [dec, points](const Point& x) -> std::optional<Piece> {
                    const auto p = dec.classify(x);
                    if (!p) return std::nullopt;
                    return Piece{p->side, points.rank(x) + 1};
                  },
                  translator(Side::a),
                  translator(Side::b),
                  cover(Side::a),
                  cover(Side::b),
                  points.size,
                  points.size,
                  dec.metadata};
  d.metadata["refined-by"] = points.name;
  return d;
}

OrbitStructure layered_orbits(const Action& product) {
  if (product.kind() != ActionKind::product) throw PreconditionError("layered orbits need a product action");
  const auto base = product.base();
  if (base.kind() != ActionKind::left_translation) {
    throw PreconditionError("layered orbits need a product over a left translation");
  }
  const auto e = base.group().identity();
  return OrbitStructure{"layers",
                        [e](std::uint64_t k) { return Action::with_layer(e, k); },
                        [](const Point& y) {
                          auto [b, k] = Action::split_layer(y);
                          return std::pair{k, b};
                        },
                        [](std::uint64_t k, const Point& c) { return Action::with_layer(c, k); },
                        [base](std::uint64_t) { return base; },
                        std::nullopt};
}

OrbitStructure trivial_orbits(const Action& trivial) {
  if (trivial.kind() != ActionKind::trivial) throw PreconditionError("trivial orbits need a trivial action");
  const auto group = trivial.group();
  return OrbitStructure{"fixed points",
                        [](std::uint64_t k) { return Point::index(k); },
                        [](const Point& y) { return std::pair{y.as_index(), Point::index(0)}; },
                        [](std::uint64_t k, const Point&) { return Point::index(k); },
                        [group](std::uint64_t) { return Action::trivial(group, 1); },
                        trivial.point_count()};
}

Decomposition glue_orbit_decompositions(const Action& action, const OrbitStructure& orbits,
                                        std::function<Decomposition(std::uint64_t)> per_orbit,
                                        const GlueOptions& options) {
  const auto& group = action.group();
  const auto probe = orbits.orbit_count ? std::min(*orbits.orbit_count, options.probe_orbits) : options.probe_orbits;
  for (std::uint64_t k = 0; k < probe; ++k) {
    if (orbits.coset_action(k).is_finite()) {
      throw PreconditionError("orbit " + std::to_string(k) + " of " + action.format(orbits.representative(k)) +
                              " is finite, so G/G_x is not countably paradoxical");
    }
  }

  std::vector<Element> movers = group.generators();
  for (const auto& g : group.generators()) movers.push_back(group.inv(g));
  for (const auto& y : options.probe_points) {
    const auto [k, c] = orbits.decode(y);
    if (orbits.encode(k, c) != y) throw MalformedWitness("orbit decoder does not invert at " + action.format(y));
    const auto ca = orbits.coset_action(k);
    for (const auto& g : movers) {
      if (orbits.encode(k, ca.act(g, c)) != action.act(g, y)) {
        throw MalformedWitness("orbit map is not translation invariant at " + action.format(y) + " for " +
                               group.format(g));
      }
    }
  }

  Decomposition d{action, "", {}, {}, {}, {}, {}, std::nullopt, std::nullopt, {}};
  d.metadata["orbits"] = orbits.name;
  if (options.mode == GlueMode::uniform) {
    const auto first = per_orbit(0);
    for (std::uint64_t k = 1; k < probe; ++k) {
      const auto other = per_orbit(k);
      for (const auto side : {Side::a, Side::b}) {
        if (other.count(side) != first.count(side)) {
          throw PreconditionError("orbit " + std::to_string(k) + " has a different number of pieces; use independent mode");
        }
        const auto limit = index_limit(first.count(side), options.probe_indices);
        for (std::uint64_t i = 1; i <= limit; ++i) {
          if (other.translator(side, i) != first.translator(side, i)) {
            throw PreconditionError("orbit " + std::to_string(k) + " uses different translators; use independent mode");
          }
        }
      }
    }
    d.name = "glue-uniform(" + first.name + ")";
    d.classify = [orbits, per_orbit](const Point& y) {
      const auto [k, c] = orbits.decode(y);
      return per_orbit(k).classify(c);
    };
    d.a_translator = first.a_translator;
    d.b_translator = first.b_translator;
    d.a_cover = [orbits, per_orbit](const Point& y) {
      const auto [k, c] = orbits.decode(y);
      return per_orbit(k).a_cover(c);
    };
    d.b_cover = [orbits, per_orbit](const Point& y) {
      const auto [k, c] = orbits.decode(y);
      return per_orbit(k).b_cover(c);
    };
    d.a_count = first.a_count;
    d.b_count = first.b_count;
    d.metadata["glue-mode"] = "uniform";
    return d;
  }

  const auto e = group.identity();
  auto flat = [](std::uint64_t i, std::uint64_t k) { return codec::cantor_pair(i - 1, k) + 1; };
  d.name = "glue-independent";
  d.classify = [orbits, per_orbit, flat](const Point& y) -> std::optional<Piece> {
    const auto [k, c] = orbits.decode(y);
    const auto p = per_orbit(k).classify(c);
    if (!p) return std::nullopt;
    return Piece{p->side, flat(p->index, k)};
  };
  auto translator = [per_orbit, e](Side s) {
    return [per_orbit, e, s](std::uint64_t n) {
      if (n == 0) throw InputError("translator index out of range");
      const auto [i0, k] = codec::cantor_unpair(n - 1);
      const auto dk = per_orbit(k);
      if (dk.count(s) && i0 + 1 > *dk.count(s)) return e;
      return dk.translator(s, i0 + 1);
    };
  };
  auto cover = [orbits, per_orbit, flat](Side s) {
    return [orbits, per_orbit, flat, s](const Point& y) -> std::optional<std::uint64_t> {
      const auto [k, c] = orbits.decode(y);
      const auto i = per_orbit(k).cover(s, c);
      if (!i) return std::nullopt;
      return flat(*i, k);
    };
  };
  d.a_translator = translator(Side::a);
  d.b_translator = translator(Side::b);
  d.a_cover = cover(Side::a);
  d.b_cover = cover(Side::b);
  d.metadata["glue-mode"] = "independent";
  d.metadata["index-pairing"] = "cantor(i-1,k)+1";
  return d;
}

Decomposition restrict_to_orbit(const Decomposition& dec, std::uint64_t orbit, const OrbitStructure& orbits) {
  const auto ca = orbits.coset_action(orbit);
  const auto it = dec.metadata.find("glue-mode");
  const bool flattened = it != dec.metadata.end() && it->second == "independent";
  auto unflat = [flattened, orbit](std::uint64_t n) {
    if (!flattened) return n;
    const auto [i0, k] = codec::cantor_unpair(n - 1);
    if (k != orbit) throw MalformedWitness("piece index " + std::to_string(n) + " belongs to another orbit");
    return i0 + 1;
  };
  auto translator = [dec, flattened, orbit](Side s) {
    return [dec, flattened, orbit, s](std::uint64_t i) {
      return dec.translator(s, flattened ? codec::cantor_pair(i - 1, orbit) + 1 : i);
    };
  };
  auto cover = [dec, orbits, orbit, unflat](Side s) {
    return [dec, orbits, orbit, unflat, s](const Point& c) -> std::optional<std::uint64_t> {
      const auto i = dec.cover(s, orbits.encode(orbit, c));
      if (!i) return std::nullopt;
      return unflat(*i);
    };
  };
  Decomposition d{ca,
                  "restrict(" + dec.name + "," + std::to_string(orbit) + ")",
                  [dec, orbits, orbit, unflat](const Point& c) -> std::optional<Piece> {
                    const auto p = dec.classify(orbits.encode(orbit, c));
                    if (!p) return std::nullopt;
                    return Piece{p->side, unflat(p->index)};
                  },
                  translator(Side::a),
                  translator(Side::b),
                  cover(Side::a),
                  cover(Side::b),
                  flattened ? std::nullopt : dec.a_count,
                  flattened ? std::nullopt : dec.b_count,
                  dec.metadata};
  d.metadata.erase("glue-mode");
  d.metadata.erase("index-pairing");
  d.metadata["restricted-to-orbit"] = std::to_string(orbit);
  return d;
}

}  // namespace confpara
