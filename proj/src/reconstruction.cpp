#include "confpara/reconstruction.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "confpara/action.hpp"
#include "confpara/equivalence.hpp"
#include "confpara/errors.hpp"

namespace confpara {

MultiplicationIndexTable::MultiplicationIndexTable(std::vector<Element> elements,
                                                   std::vector<std::vector<std::optional<std::size_t>>> pi,
                                                   std::vector<std::optional<std::size_t>> inverse)
    : elements_(std::move(elements)), pi_(std::move(pi)), inverse_(std::move(inverse)) {}

std::optional<std::size_t> MultiplicationIndexTable::get(std::size_t i, std::size_t j) const {
  if (i == 0 || j == 0 || i > bound() || j > bound()) return std::nullopt;
  return pi_[i - 1][j - 1];
}

std::size_t MultiplicationIndexTable::at(std::size_t i, std::size_t j) const {
  const auto v = get(i, j);
  if (!v) {
    throw PreconditionError("pi(" + std::to_string(i) + "," + std::to_string(j) + ") is outside the table bound " +
                            std::to_string(bound()));
  }
  return *v;
}

std::optional<std::size_t> MultiplicationIndexTable::inverse(std::size_t i) const {
  if (i == 0 || i > bound()) return std::nullopt;
  return inverse_[i - 1];
}

bool MultiplicationIndexTable::complete() const {
  for (const auto& row : pi_) {
    for (const auto& v : row) {
      if (!v) return false;
    }
  }
  return true;
}

MultiplicationIndexTable multiplication_index_table(const Group& group, const Enumeration& enumeration,
                                                    std::size_t bound) {
  if (bound == 0) throw InputError("table bound must be positive");
  if (enumeration.size && bound > *enumeration.size) {
    throw InputError("table bound " + std::to_string(bound) + " exceeds the enumeration size " +
                     std::to_string(*enumeration.size));
  }
  std::vector<Element> elements;
  std::unordered_map<Element, std::size_t, ElementHash> index;
  for (std::size_t i = 0; i < bound; ++i) {
    auto g = enumeration.unrank(i);
    group.validate(g);
    if (!index.emplace(g, i + 1).second) {
      throw InputError("enumeration repeats " + group.format(g) + " at position " + std::to_string(i + 1));
    }
    elements.push_back(std::move(g));
  }
  if (elements.front() != group.identity()) throw InputError("the enumeration must start with the identity");

  auto lookup = [&](const Element& g) -> std::optional<std::size_t> {
    auto it = index.find(g);
    if (it == index.end()) return std::nullopt;
    return it->second;
  };
  std::vector<std::vector<std::optional<std::size_t>>> pi(bound, std::vector<std::optional<std::size_t>>(bound));
  std::vector<std::optional<std::size_t>> inverse(bound);
  for (std::size_t i = 0; i < bound; ++i) {
    for (std::size_t j = 0; j < bound; ++j) pi[i][j] = lookup(group.mul(elements[i], elements[j]));
    inverse[i] = lookup(group.inv(elements[i]));
  }
  return MultiplicationIndexTable(std::move(elements), std::move(pi), std::move(inverse));
}

std::optional<AssociativityViolation> find_associativity_violation(const MultiplicationIndexTable& table) {
  const auto n = table.bound();
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      const auto ij = table.get(i, j);
      if (!ij) continue;
      for (std::size_t k = 1; k <= n; ++k) {
        const auto jk = table.get(j, k);
        if (!jk) continue;
        const auto left = table.get(i, *jk);
        const auto right = table.get(*ij, k);
        if (left && right && *left != *right) return AssociativityViolation{i, j, k};
      }
    }
  }
  return std::nullopt;
}

ConfigSet canonical_configurations(const MultiplicationIndexTable& table, std::size_t depth) {
  if (depth == 0) throw InputError("depth must be at least 1");
  if (depth > table.bound()) {
    throw PreconditionError("depth " + std::to_string(depth) + " exceeds the table bound " +
                            std::to_string(table.bound()));
  }
  ConfigSet out;
  for (std::size_t j = 1; j <= table.bound(); ++j) {
    Configuration c;
    c.entries.push_back(j);
    for (std::size_t i = 2; i <= depth; ++i) c.entries.push_back(table.at(i, j));
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<Element> sorted(std::vector<Element> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<Element> translate(const Group& h, const Element& x, const std::vector<Element>& block) {
  std::vector<Element> out;
  out.reserve(block.size());
  for (const auto& y : block) out.push_back(h.mul(x, y));
  return sorted(std::move(out));
}

}  // namespace

CosetFamily recover_cosets(const Group& h, const ConfigPair& pair, const MultiplicationIndexTable& g_table) {
  if (!h.is_finite()) throw PreconditionError("coset recovery needs a finite group H");
  if (!g_table.complete()) throw PreconditionError("coset recovery needs a complete multiplication table of G");
  const auto d = g_table.bound();
  if (pair.tuple.size() != d) {
    throw InputError("the tuple must have " + std::to_string(d) + " entries (one per element of G), got " +
                     std::to_string(pair.tuple.size()), "/tuple");
  }
  const auto act = Action::left_translation(h);
  const auto points = act.points();
  pair.partition.check_covers(points);

  ConfigPair tail{std::vector<Element>(pair.tuple.begin() + 1, pair.tuple.end()), pair.partition};
  if (configurations_on(act, tail, points) != canonical_configurations(g_table, d)) {
    throw PreconditionError("the configuration set of the pair differs from the canonical configurations of G");
  }

  std::vector<std::vector<Element>> by_label(d);
  for (const auto& x : points) {
    const auto b = pair.partition.block_of(x);
    if (b > d) throw InputError("block label " + std::to_string(b) + " exceeds |G| = " + std::to_string(d));
    by_label[b - 1].push_back(x);
  }

  CosetFamily family;
  const auto k = pair.partition.block_of(h.identity());
  family.input_identity_block = k;
  for (std::size_t m = 1; m <= d; ++m) {
    const auto src = g_table.at(m, k);
    family.relabel.push_back(src);
    family.blocks.push_back(sorted(by_label[src - 1]));
  }

  for (std::size_t j = 1; j <= d; ++j) {
    for (std::size_t l = 1; l <= d; ++l) {
      const auto target = g_table.at(j, l);
      if (translate(h, pair.tuple[j - 1], family.blocks[l - 1]) != family.blocks[target - 1]) {
        throw ReconstructionFailure("h_" + std::to_string(j) + " F_" + std::to_string(l) + " is not F_" +
                                        std::to_string(target),
                                    j, l);
      }
    }
  }
  return family;
}

NormalIsoVerdict verify_normal_and_iso(const Group& h, const CosetFamily& family,
                                       const MultiplicationIndexTable& g_table) {
  NormalIsoVerdict v;
  const auto& f1 = family.subgroup();
  const std::set<Element> in_f1(f1.begin(), f1.end());
  auto fail = [&](std::string what, std::vector<Element> w) {
    v.violated = std::move(what);
    v.witnesses = std::move(w);
    return v;
  };

  if (!in_f1.count(h.identity())) return fail("e_H in F_1", {h.identity()});
  for (const auto& a : f1) {
    if (!in_f1.count(h.inv(a))) return fail("a^-1 in F_1 for a in F_1", {a});
    for (const auto& b : f1) {
      if (!in_f1.count(h.mul(a, b))) return fail("ab in F_1 for a, b in F_1", {a, b});
    }
  }
  v.subgroup = true;

  for (const auto& x : h.elements()) {
    for (const auto& a : f1) {
      if (!in_f1.count(h.mul(h.mul(x, a), h.inv(x)))) return fail("x F_1 x^-1 = F_1", {x, a});
    }
  }
  v.normal = true;

  const auto d = g_table.bound();
  if (family.blocks.size() != d) return fail("one coset per element of G", {});
  std::set<Element> seen;
  std::size_t total = 0;
  for (const auto& block : family.blocks) {
    if (block.empty()) return fail("F_j is non-empty", {});
    if (translate(h, block.front(), f1) != block) return fail("F_j = x F_1 for x in F_j", {block.front()});
    seen.insert(block.begin(), block.end());
    total += block.size();
  }
  if (seen.size() != total || total != *h.order()) return fail("the cosets partition H", {});
  v.bijective = true;

  for (std::size_t k = 1; k <= d; ++k) {
    for (std::size_t j = 1; j <= d; ++j) {
      std::set<Element> product;
      for (const auto& a : family.blocks[k - 1]) {
        for (const auto& b : family.blocks[j - 1]) product.insert(h.mul(a, b));
      }
      const auto& target = family.blocks[g_table.at(k, j) - 1];
      if (!std::equal(product.begin(), product.end(), target.begin(), target.end())) {
        return fail("F_" + std::to_string(k) + " F_" + std::to_string(j) + " = F_pi(" + std::to_string(k) + "," +
                        std::to_string(j) + ")",
                    {family.blocks[k - 1].front(), family.blocks[j - 1].front()});
      }
    }
  }
  v.homomorphism = true;

  for (std::size_t j = 1; j <= d; ++j) v.isomorphism.emplace_back(j, family.blocks[j - 1]);
  v.holds = true;
  return v;
}

QVerdict q_group_refinement_check(const Group& h, const ConfigPair& pair, const CosetFamily& family,
                                  const MultiplicationIndexTable& g_table, std::uint64_t cap) {
  QVerdict q;
  const auto& f1 = family.subgroup();
  if (f1.size() == 1) {
    if (*h.order() != g_table.bound()) throw PreconditionError("trivial F_1 but |G| != |H|");
    q.status = QStatus::trivial_kernel;
    return q;
  }
  const auto e = h.identity();
  q.refined_blocks.push_back({e});
  std::vector<Element> rest;
  for (const auto& a : f1) {
    if (a != e) rest.push_back(a);
  }
  q.refined_blocks.push_back(rest);
  for (std::size_t l = 1; l < family.blocks.size(); ++l) q.refined_blocks.push_back(family.blocks[l]);

  const auto act = Action::left_translation(h);
  ConfigPair refined{std::vector<Element>(pair.tuple.begin() + 1, pair.tuple.end()),
                     Partition::explicit_blocks(q.refined_blocks)};
  q.refined_configurations = configurations_on(act, refined, act.points());
  std::set<std::size_t> refined_labels;
  for (const auto& c : q.refined_configurations) refined_labels.insert(c.entries.begin(), c.entries.end());

  const auto d = g_table.bound();
  const auto tuple_len = d - 1;
  const auto max_blocks = q.refined_blocks.size();
  std::uint64_t tuples = 1;
  for (std::size_t i = 0; i < tuple_len; ++i) tuples *= d;
  const auto pairs = tuples * partition_count(d, max_blocks);
  const auto limit = cap ? cap : default_cap();
  if (pairs > limit) throw ResourceCapExceeded("refinement search over pairs of G", pairs, limit);

  const auto target = canonical_key(q.refined_configurations);
  std::vector<std::size_t> tuple(tuple_len, 1);
  bool found = false;
  for_each_rgs(d, max_blocks, [&](const std::vector<std::size_t>& rgs) {
    const auto used = *std::max_element(rgs.begin(), rgs.end()) + 1;
    // every block of a partition of G appears as some C_0
    if (used != refined_labels.size()) {
      q.pairs_searched += tuples;
      q.rejected_by_label_count += tuples;
      return true;
    }
    for (std::uint64_t t = 0; t < tuples; ++t) {
      auto rest_t = t;
      for (std::size_t i = tuple_len; i-- > 0;) {
        tuple[i] = 1 + static_cast<std::size_t>(rest_t % d);
        rest_t /= d;
      }
      std::set<Configuration> con;
      for (std::size_t x = 1; x <= d; ++x) {
        Configuration c;
        c.entries.push_back(rgs[x - 1] + 1);
        for (auto g : tuple) c.entries.push_back(rgs[g_table.at(g, x) - 1] + 1);
        con.insert(std::move(c));
      }
      ++q.pairs_searched;
      if (canonical_key(ConfigSet(con.begin(), con.end())) == target) {
        found = true;
        for (auto g : tuple) q.witness_tuple.push_back(g_table.elements()[g - 1]);
        q.witness_blocks.assign(used, {});
        for (std::size_t x = 0; x < d; ++x) q.witness_blocks[rgs[x]].push_back(g_table.elements()[x]);
        return false;
      }
    }
    return true;
  });
  q.status = found ? QStatus::refinement_realized : QStatus::refinement_unrealizable;
  return q;
}

std::vector<std::vector<Element>> subgroups(const Group& group) {
  if (!group.is_finite()) throw PreconditionError("subgroup enumeration needs a finite group");
  const auto elems = group.elements();
  std::set<std::vector<Element>> found{{group.identity()}};
  std::vector<std::vector<Element>> frontier{{group.identity()}};
  while (!frontier.empty()) {
    std::vector<std::vector<Element>> next;
    for (const auto& k : frontier) {
      const std::set<Element> in_k(k.begin(), k.end());
      for (const auto& g : elems) {
        if (in_k.count(g)) continue;
        auto gens = k;
        gens.push_back(g);
        auto s = generated_subgroup(group, gens);
        if (found.insert(s).second) next.push_back(std::move(s));
      }
    }
    frontier = std::move(next);
  }
  std::vector<std::vector<Element>> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

std::vector<std::vector<Element>> normal_subgroups(const Group& group) {
  std::vector<std::vector<Element>> out;
  const auto elems = group.elements();
  for (auto& s : subgroups(group)) {
    const std::set<Element> in_s(s.begin(), s.end());
    bool normal = true;
    for (const auto& x : elems) {
      for (const auto& a : s) {
        if (!in_s.count(group.mul(group.mul(x, a), group.inv(x)))) {
          normal = false;
          break;
        }
      }
      if (!normal) break;
    }
    if (normal) out.push_back(std::move(s));
  }
  return out;
}

Quotient quotient_group(const Group& h, const std::vector<Element>& normal) {
  if (!h.is_finite()) throw PreconditionError("quotients need a finite group");
  const auto elems = h.elements();
  const std::set<Element> in_n(normal.begin(), normal.end());
  if (!in_n.count(h.identity())) throw InputError("the subgroup must contain the identity");

  std::map<Element, std::size_t> coset_of;
  std::vector<std::vector<Element>> cosets{sorted(normal)};
  for (const auto& a : normal) coset_of[a] = 0;
  for (const auto& x : elems) {
    if (coset_of.count(x)) continue;
    auto c = translate(h, x, normal);
    for (const auto& y : c) {
      if (coset_of.count(y)) throw InputError("the subgroup's translates overlap; it is not a subgroup");
      coset_of[y] = cosets.size();
    }
    cosets.push_back(std::move(c));
  }
  const auto k = cosets.size();
  std::size_t total = 0;
  for (const auto& c : cosets) total += c.size();
  if (total != elems.size()) throw InputError("the cosets do not cover the group");

  CayleyTable table(k, std::vector<std::size_t>(k));
  std::vector<std::string> labels;
  std::vector<Element> reps;
  for (std::size_t a = 0; a < k; ++a) {
    reps.push_back(cosets[a].front());
    labels.push_back(h.format(cosets[a].front()) + "N");
    for (std::size_t b = 0; b < k; ++b) {
      // well defined only for normal subgroups
      std::set<std::size_t> targets;
      for (const auto& x : cosets[a]) targets.insert(coset_of.at(h.mul(x, cosets[b].front())));
      if (targets.size() != 1) throw InputError("the subgroup is not normal");
      table[a][b] = *targets.begin();
    }
  }
  return Quotient{Group::finite_cayley(std::move(table), 0, std::move(labels), h.name() + "/N"), std::move(cosets),
                  std::move(reps)};
}

}  // namespace confpara
