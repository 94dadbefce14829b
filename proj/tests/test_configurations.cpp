#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "confpara/catalog.hpp"
#include "confpara/codec.hpp"
#include "confpara/configurations.hpp"
#include "confpara/equivalence.hpp"
#include "confpara/errors.hpp"
#include "support.hpp"

using namespace confpara;

namespace {

Configuration cfg(std::initializer_list<std::size_t> e) { return Configuration{std::vector<std::size_t>(e)}; }

std::vector<Point> idx(std::initializer_list<std::size_t> v) {
  std::vector<Point> out;
  for (auto i : v) out.push_back(Point::index(i));
  return out;
}

std::uint64_t zz(std::int64_t n) { return n > 0 ? static_cast<std::uint64_t>(2 * n - 1) : static_cast<std::uint64_t>(-2 * n); }

// Brute force straight from the definition, using only the Cayley table.
std::set<std::vector<std::size_t>> naive_con(const CayleyTable& t, const std::vector<std::size_t>& tuple,
                                             const std::vector<std::size_t>& labels) {
  std::set<std::vector<std::size_t>> out;
  for (std::size_t x = 0; x < t.size(); ++x) {
    std::vector<std::size_t> row{labels[x]};
    for (auto g : tuple) row.push_back(labels[t[g][x]]);
    out.insert(row);
  }
  return out;
}

std::set<std::vector<std::size_t>> as_rows(const ConfigSet& s) {
  std::set<std::vector<std::size_t>> out;
  for (const auto& c : s) out.insert(c.entries);
  return out;
}

// Z minus {0} enumerated as 1, -1, 2, -2, ...
Partition zero_and_rest() {
  BlockEnumerator rest;
  rest.nth = [](std::uint64_t k) { return Point{codec::zigzag_unrank(k + 1)}; };
  rest.position = [](const Point& x) { return codec::zigzag_rank(x.data[0]) - 1; };
  return Partition::classifier("zero-rest", [](const Point& x) -> std::size_t { return x.data[0] == 0 ? 1 : 2; }, 2,
                               {{2, rest}});
}

Window interval(std::int64_t lo, std::int64_t hi) {
  std::vector<Point> pts;
  for (auto k = lo; k <= hi; ++k) pts.push_back(Point{k});
  return custom_window(pts);
}

}  // namespace

TEST_CASE("configurations_finite examples") {
  const auto z2 = catalog::cyclic(2);
  const auto a2 = Action::left_translation(z2);
  ConfigPair p{{Element::index(1)}, Partition::explicit_blocks({idx({0}), idx({1})})};
  CHECK(configurations_finite(a2, p) == ConfigSet{cfg({1, 2}), cfg({2, 1})});

  const auto z3 = catalog::cyclic(3);
  const auto a3 = Action::left_translation(z3);
  ConfigPair q{{Element::index(1)}, Partition::explicit_blocks({idx({0}), idx({1, 2})})};
  CHECK(configurations_finite(a3, q) == ConfigSet{cfg({1, 2}), cfg({2, 1}), cfg({2, 2})});

  ConfigPair one{{Element::index(1), Element::index(2), Element::index(2)},
                 Partition::explicit_blocks({idx({0, 1, 2})})};
  CHECK(configurations_finite(a3, one) == ConfigSet{cfg({1, 1, 1, 1})});
}

TEST_CASE("configurations_finite input errors") {
  const auto z3 = catalog::cyclic(3);
  const auto a3 = Action::left_translation(z3);
  ConfigPair missing{{Element::index(1)}, Partition::explicit_blocks({idx({0}), idx({1})})};
  CHECK_THROWS_AS(configurations_finite(a3, missing), InputError);
  ConfigPair outside{{Element::index(1)}, Partition::explicit_blocks({idx({0, 1, 2}), idx({5})})};
  CHECK_THROWS_AS(configurations_finite(a3, outside), InputError);
  ConfigPair bad_tuple{{Element::index(3)}, Partition::explicit_blocks({idx({0, 1, 2})})};
  CHECK_THROWS_AS(configurations_finite(a3, bad_tuple), InputError);
  CHECK_THROWS_AS(Partition::explicit_blocks({idx({0, 1}), idx({1, 2})}), InputError);
  CHECK_THROWS_AS(Partition::explicit_blocks({idx({0, 1, 2}), {}}), InputError);

  const auto z4 = catalog::cyclic(4);
  ConfigPair not_gen{{Element::index(2)}, Partition::explicit_blocks({idx({0, 1, 2, 3})}), true};
  CHECK_THROWS_AS(configurations_finite(Action::left_translation(z4), not_gen), InputError);
  not_gen.tuple = {Element::index(3)};
  CHECK_NOTHROW(configurations_finite(Action::left_translation(z4), not_gen));
}

TEST_CASE("cells examples") {
  const auto z2 = catalog::cyclic(2);
  const auto a2 = Action::left_translation(z2);
  ConfigPair p{{Element::index(1)}, Partition::explicit_blocks({idx({0}), idx({1})})};
  const auto c = cells(a2, p, cfg({1, 2}));
  CHECK(c.cells[0] == idx({0}));
  CHECK(c.cells[1] == idx({1}));

  const auto z3 = catalog::cyclic(3);
  const auto a3 = Action::left_translation(z3);
  ConfigPair q{{Element::index(1)}, Partition::explicit_blocks({idx({0}), idx({1, 2})})};
  const auto d = cells(a3, q, cfg({2, 2}));
  CHECK(d.cells[0] == idx({1}));
  CHECK(d.cells[1] == idx({2}));
  CHECK(cells(a3, q, cfg({1, 1})).cells[0].empty());
  CHECK_THROWS_AS(cells(a3, q, cfg({1, 3})), InputError);
  CHECK_THROWS_AS(cells(a3, q, cfg({1})), InputError);

  ConfigPair one{{Element::index(1), Element::index(2)}, Partition::explicit_blocks({idx({0, 1, 2})})};
  CHECK(cells(a3, one, cfg({1, 1, 1})).cells[0] == idx({0, 1, 2}));
}

TEST_CASE("verify_refinement examples") {
  const auto z2 = catalog::cyclic(2);
  const auto a2 = Action::left_translation(z2);
  ConfigPair p{{Element::index(1)}, Partition::explicit_blocks({idx({0}), idx({1})})};
  CHECK(verify_refinement(a2, p).holds);
  ConfigPair one{{Element::index(1)}, Partition::explicit_blocks({idx({0, 1})})};
  CHECK(verify_refinement(a2, one).holds);

  const auto z4 = catalog::cyclic(4);
  const auto a4 = Action::left_translation(z4);
  ConfigPair q{{Element::index(1), Element::index(2)}, Partition::explicit_blocks({idx({0, 3}), idx({1, 2})})};
  const auto points = a4.points();
  auto cs = all_cells(a4, q, points);
  REQUIRE(verify_refinement(a4, q, cs, points).holds);
  // drop a point from one cell
  const auto dropped = cs[1].cells[2].back();
  cs[1].cells[2].pop_back();
  const auto r = verify_refinement(a4, q, cs, points);
  CHECK_FALSE(r.holds);
  REQUIRE(r.violation);
  CHECK(r.violation->point == dropped);
  CHECK(r.violation->position == 2);
}

TEST_CASE("configurations agree with the naive oracle on small groups") {
  testing::Rng rng(20240601);
  for (const auto& [name, g] : catalog::fixture_groups()) {
    CAPTURE(name);
    const auto act = Action::left_translation(g);
    const auto points = act.points();
    const auto n_elem = *g.order();
    for (int trial = 0; trial < 40; ++trial) {
      const auto len = testing::pick(rng, 4);
      const auto m = 1 + testing::pick(rng, 4);
      std::vector<std::size_t> tuple_idx;
      ConfigPair pair{{}, Partition::explicit_blocks({points})};
      for (std::size_t i = 0; i < len; ++i) {
        tuple_idx.push_back(testing::pick(rng, n_elem));
        pair.tuple.push_back(Element::index(tuple_idx.back()));
      }
      const auto labels = testing::random_labels(rng, points.size(), m);
      pair.partition = testing::blocks_from_labels(points, labels);
      const auto con = configurations_finite(act, pair);
      CHECK(as_rows(con) == naive_con(g.cayley_table(), tuple_idx, labels));
      CHECK(std::is_sorted(con.begin(), con.end()));
      std::size_t bound = 1;
      for (std::size_t i = 0; i <= len; ++i) bound *= m;
      CHECK(con.size() <= std::min(points.size(), bound));
      CHECK(verify_refinement(act, pair).holds);
      for (const auto& c : con) CHECK_FALSE(cells(act, pair, c).cells[0].empty());
    }
  }
}

TEST_CASE("membership in Con is nonemptiness of the base cell") {
  const auto s3 = catalog::symmetric(3);
  const auto act = Action::left_translation(s3);
  const auto points = act.points();
  ConfigPair pair{{Element::index(1), Element::index(4)}, testing::blocks_from_labels(points, {1, 2, 2, 1, 3, 1})};
  const auto con = configurations_finite(act, pair);
  std::set<Configuration> in(con.begin(), con.end());
  for (std::size_t a = 1; a <= 3; ++a) {
    for (std::size_t b = 1; b <= 3; ++b) {
      for (std::size_t c = 1; c <= 3; ++c) {
        const auto conf = cfg({a, b, c});
        CHECK(in.count(conf) == (cells(act, pair, conf).cells[0].empty() ? 0u : 1u));
      }
    }
  }
}

TEST_CASE("countable prefixes") {
  const auto zi = Group::enumerated_integers();
  const auto lt = Action::left_translation(zi);
  const auto one = Element::index(zz(1));
  CountablePair pair{Sequence::with_tail({}, [one](std::size_t) { return one; }, "ones"),
                     singleton_partition(index_enumeration(zi))};
  const auto w = prefix(index_enumeration(zi), 5);
  const auto res = countable_config_prefixes(lt, pair, 2, w);
  CHECK_FALSE(res.exact);
  CHECK(res.window == w.describe());
  std::set<std::vector<std::size_t>> expect;
  for (std::int64_t x : {0, 1, -1, 2, -2}) expect.insert({zz(x) + 1, zz(x + 1) + 1, zz(x + 1) + 1});
  CHECK(as_rows(res.prefixes) == expect);

  // trivial action: every prefix is constant
  const auto triv = Action::trivial(zi, std::nullopt);
  CountablePair t{Sequence::with_tail({}, [](std::size_t i) { return Element::index(i * i); }, "squares"),
                  Partition::classifier("mod3", [](const Point& x) -> std::size_t { return x.as_index() % 3 + 1; }, 3)};
  const auto tw = prefix(index_enumeration(zi), 12);
  for (const auto& c : countable_config_prefixes(triv, t, 4, tw).prefixes) {
    CHECK(std::all_of(c.entries.begin(), c.entries.end(), [&](std::size_t v) { return v == c.entries[0]; }));
  }

  // finite X routes to the finite machinery and is exact
  const auto z4 = catalog::cyclic(4);
  CountablePair f{Sequence::eventually_identity({Element::index(1)}, z4.identity()),
                  Partition::explicit_blocks({idx({0, 1}), idx({2, 3})})};
  const auto fr = countable_config_prefixes(Action::left_translation(z4), f, 3, Window{});
  CHECK(fr.exact);
  CHECK(fr.prefixes == ConfigSet{cfg({1, 1, 1, 1}), cfg({1, 2, 1, 1}), cfg({2, 1, 2, 2}), cfg({2, 2, 2, 2})});

  CountablePair zero{Sequence::eventually_identity({}, Element::index(0)),
                     Partition::classifier("broken", [](const Point&) -> std::size_t { return 0; }, std::nullopt)};
  CHECK_THROWS_AS(countable_config_prefixes(lt, zero, 1, w), InputError);
}

TEST_CASE("singleton_split examples") {
  const auto z = Group::free_abelian(1);
  const auto lt = Action::left_translation(z);
  ConfigPair pair{{Element{1}}, zero_and_rest()};
  const auto split = singleton_split(z, pair, 2);
  CHECK(split.sequence.at(1) == Element{1});
  for (std::size_t i = 2; i < 10; ++i) CHECK(split.sequence.at(i) == Element{0});
  CHECK(split.partition.block_of(Point{0}) == 1);
  for (std::uint64_t k = 0; k < 20; ++k) {
    CHECK(split.partition.block_of(Point{codec::zigzag_unrank(k + 1)}) == 2 + k);
  }
  CHECK_FALSE(split.partition.block_count().has_value());

  // the whole of Z as one enumerated block
  BlockEnumerator all;
  all.nth = [](std::uint64_t k) { return Point{codec::zigzag_unrank(k)}; };
  all.position = [](const Point& x) { return codec::zigzag_rank(x.data[0]); };
  ConfigPair whole{{}, Partition::classifier("all", [](const Point&) -> std::size_t { return 1; }, 1, {{1, all}})};
  const auto s1 = singleton_split(z, whole, 1);
  std::set<std::size_t> labels;
  for (std::int64_t x = -20; x <= 20; ++x) CHECK(labels.insert(s1.partition.block_of(Point{x})).second);

  CHECK_THROWS_AS(singleton_split(z, pair, 1), PreconditionError);
  ConfigPair no_enum{{Element{1}}, Partition::classifier("parity", [](const Point& x) -> std::size_t {
                                     return x.data[0] % 2 == 0 ? 1 : 2;
                                   }, 2)};
  CHECK_THROWS_AS(singleton_split(z, no_enum, 2), PreconditionError);
  BlockEnumerator finite = all;
  finite.size = 3;
  ConfigPair fin{{}, Partition::classifier("all", [](const Point&) -> std::size_t { return 1; }, 1, {{1, finite}})};
  CHECK_THROWS_AS(singleton_split(z, fin, 1), PreconditionError);
}

TEST_CASE("split prefixes repeat the base label past the tuple") {
  // the entries after the original tuple are identities, so they repeat d_0
  const auto z = Group::free_abelian(1);
  const auto lt = Action::left_translation(z);
  ConfigPair pair{{Element{1}, Element{-2}}, residue_partition(3, {{0}, {1, 2}})};
  const auto split = singleton_split(z, pair, 2);
  const auto n = pair.tuple.size();
  const auto res = countable_config_prefixes(lt, split, 6, interval(-40, 40));
  for (const auto& d : res.prefixes) {
    for (std::size_t j = n + 1; j < d.size(); ++j) CHECK(d[j] == d[0]);
  }
}

TEST_CASE("merge_blocks undoes singleton_split") {
  const auto z = Group::free_abelian(1);
  const auto lt = Action::left_translation(z);
  const auto win = interval(-30, 30);

  // Z3 residues embedded in Z
  ConfigPair pair{{Element{1}}, residue_partition(3, {{0}, {1, 2}})};
  const auto base = configurations_on(lt, pair, win.points);
  CHECK(base == ConfigSet{cfg({1, 2}), cfg({2, 1}), cfg({2, 2})});
  const auto split = singleton_split(z, pair, 2);
  const auto merged = merge_blocks(split, 2);
  CHECK(merged.tuple == pair.tuple);
  CHECK(configurations_on(lt, merged, win.points) == base);
  const auto pre = countable_config_prefixes(lt, split, 1, win).prefixes;
  CHECK(merge_configurations(pre, 2) == base);

  CHECK_THROWS_AS(merge_blocks(CountablePair{Sequence::with_tail({}, [](std::size_t) { return Element{1}; }, "t"),
                                             pair.partition},
                               2),
                  PreconditionError);
}

TEST_CASE("merge of all singletons at m = 2") {
  const auto zi = Group::enumerated_integers();
  CountablePair pair{Sequence::eventually_identity({Element::index(1)}, zi.identity()),
                     singleton_partition(index_enumeration(zi))};
  const auto merged = merge_blocks(pair, 2);
  CHECK(merged.partition.block_count() == std::optional<std::size_t>(2));
  CHECK(merged.partition.block_of(Point::index(0)) == 1);
  for (std::uint64_t i = 1; i < 30; ++i) CHECK(merged.partition.block_of(Point::index(i)) == 2);
}

TEST_CASE("randomized split and merge roundtrip") {
  testing::Rng rng(99);
  const auto z = Group::free_abelian(1);
  const auto lt = Action::left_translation(z);
  for (int trial = 0; trial < 30; ++trial) {
    const auto modulus = 2 + static_cast<std::int64_t>(testing::pick(rng, 5));
    const auto labels = testing::random_labels(rng, static_cast<std::size_t>(modulus), 3);
    const auto m = *std::max_element(labels.begin(), labels.end());
    std::vector<std::vector<std::int64_t>> blocks(m);
    for (std::int64_t r = 0; r < modulus; ++r) blocks[labels[static_cast<std::size_t>(r)] - 1].push_back(r);
    ConfigPair pair{{}, residue_partition(modulus, blocks)};
    const auto n = 1 + testing::pick(rng, 3);
    for (std::size_t i = 0; i < n; ++i) pair.tuple.push_back(Element{static_cast<std::int64_t>(testing::pick(rng, 9)) - 4});
    const auto win = interval(-25, 25);
    const auto base = configurations_on(lt, pair, win.points);
    const auto split = singleton_split(z, pair, m);
    CHECK(merge_configurations(countable_config_prefixes(lt, split, n, win).prefixes, m) == base);
    CHECK(configurations_on(lt, merge_blocks(split, m), win.points) == base);
  }
}

TEST_CASE("restricted growth strings") {
  const std::vector<std::uint64_t> bell{1, 1, 2, 5, 15, 52, 203, 877, 4140};
  for (std::size_t p = 0; p < bell.size(); ++p) CHECK(partition_count(p, p) == bell[p]);
  CHECK(partition_count(8, 4) == 1 + 127 + 966 + 1701);
  CHECK(partition_count(5, 0) == 0);
  for (std::size_t p = 1; p <= 6; ++p) {
    for (std::size_t m = 1; m <= 6; ++m) {
      std::set<std::vector<std::size_t>> seen;
      std::vector<std::size_t> prev;
      for_each_rgs(p, m, [&](const std::vector<std::size_t>& a) {
        CHECK(a[0] == 0);
        std::size_t mx = 0;
        for (std::size_t i = 1; i < a.size(); ++i) {
          CHECK(a[i] <= mx + 1);
          mx = std::max(mx, a[i]);
        }
        CHECK(mx < m);
        CHECK((prev.empty() || prev < a));
        prev = a;
        seen.insert(a);
        return true;
      });
      CHECK(seen.size() == partition_count(p, m));
    }
  }
}

TEST_CASE("canonical keys ignore block labels") {
  testing::Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    ConfigSet s;
    const auto k = 1 + testing::pick(rng, 5);
    for (int r = 0; r < 6; ++r) s.push_back(cfg({1 + testing::pick(rng, k), 1 + testing::pick(rng, k), 1 + testing::pick(rng, k)}));
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    std::vector<std::size_t> sigma(k);
    for (std::size_t i = 0; i < k; ++i) sigma[i] = i + 1;
    std::shuffle(sigma.begin(), sigma.end(), rng);
    ConfigSet t;
    for (const auto& c : s) {
      Configuration d;
      for (auto v : c.entries) d.entries.push_back(sigma[v - 1] + 10);
      t.push_back(d);
    }
    std::sort(t.begin(), t.end());
    CHECK(canonical_key(s) == canonical_key(t));
    CHECK(equal_up_to_relabeling(s, t));
    CHECK(canonical_form(canonical_form(s)) == canonical_form(s));
  }
  CHECK_FALSE(equal_up_to_relabeling(ConfigSet{cfg({1, 2}), cfg({2, 1})}, ConfigSet{cfg({1, 1}), cfg({2, 2})}));
}

TEST_CASE("equivalence of a group with itself") {
  for (const auto& name : {"Z2", "Z3", "Z4", "S3"}) {
    for (const auto& [gname, g] : catalog::fixture_groups()) {
      if (gname != name) continue;
      const auto a = Action::left_translation(g);
      const auto v = config_equiv_bounded(a, a, 2, 3);
      CHECK(v.equivalent);
      CHECK_FALSE(v.witness);
      CHECK(v.classes_a == v.classes_b);
    }
  }
}

TEST_CASE("Z4 and Z2xZ2 are distinguished") {
  const auto groups = catalog::fixture_groups();
  const auto z4 = Action::left_translation(groups[2].second);
  const auto v4 = Action::left_translation(groups[3].second);
  const auto v = config_equiv_bounded(z4, v4, 2, 4);
  REQUIRE_FALSE(v.equivalent);
  REQUIRE(v.witness);
  const auto& w = *v.witness;
  const auto& from = w.side == WitnessSide::a ? z4 : v4;
  const auto& other = w.side == WitnessSide::a ? v4 : z4;
  ConfigPair wp{w.tuple, Partition::explicit_blocks(w.blocks)};
  CHECK(configurations_finite(from, wp) == w.configurations);
  // no pair of the other side has this Con set up to relabeling
  const auto pts = other.points();
  const auto elems = other.group().elements();
  bool found = false;
  for_each_rgs(pts.size(), 4, [&](const std::vector<std::size_t>& rgs) {
    std::vector<std::size_t> labels;
    for (auto r : rgs) labels.push_back(r + 1);
    for (const auto& g1 : elems) {
      for (const auto& g2 : elems) {
        ConfigPair op{{g1, g2}, testing::blocks_from_labels(pts, labels)};
        if (equal_up_to_relabeling(configurations_finite(other, op), w.configurations)) found = true;
      }
    }
    return !found;
  });
  CHECK_FALSE(found);

  // swapping the arguments keeps the verdict
  const auto s = config_equiv_bounded(v4, z4, 2, 4);
  CHECK_FALSE(s.equivalent);
  CHECK(s.classes_a == v.classes_b);
  CHECK(s.classes_b == v.classes_a);

  const auto again = config_equiv_bounded(z4, v4, 2, 4);
  CHECK(again.witness->tuple == w.tuple);
  CHECK(again.witness->blocks == w.blocks);
}

TEST_CASE("trivial action against left translation") {
  const auto z2 = catalog::cyclic(2);
  const auto v = config_equiv_bounded(Action::trivial(z2, 2), Action::left_translation(z2), 1, 2);
  CHECK_FALSE(v.equivalent);
  REQUIRE(v.witness);
  CHECK(v.witness->side == WitnessSide::b);
}

TEST_CASE("equivalence limits and errors") {
  const auto z4 = Action::left_translation(catalog::cyclic(4));
  EquivalenceOptions tiny;
  tiny.cap = 10;
  CHECK_THROWS_AS(config_equiv_bounded(z4, z4, 2, 4, tiny), ResourceCapExceeded);
  CHECK_THROWS_AS(config_equiv_bounded(z4, z4, 2, 9), InputError);
  CHECK_THROWS_AS(config_equiv_bounded(z4, z4, 2, 0), InputError);
  const auto f2 = Action::left_translation(Group::free(2));
  CHECK_THROWS_AS(config_equiv_bounded(z4, f2, 1, 2), InputError);
  CHECK_THROWS_AS(config_equiv_bounded(f2, f2, 1, 2), InputError);
}

TEST_CASE("windowed equivalence over countable groups") {
  const auto f2g = Group::free(2);
  const auto f2 = Action::left_translation(f2g);
  EquivalenceOptions o;
  o.window_a = ball(f2g, 1);
  o.window_b = ball(f2g, 1);
  const auto v = config_equiv_bounded(f2, f2, 1, 2, o);
  CHECK(v.equivalent);
  CHECK(v.windowed);
  CHECK(v.window_a == "ball(1)");

  const auto zg = Group::free_abelian(1);
  o.window_b = box(zg, 2);
  const auto d = config_equiv_bounded(f2, Action::left_translation(zg), 1, 2, o);
  CHECK(d.windowed);
  // every reported Con set is exact for its pair
  if (d.witness) {
    const auto& w = *d.witness;
    const auto& act = w.side == WitnessSide::a ? f2 : Action::left_translation(zg);
    std::set<Point> listed;
    for (const auto& b : w.blocks) listed.insert(b.begin(), b.end());
    const auto k = w.blocks.size();
    const auto blocks = w.blocks;
    ConfigPair wp{w.tuple, Partition::classifier("w", [blocks, k](const Point& x) -> std::size_t {
                    for (std::size_t i = 0; i < k; ++i) {
                      if (std::find(blocks[i].begin(), blocks[i].end(), x) != blocks[i].end()) return i + 1;
                    }
                    return k + 1;
                  }, k + 1)};
    const auto big = w.side == WitnessSide::a ? ball(f2g, 4) : box(zg, 30);
    CHECK(configurations_on(act, wp, big.points) == w.configurations);
  }
}
