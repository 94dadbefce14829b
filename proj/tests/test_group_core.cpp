#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "confpara/catalog.hpp"
#include "confpara/codec.hpp"
#include "confpara/enumeration.hpp"
#include "confpara/errors.hpp"
#include "confpara/window.hpp"
#include "support.hpp"

using namespace confpara;

namespace {

// hand-written zigzag: 0, 1, -1, 2, -2, ...
std::uint64_t zz(std::int64_t n) { return n > 0 ? static_cast<std::uint64_t>(2 * n - 1) : static_cast<std::uint64_t>(-2 * n); }

}  // namespace

TEST_CASE("mul_inv examples") {
  const auto f2 = Group::free(2);
  const auto r = mul_inv(f2, f2.parse("a*b^-1"), f2.parse("b"));
  CHECK(r.product == f2.parse("a"));
  CHECK(f2.format(r.inverse) == "b*a^-1");

  // Z4 as indices 0..3, table built by hand
  CayleyTable t{{0, 1, 2, 3}, {1, 2, 3, 0}, {2, 3, 0, 1}, {3, 0, 1, 2}};
  const auto z4 = Group::finite_cayley(t, 0);
  CHECK(z4.mul(Element::index(3), Element::index(2)) == Element::index(1));

  const auto zi = Group::enumerated_integers();
  CHECK(zz(2) == 3);
  CHECK(zz(3) == 5);
  CHECK(zi.mul(Element::index(zz(2)), Element::index(zz(3))) == Element::index(zz(5)));
  CHECK(zi.inv(Element::index(zz(4))) == Element::index(zz(-4)));
}

TEST_CASE("element validation errors") {
  const auto z4 = catalog::cyclic(4);
  CHECK_THROWS_AS(z4.validate(Element::index(4)), InputError);
  const auto f2 = Group::free(2);
  CHECK_THROWS_AS(f2.parse("a*c"), InputError);
  CHECK_THROWS_AS(f2.parse("a**b"), InputError);
  CHECK_THROWS_AS(f2.validate(Element{1, -1}), InputError);
}

TEST_CASE("free word syntax roundtrips") {
  const auto f2 = Group::free(2);
  for (const char* w : {"e", "a", "a^-1", "a^2*b^-3*a", "b*a^-1"}) CHECK(f2.format(f2.parse(w)) == w);
  CHECK(f2.parse("a*a^-1") == f2.identity());
  CHECK(f2.parse("1") == f2.identity());
}

TEST_CASE("act examples") {
  const auto z4 = catalog::cyclic(4);
  const auto triv = Action::trivial(z4, 3);
  for (std::size_t g = 0; g < 4; ++g) {
    for (std::size_t x = 0; x < 3; ++x) CHECK(triv.act(Element::index(g), Point::index(x)) == Point::index(x));
  }
  const auto f2 = Group::free(2);
  const auto lt = Action::left_translation(f2);
  CHECK(lt.act(f2.parse("a"), f2.parse("b")) == f2.parse("a*b"));

  const auto z = Group::free_abelian(1);
  const auto prod = Action::product(Action::left_translation(z));
  CHECK(prod.act(Element{3}, Point{5, 7}) == Point{8, 7});
  CHECK_THROWS_AS(prod.validate(Point{5, -1}), InputError);
}

TEST_CASE("orbit and stabilizer examples") {
  const auto z4 = catalog::cyclic(4);
  const auto triv = Action::trivial(z4, 2);
  const auto t = orbit_and_stabilizer(triv, Point::index(1), 0);
  CHECK(t.orbit == std::vector<Point>{Point::index(1)});
  CHECK(t.stabilizer.size() == 4);
  CHECK(t.exact);

  const auto lt = orbit_and_stabilizer(Action::left_translation(z4), Point::index(0), 0);
  CHECK(lt.orbit.size() == 4);
  CHECK(lt.stabilizer == std::vector<Element>{Element::index(0)});

  const auto z = Group::free_abelian(1);
  const auto p = orbit_and_stabilizer(Action::product(Action::left_translation(z)), Point{0, 3}, 10);
  CHECK_FALSE(p.exact);
  CHECK(p.stabilizer == std::vector<Element>{Element{0}});
  CHECK(p.orbit.size() == 21);
  for (const auto& y : p.orbit) CHECK(y.data.at(1) == 3);
}

TEST_CASE("window examples") {
  const auto f2 = Group::free(2);
  const auto b1 = ball(f2, 1);
  std::vector<Element> expect{f2.identity(), f2.parse("a"), f2.parse("a^-1"), f2.parse("b"), f2.parse("b^-1")};
  CHECK(b1.points == expect);

  // oracle: reduce every word of length <= 2 over the four letters
  std::set<std::vector<std::int64_t>> words{{}};
  const std::vector<std::int64_t> letters{1, -1, 2, -2};
  for (auto x : letters) {
    words.insert(testing::reduce_word({x}));
    for (auto y : letters) words.insert(testing::reduce_word({x, y}));
  }
  CHECK(ball(f2, 2).size() == words.size());
  CHECK(words.size() == 17);

  const auto z = Group::free_abelian(1);
  const auto b3 = box(z, 3);
  REQUIRE(b3.size() == 7);
  for (std::int64_t k = -3; k <= 3; ++k) CHECK(b3.points[static_cast<std::size_t>(k + 3)] == Element{k});

  CHECK_THROWS_AS(ball(f2, -1), InputError);
  CHECK_THROWS_AS(box(z, -2), InputError);
  CHECK_THROWS_AS(prefix(zigzag_enumeration(), -5), InputError);
}

TEST_CASE("window monotonicity") {
  const auto f2 = Group::free(2);
  const auto z2 = Group::free_abelian(2);
  const auto lat = Group::enumerated_lattice();
  for (std::int64_t r = 0; r < 4; ++r) {
    CHECK(is_subset(ball(f2, r), ball(f2, r + 1)));
    CHECK(is_subset(box(z2, r), box(z2, r + 1)));
    CHECK(is_subset(box(lat, r), box(lat, r + 1)));
    CHECK(is_subset(prefix(shortlex_enumeration(2), r * 7), prefix(shortlex_enumeration(2), r * 7 + 1)));
  }
  // ball sizes 1 + 4 * (3^r - 1) / 2 computed without the library
  std::int64_t p = 1;
  for (std::int64_t r = 0; r <= 5; ++r) {
    CHECK(static_cast<std::int64_t>(ball(f2, r).size()) == 1 + 2 * (p - 1));
    p *= 3;
  }
}

TEST_CASE("is_generating examples") {
  const auto z4 = catalog::cyclic(4);
  CHECK(is_generating(z4, {Element::index(1)}));
  CHECK_FALSE(is_generating(z4, {Element::index(2)}));
  const auto v4 = catalog::fixture_groups()[3].second;
  REQUIRE(v4.name() == "Z2xZ2");
  // (1,0) is index 2 and (0,1) is index 1
  CHECK(is_generating(v4, {Element::index(2), Element::index(1)}));
  CHECK_FALSE(is_generating(v4, {Element::index(3)}));
  CHECK_THROWS_AS(is_generating(Group::free(2), {}), PreconditionError);
}

TEST_CASE("fixture groups satisfy the group axioms") {
  const std::vector<std::size_t> orders{2, 3, 4, 4, 5, 6, 6, 7, 8, 8, 8, 8, 8};
  const auto groups = catalog::fixture_groups();
  REQUIRE(groups.size() == orders.size());
  for (std::size_t k = 0; k < groups.size(); ++k) {
    const auto& g = groups[k].second;
    CAPTURE(groups[k].first);
    CHECK(*g.order() == orders[k]);
    const auto& t = g.cayley_table();
    const auto n = t.size();
    for (std::size_t a = 0; a < n; ++a) {
      std::set<std::size_t> row(t[a].begin(), t[a].end()), col;
      for (std::size_t b = 0; b < n; ++b) col.insert(t[b][a]);
      CHECK(row.size() == n);
      CHECK(col.size() == n);
    }
    const auto e = g.identity();
    for (const auto& a : g.elements()) {
      CHECK(g.mul(g.inv(a), a) == e);
      CHECK(g.mul(a, e) == a);
      for (const auto& b : g.elements()) {
        for (const auto& c : g.elements()) CHECK(g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)));
      }
    }
  }
}

TEST_CASE("finite_cayley rejects broken tables") {
  CHECK_THROWS_AS(Group::finite_cayley({{0, 1}, {1, 1}}, 0), InputError);
  CHECK_THROWS_AS(Group::finite_cayley({{1, 0}, {0, 1}}, 0), InputError);
  // Latin square with identity 0 that is not associative
  CayleyTable loop{{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK_THROWS_AS(Group::finite_cayley(loop, 0), InputError);
}

TEST_CASE("action axioms on windows") {
  testing::Rng rng(7);
  const auto f2 = Group::free(2);
  const auto w = ball(f2, 3).points;
  const auto lt = Action::left_translation(f2);
  for (int k = 0; k < 300; ++k) {
    const auto& g1 = w[testing::pick(rng, w.size())];
    const auto& g2 = w[testing::pick(rng, w.size())];
    const auto& x = w[testing::pick(rng, w.size())];
    CHECK(lt.act(g1, lt.act(g2, x)) == lt.act(f2.mul(g1, g2), x));
    CHECK(lt.act(f2.identity(), x) == x);
    CHECK(f2.mul(f2.inv(x), x) == f2.identity());
  }
  const auto lat = Group::enumerated_lattice();
  const auto bw = box(lat, 3).points;
  const auto prod = Action::product(Action::left_translation(lat));
  for (int k = 0; k < 300; ++k) {
    const auto& g1 = bw[testing::pick(rng, bw.size())];
    const auto& g2 = bw[testing::pick(rng, bw.size())];
    const auto x = Action::with_layer(bw[testing::pick(rng, bw.size())], testing::pick(rng, 5));
    CHECK(prod.act(g1, prod.act(g2, x)) == prod.act(lat.mul(g1, g2), x));
  }
  for (const auto& [name, g] : catalog::fixture_groups()) {
    const auto a = Action::left_translation(g);
    for (const auto& g1 : g.elements()) {
      for (const auto& g2 : g.elements()) {
        for (const auto& x : a.points()) CHECK(a.act(g1, a.act(g2, x)) == a.act(g.mul(g1, g2), x));
      }
    }
  }
}

TEST_CASE("explicit action tables are checked") {
  const auto z2 = catalog::cyclic(2);
  CHECK_NOTHROW(Action::explicit_table(z2, {{0, 1, 2}, {1, 0, 2}}));
  CHECK_THROWS_AS(Action::explicit_table(z2, {{1, 0, 2}, {0, 1, 2}}), InputError);
  CHECK_THROWS_AS(Action::explicit_table(z2, {{0, 1, 2}, {1, 1, 2}}), InputError);
  const auto z4 = catalog::cyclic(4);
  // 1 acting as a transposition twice is not the action of 2 = identity-free element
  CHECK_THROWS_AS(Action::explicit_table(z4, {{0, 1}, {1, 0}, {1, 0}, {1, 0}}), InputError);
}

TEST_CASE("orbits of a finite action partition X") {
  const auto s3 = catalog::symmetric(3);
  // S3 acting on {0,1,2} by its permutations, plus two fixed points
  std::vector<std::vector<std::size_t>> table;
  for (const auto& p : s3.permutations()) {
    auto row = p;
    row.push_back(3);
    row.push_back(4);
    table.push_back(row);
  }
  const auto act = Action::explicit_table(s3, table);
  std::set<Point> seen;
  std::size_t total = 0;
  for (const auto& x : act.points()) {
    const auto os = orbit_and_stabilizer(act, x, 0);
    CHECK(os.orbit.size() * os.stabilizer.size() == 6);
    if (seen.count(os.orbit.front())) continue;
    for (const auto& y : os.orbit) CHECK(seen.insert(y).second);
    total += os.orbit.size();
  }
  CHECK(total == act.points().size());
}

TEST_CASE("codecs against hand oracles") {
  for (std::int64_t n = -50; n <= 50; ++n) {
    CHECK(codec::zigzag_rank(n) == zz(n));
    CHECK(codec::zigzag_unrank(zz(n)) == n);
  }
  for (std::uint64_t a = 0; a < 40; ++a) {
    for (std::uint64_t b = 0; b < 40; ++b) {
      const auto z = (a + b) * (a + b + 1) / 2 + b;
      CHECK(codec::cantor_pair(a, b) == z);
      CHECK(codec::cantor_unpair(z) == std::pair{a, b});
    }
  }
  const std::uint64_t big = 3'000'000'000ULL;
  CHECK(codec::cantor_unpair(codec::cantor_pair(big, 17)) == std::pair{big, std::uint64_t{17}});
  CHECK_THROWS_AS(codec::cantor_pair(1ULL << 40, 1ULL << 40), InputError);
  const std::vector<std::uint64_t> tup{4, 0, 9};
  CHECK(codec::tuple_unpair(codec::tuple_pair(tup), 3) == tup);
}

TEST_CASE("shortlex enumeration matches brute force") {
  // all reduced words up to length 4, sorted by (length, letter keys)
  std::vector<std::vector<std::int64_t>> words{{}};
  const std::vector<std::int64_t> letters{1, -1, 2, -2};  // a < a^-1 < b < b^-1
  std::vector<std::vector<std::int64_t>> frontier{{}};
  for (int len = 1; len <= 4; ++len) {
    std::vector<std::vector<std::int64_t>> next;
    for (const auto& w : frontier) {
      for (auto l : letters) {
        if (!w.empty() && w.back() == -l) continue;
        auto v = w;
        v.push_back(l);
        next.push_back(v);
      }
    }
    words.insert(words.end(), next.begin(), next.end());
    frontier = next;
  }
  for (std::size_t r = 0; r < words.size(); ++r) {
    CHECK(codec::shortlex_unrank(r, 2) == words[r]);
    CHECK(codec::shortlex_rank(words[r], 2) == r);
  }
  const auto e = shortlex_enumeration(2);
  CHECK(e.unrank(0) == Group::free(2).identity());
}

TEST_CASE("lattice enumeration is a bijection on a prefix") {
  const auto e = lattice_enumeration(2);
  std::set<Element> seen;
  for (std::uint64_t r = 0; r < 500; ++r) {
    const auto x = e.unrank(r);
    CHECK(e.rank(x) == r);
    CHECK(seen.insert(x).second);
  }
  CHECK(e.unrank(0) == Element{0, 0});
}
