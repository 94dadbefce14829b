// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "confpara/catalog.hpp"
#include "confpara/configurations.hpp"
#include "confpara/enumeration.hpp"
#include "confpara/equivalence.hpp"
#include "confpara/errors.hpp"
#include "confpara/paradox.hpp"
#include "confpara/reconstruction.hpp"
#include "support.hpp"

using namespace confpara;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;  // 0: no limit
  std::function<Outcome()> run;
};

using Rows = std::set<std::vector<std::size_t>>;

Rows naive_con(const CayleyTable& t, const std::vector<std::size_t>& tuple, const std::vector<std::size_t>& labels) {
  Rows out;
  for (std::size_t x = 0; x < t.size(); ++x) {
    std::vector<std::size_t> row{labels[x]};
    for (auto g : tuple) row.push_back(labels[t[g][x]]);
    out.insert(row);
  }
  return out;
}

Rows as_rows(const ConfigSet& s) {
  Rows out;
  for (const auto& c : s) out.insert(c.entries);
  return out;
}

struct RandomPair {
  std::vector<std::size_t> tuple;
  std::vector<std::size_t> labels;
  ConfigPair pair;
};

// Pairs for criteria 1 and 2, drawn from one seed per group.
std::vector<RandomPair> random_pairs(const Group& g, std::uint64_t seed, std::size_t count) {
  testing::Rng rng(seed);
  const auto points = Action::left_translation(g).points();
  const auto order = *g.order();
  std::vector<RandomPair> out;
  for (std::size_t k = 0; k < count; ++k) {
    RandomPair r{{}, {}, ConfigPair{{}, Partition::explicit_blocks({points})}};
    const auto len = testing::pick(rng, 4);
    for (std::size_t i = 0; i < len; ++i) {
      r.tuple.push_back(testing::pick(rng, order));
      r.pair.tuple.push_back(Element::index(r.tuple.back()));
    }
    r.labels = testing::random_labels(rng, points.size(), 1 + testing::pick(rng, 4));
    r.pair.partition = testing::blocks_from_labels(points, r.labels);
    out.push_back(std::move(r));
  }
  return out;
}

Outcome oracle_equivalence() {
  std::size_t pairs = 0, mismatches = 0;
  std::string first;
  std::uint64_t seed = 1000;
  for (const auto& [name, g] : catalog::fixture_groups()) {
    const auto act = Action::left_translation(g);
    for (const auto& r : random_pairs(g, seed++, 200)) {
      ++pairs;
      if (as_rows(configurations_finite(act, r.pair)) != naive_con(g.cayley_table(), r.tuple, r.labels)) {
        if (mismatches++ == 0) first = name;
      }
    }
  }
  Outcome o{mismatches == 0, std::to_string(pairs) + " pairs over " +
                                 std::to_string(catalog::fixture_groups().size()) + " groups, " +
                                 std::to_string(mismatches) + " mismatches"};
  if (!first.empty()) o.detail += " (first in " + first + ")";
  return o;
}

// E_i is the disjoint union of the cells x_j(C) with C_j = i, and the cells at j partition X.
Outcome refinement_identity() {
  std::size_t pairs = 0, violations = 0;
  std::uint64_t seed = 1000;
  for (const auto& [name, g] : catalog::fixture_groups()) {
    const auto act = Action::left_translation(g);
    const auto points = act.points();
    for (const auto& r : random_pairs(g, seed++, 200)) {
      ++pairs;
      const auto cs = all_cells(act, r.pair, points);
      bool ok = verify_refinement(act, r.pair).holds;
      for (std::size_t j = 0; j <= r.tuple.size() && ok; ++j) {
        std::map<std::size_t, std::size_t> hits;  // point index -> times covered at j
        for (const auto& c : cs) {
          for (const auto& x : c.cells[j]) {
            const auto xi = x.as_index();
            ++hits[xi];
            if (r.labels[xi] != c.config[j]) ok = false;
          }
        }
        ok = ok && hits.size() == points.size();
        for (const auto& [x, n] : hits) ok = ok && n == 1;
      }
      if (!ok) ++violations;
    }
  }
  return {violations == 0, std::to_string(pairs) + " pairs, " + std::to_string(violations) + " violations"};
}

std::string show_witness(const Action& act, const EquivalenceWitness& w) {
  std::ostringstream s;
  s << (w.side == WitnessSide::a ? "A" : "B") << " tuple (";
  for (std::size_t i = 0; i < w.tuple.size(); ++i) s << (i ? "," : "") << act.group().format(w.tuple[i]);
  s << ") blocks ";
  for (std::size_t b = 0; b < w.blocks.size(); ++b) {
    s << (b ? "|" : "") << "{";
    for (std::size_t i = 0; i < w.blocks[b].size(); ++i) s << (i ? "," : "") << w.blocks[b][i].as_index();
    s << "}";
  }
  return s.str();
}

Outcome finite_rigidity() {
  const auto groups = catalog::fixture_groups();
  auto find = [&](const std::string& n) {
    for (const auto& [name, g] : groups) {
      if (name == n) return Action::left_translation(g);
    }
    throw std::runtime_error("missing fixture " + n);
  };
  const auto z4 = find("Z4");
  const auto v4 = find("Z2xZ2");
  const auto v = config_equiv_bounded(z4, v4, 2, 4);
  const auto again = config_equiv_bounded(z4, v4, 2, 4);
  if (v.equivalent || !v.witness) return {false, "Z4 vs Z2xZ2 not distinguished"};
  const auto& w = *v.witness;
  if (!again.witness || again.witness->tuple != w.tuple || again.witness->blocks != w.blocks)
    return {false, "witness not reproducible"};
  const auto& from = w.side == WitnessSide::a ? z4 : v4;
  const auto& other = w.side == WitnessSide::a ? v4 : z4;
  if (as_rows(configurations_finite(from, ConfigPair{w.tuple, Partition::explicit_blocks(w.blocks)})) !=
      as_rows(w.configurations))
    return {false, "witness Con set does not recompute"};

  // No pair of length 2 with at most 4 blocks on the other side has this Con set up to relabeling.
  const auto table = other.group().cayley_table();
  const auto n = table.size();
  auto canon = [](const Rows& rows) {
    // least image over all relabelings of at most four blocks
    std::set<std::vector<std::size_t>> best;
    std::vector<std::size_t> perm{1, 2, 3, 4};
    do {
      Rows mapped;
      for (const auto& r : rows) {
        std::vector<std::size_t> m;
        for (auto l : r) m.push_back(perm[l - 1]);
        mapped.insert(m);
      }
      if (best.empty() || mapped < best) best = mapped;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
  };
  const auto target = canon(as_rows(w.configurations));
  bool found = false;
  std::vector<std::size_t> labels(n, 1);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
    if (found) return;
    if (i == n) {
      for (std::size_t a = 0; a < n && !found; ++a)
        for (std::size_t b = 0; b < n && !found; ++b) found = canon(naive_con(table, {a, b}, labels)) == target;
      return;
    }
    for (std::size_t l = 1; l <= std::min<std::size_t>(used + 1, 4); ++l) {
      labels[i] = l;
      rec(i + 1, std::max(used, l));
    }
  };
  rec(0, 0);
  if (found) return {false, "witness Con set is realized on the other side"};

  std::size_t self = 0;
  for (const auto& [name, g] : groups) {
    const auto a = Action::left_translation(g);
    const auto s = config_equiv_bounded(a, a, 2, 4);
    if (!s.equivalent) return {false, name + " not equivalent to itself"};
    ++self;
  }
  return {true, "Z4 vs Z2xZ2 distinguished by " + show_witness(from, w) + "; " + std::to_string(self) +
                    " groups equivalent to themselves"};
}

Outcome reconstruction_roundtrip() {
  std::size_t cases = 0, failures = 0;
  for (const auto& [name, h] : catalog::fixture_groups()) {
    if (*h.order() > 12) continue;
    for (const auto& n : normal_subgroups(h)) {
      ++cases;
      const auto q = quotient_group(h, n);
      // the quotient is checked to be a quotient by the coset product rule directly
      const auto& ht = h.cayley_table();
      bool quotient_ok = true;
      std::map<std::size_t, std::size_t> coset_of;
      for (std::size_t c = 0; c < q.cosets.size(); ++c)
        for (const auto& e : q.cosets[c]) coset_of[e.as_index()] = c;
      const auto& gt = q.group.cayley_table();
      for (std::size_t a = 0; a < ht.size(); ++a)
        for (std::size_t b = 0; b < ht.size(); ++b) quotient_ok = quotient_ok && coset_of[ht[a][b]] == gt[coset_of[a]][coset_of[b]];
      const auto table = multiplication_index_table(q.group, index_enumeration(q.group), *q.group.order());
      try {
        const auto fam = recover_cosets(h, ConfigPair{q.representatives, Partition::explicit_blocks(q.cosets)}, table);
        if (!quotient_ok || fam.subgroup() != n || !verify_normal_and_iso(h, fam, table).holds) ++failures;
      } catch (const std::exception&) {
        ++failures;
      }
    }
  }
  return {failures == 0, std::to_string(cases) + " (H, N) pairs, " + std::to_string(failures) + " failures"};
}

Outcome split_merge_roundtrip() {
  testing::Rng rng(55);
  const auto z = Group::free_abelian(1);
  const auto lt = Action::left_translation(z);
  std::vector<Point> win;
  for (std::int64_t k = -30; k <= 30; ++k) win.push_back(Point{k});
  const auto window = custom_window(win);
  std::size_t failures = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto modulus = 2 + static_cast<std::int64_t>(testing::pick(rng, 6));
    const auto labels = testing::random_labels(rng, static_cast<std::size_t>(modulus), 4);
    const auto m = *std::max_element(labels.begin(), labels.end());
    std::vector<std::vector<std::int64_t>> blocks(m);
    for (std::int64_t r = 0; r < modulus; ++r) blocks[labels[static_cast<std::size_t>(r)] - 1].push_back(r);
    ConfigPair pair{{}, residue_partition(modulus, blocks)};
    const auto n = 1 + testing::pick(rng, 3);
    for (std::size_t i = 0; i < n; ++i) pair.tuple.push_back(Element{static_cast<std::int64_t>(testing::pick(rng, 11)) - 5});
    // Con on the window straight from residues
    Rows expected;
    for (const auto& x : win) {
      std::vector<std::size_t> row;
      auto label = [&](std::int64_t v) { return labels[static_cast<std::size_t>(((v % modulus) + modulus) % modulus)]; };
      row.push_back(label(x.data[0]));
      for (const auto& g : pair.tuple) row.push_back(label(x.data[0] + g.data[0]));
      expected.insert(row);
    }
    const auto split = singleton_split(z, pair, m);
    const auto merged = merge_configurations(countable_config_prefixes(lt, split, n, window).prefixes, m);
    const auto merged_pair = configurations_on(lt, merge_blocks(split, m), win);
    if (as_rows(merged) != expected || as_rows(merged_pair) != expected) ++failures;
  }
  return {failures == 0, "50 pairs over Z on [-30, 30], " + std::to_string(failures) + " mismatches"};
}

// Pieces of a reduced F2 word, classified by hand.
std::optional<Piece> f2_piece(const std::vector<std::int64_t>& w) {
  bool all_a_inv = true;
  for (auto l : w) all_a_inv = all_a_inv && l == -1;
  if (all_a_inv || w[0] == 1) return Piece{Side::a, 1};
  if (w[0] == -1) return Piece{Side::a, 2};
  if (w[0] == 2) return Piece{Side::b, 1};
  return Piece{Side::b, 2};
}

std::size_t covering_count(const Decomposition& d, Side side, const Point& x, std::uint64_t bound) {
  const auto& g = d.action.group();
  std::size_t n = 0;
  const auto limit = d.count(side) ? std::min(*d.count(side), bound) : bound;
  for (std::uint64_t i = 1; i <= limit; ++i) {
    if (d.classify(d.action.act(g.inv(d.translator(side, i)), x)) == std::optional<Piece>(Piece{side, i})) ++n;
  }
  return n;
}

std::string verdict_text(const Verdict& v) {
  if (v.verified()) return "verified on " + v.window + " (" + std::to_string(v.points_checked) + " points)";
  return "refuted at " + v.witness_text + ": " + v.detail;
}

Outcome f2_paradox() {
  const auto d = f2_standard();
  const auto w = ball(Group::free(2), 6);
  const auto bound = std::max(*d.a_count, *d.b_count);
  std::size_t violations = 0;
  for (const auto& x : w.points) {
    const auto expected = f2_piece(x.data);
    if (d.classify(x) != expected) ++violations;
    if (covering_count(d, Side::a, x, bound) != 1 || covering_count(d, Side::b, x, bound) != 1) ++violations;
  }
  const auto v = verify_paradoxical(d, w, bound);
  return {v.verified() && violations == 0 && w.size() >= 1000,
          verdict_text(v) + ", " + std::to_string(violations) + " oracle violations"};
}

Outcome countable_constructions() {
  const auto z = Group::free_abelian(1);
  auto range = [&](std::int64_t lo, std::int64_t hi) {
    std::vector<Point> p;
    for (auto k = lo; k <= hi; ++k) p.push_back(Point{k});
    return custom_window(std::move(p));
  };
  const auto singleton = singleton_decomposition(z, zigzag_enumeration());
  const auto v1 = verify_paradoxical(singleton, range(-100, 100), 500);
  const auto [emb, tr] = multiples_in_integers(2);
  const auto lifted = lift_via_transversal(z, emb, tr, singleton_decomposition(emb.subgroup, zigzag_enumeration()));
  const auto v2 = verify_paradoxical(lifted, range(-60, 60), 500);
  const auto f2 = Group::free(2);
  const auto [femb, ftr] = cyclic_in_free(2);
  const auto via_a = countable_paradox_of_infinite(f2, SubgroupWitness{femb, ftr});
  const auto v3 = verify_paradoxical(via_a, ball(f2, 3), 500);
  std::size_t violations = 0;
  for (const auto& x : ball(f2, 3).points) {
    if (covering_count(via_a, Side::a, x, 500) != 1 || covering_count(via_a, Side::b, x, 500) != 1) ++violations;
  }
  return {v1.verified() && v2.verified() && v3.verified() && violations == 0,
          "singleton(Z) " + verdict_text(v1) + "; lift 2Z " + verdict_text(v2) + "; F2 via <a> " + verdict_text(v3)};
}

Outcome compression_roundtrip() {
  const auto standard = f2_standard();
  const auto refined = refine_to_singletons(standard, shortlex_enumeration(2));
  const auto c = compress_translators(refined, 200);
  if (!c.decomposition) return {false, "refined F2 not compressible: " + c.reason};
  std::size_t differ = 0;
  const auto w = ball(Group::free(2), 4);
  for (const auto& x : w.points) differ += c.decomposition->classify(x) != standard.classify(x);
  for (auto side : {Side::a, Side::b}) {
    for (std::uint64_t i = 1; i <= 2; ++i) differ += c.decomposition->translator(side, i) != standard.translator(side, i);
  }
  const auto z = compress_translators(singleton_decomposition(Group::free_abelian(1), zigzag_enumeration()), 200);
  const bool refused = !z.decomposition && z.reason.rfind("not compressible within bound 200", 0) == 0;
  return {differ == 0 && refused, std::to_string(w.size()) + " points, " + std::to_string(differ) +
                                      " differences; singleton(Z): " + z.reason};
}

Outcome orbit_gluing() {
  const auto z = Group::free_abelian(1);
  const auto prod = Action::product(Action::left_translation(z));
  const auto orbits = layered_orbits(prod);
  const auto w = layered(box(z, 30), 6);
  auto per = [z](std::uint64_t) { return singleton_decomposition(z, zigzag_enumeration()); };
  GlueOptions opts;
  opts.probe_points = w.points;
  const auto glued = glue_orbit_decompositions(prod, orbits, per, opts);
  const auto v = verify_paradoxical(glued, w, 500);
  std::size_t differ = 0;
  for (std::uint64_t k = 0; k < 6; ++k) {
    const auto r = restrict_to_orbit(glued, k, orbits);
    const auto orig = per(k);
    for (const auto& c : box(z, 30).points) {
      const auto p = r.classify(c);
      differ += p != orig.classify(c);
      if (p) differ += r.translator(p->side, p->index) != orig.translator(p->side, p->index);
    }
  }
  return {v.verified() && differ == 0, verdict_text(v) + ", 6 orbits restricted, " + std::to_string(differ) + " differences"};
}

// Candidates built without the library's constructions: a keyed hash picks the piece.
Decomposition trivial_candidate(const Action& act, testing::Rng& rng) {
  const auto key = rng();
  const auto pieces = 1 + testing::pick(rng, 6);
  std::vector<Element> ta, tb;
  for (std::size_t i = 0; i < pieces; ++i) {
    ta.push_back(Element{static_cast<std::int64_t>(testing::pick(rng, 9)) - 4});
    tb.push_back(Element{static_cast<std::int64_t>(testing::pick(rng, 9)) - 4});
  }
  auto classify = [key, pieces](const Point& x) -> std::optional<Piece> {
    std::uint64_t h = (x.as_index() ^ key) * 0xbf58476d1ce4e5b9ULL;
    h ^= h >> 31;
    return Piece{(h >> 7) & 1 ? Side::b : Side::a, 1 + (h >> 8) % pieces};
  };
  return pieces_decomposition(act, "candidate", classify, ta, tb);
}

Outcome trivial_impossibility() {
  const auto act = Action::trivial(Group::free_abelian(1), std::nullopt);
  std::vector<Point> pts;
  for (std::uint64_t i = 0; i < 50; ++i) pts.push_back(Point::index(i));
  const auto w = custom_window(std::move(pts));
  testing::Rng rng(77);
  std::size_t refuted = 0, valid = 0;
  for (int round = 0; round < 100; ++round) {
    const auto d = trivial_candidate(act, rng);
    const auto v = verify_paradoxical(d, w, 64);
    if (v.verified() || !v.witness) continue;
    ++refuted;
    // a trivial action fixes every point, so the witness must be covered other than once on some side
    const auto& x = *v.witness;
    if (!d.classify(x) || covering_count(d, Side::a, x, 64) != 1 || covering_count(d, Side::b, x, 64) != 1) ++valid;
  }
  return {refuted == 100 && valid == 100,
          std::to_string(refuted) + "/100 refuted, " + std::to_string(valid) + " witnesses rechecked"};
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "oracle equivalence", 60, oracle_equivalence},
      {2, "refinement identity", 0, refinement_identity},
      {3, "finite rigidity witness", 300, finite_rigidity},
      {4, "reconstruction roundtrip", 60, reconstruction_roundtrip},
      {5, "split and merge roundtrip", 0, split_merge_roundtrip},
      {6, "F2 paradoxicality", 30, f2_paradox},
      {7, "countable constructions", 0, countable_constructions},
      {8, "compression roundtrip", 0, compression_roundtrip},
      {9, "orbit gluing", 0, orbit_gluing},
      {10, "trivial-action impossibility", 0, trivial_impossibility},
  };
  return all;
}

struct Run {
  std::string report;  // timing-free, compared across runs
  std::vector<std::string> lines;
  bool pass = true;
};

Run run_all() {
  Run run;
  for (const auto& c : criteria()) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    bool pass = o.pass;
    std::ostringstream line;
    line << c.id << " " << c.title << ": " << o.detail;
    run.report += line.str() + (o.pass ? " ok\n" : " failed\n");
    std::ostringstream timing;
    timing.precision(2);
    timing << std::fixed << took.count() << "s";
    if (c.limit_seconds > 0) {
      timing << ", limit " << c.limit_seconds << "s";
      pass = pass && took.count() < c.limit_seconds;
    }
    run.lines.push_back(std::string(pass ? "PASS " : "FAIL ") + line.str() + " [" + timing.str() + "]");
    run.pass = run.pass && pass;
  }
  return run;
}

}  // namespace

int main() {
  const auto first = run_all();
  for (const auto& l : first.lines) std::cout << l << "\n";
  std::cout.flush();
  const auto second = run_all();
  const auto third = run_all();
  const bool same = first.report == second.report && second.report == third.report;
  std::cout << (same ? "PASS " : "FAIL ") << "11 determinism: criteria 1-10 rerun twice, reports "
            << (same ? "byte-identical" : "differ") << " (" << first.report.size() << " bytes)\n";
  const bool ok = first.pass && second.pass && third.pass && same;
  std::cout << (ok ? "all criteria passed" : "some criteria failed") << "\n";
  return ok ? 0 : 1;
}
