#include "confpara/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "confpara/catalog.hpp"
#include "confpara/errors.hpp"

namespace confpara::io {

namespace {

std::string escape_pointer(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

std::string child(const std::string& path, const std::string& key) { return path + "/" + escape_pointer(key); }
std::string child(const std::string& path, std::size_t index) { return path + "/" + std::to_string(index); }

/// Strict view of a JSON object: unknown keys are rejected up front.
class Fields {
 public:
  Fields(const Json& j, std::string path, std::initializer_list<const char*> allowed) : j_(j), path_(std::move(path)) {
    if (!j.is_object()) throw InputError("expected an object", path_);
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : j.items()) {
      if (!ok.count(key)) throw InputError("unknown field '" + key + "'", child(path_, key));
    }
  }

  bool has(const char* key) const { return j_.contains(key); }
  std::string at(const char* key) const { return child(path_, key); }

  const Json& req(const char* key) const {
    if (!j_.contains(key)) throw InputError("missing required field '" + std::string(key) + "'", at(key));
    return j_.at(key);
  }
  const Json* opt(const char* key) const { return j_.contains(key) ? &j_.at(key) : nullptr; }

  std::string str(const char* key) const {
    const auto& v = req(key);
    if (!v.is_string()) throw InputError("expected a string", at(key));
    return v.get<std::string>();
  }
  std::string str_or(const char* key, std::string fallback) const { return has(key) ? str(key) : fallback; }

  std::int64_t integer(const char* key) const { return as_int(req(key), at(key)); }
  std::uint64_t natural(const char* key) const { return as_nat(req(key), at(key)); }
  bool boolean_or(const char* key, bool fallback) const {
    if (!has(key)) return fallback;
    if (!j_.at(key).is_boolean()) throw InputError("expected a boolean", at(key));
    return j_.at(key).get<bool>();
  }

  static std::int64_t as_int(const Json& v, const std::string& path) {
    if (!v.is_number_integer()) throw InputError("expected an integer", path);
    return v.get<std::int64_t>();
  }
  static std::uint64_t as_nat(const Json& v, const std::string& path) {
    const auto n = as_int(v, path);
    if (n < 0) throw InputError("expected a non-negative integer", path);
    return static_cast<std::uint64_t>(n);
  }

 private:
  const Json& j_;
  std::string path_;
};

const Json& array_at(const Json& v, const std::string& path) {
  if (!v.is_array()) throw InputError("expected an array", path);
  return v;
}

std::vector<std::vector<std::size_t>> index_matrix(const Json& v, const std::string& path) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t r = 0; r < array_at(v, path).size(); ++r) {
    const auto rp = child(path, r);
    std::vector<std::size_t> row;
    for (std::size_t c = 0; c < array_at(v[r], rp).size(); ++c) {
      row.push_back(static_cast<std::size_t>(Fields::as_nat(v[r][c], child(rp, c))));
    }
    out.push_back(std::move(row));
  }
  return out;
}

// Re-throws library errors raised while building an object at `path`.
template <typename F>
auto at_path(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InputError& e) {
    if (!e.path().empty()) throw;
    throw InputError(e.what(), path);
  }
}

const std::vector<ObjectKind> kAllKinds{ObjectKind::group,         ObjectKind::action,  ObjectKind::partition,
                                        ObjectKind::pair,          ObjectKind::decomposition,
                                        ObjectKind::verdict,       ObjectKind::report};

void check_payload(ObjectKind kind, const Json& payload, const std::string& path);

}  // namespace

std::string kind_name(ObjectKind kind) {
  switch (kind) {
    case ObjectKind::group:
      return "group";
    case ObjectKind::action:
      return "action";
    case ObjectKind::partition:
      return "partition";
    case ObjectKind::pair:
      return "pair";
    case ObjectKind::decomposition:
      return "decomposition";
    case ObjectKind::verdict:
      return "verdict";
    case ObjectKind::report:
      return "report";
  }
  return "?";
}

Manifest parse_manifest(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what(), "");
  }
  if (!j.is_object()) throw InputError("a manifest must be a JSON object", "");
  if (!j.contains("schema-version")) throw InputError("missing required field 'schema-version'", "/schema-version");
  if (j["schema-version"] != kSchemaVersion) {
    throw InputError("unsupported schema version " + j["schema-version"].dump() + ", expected \"1\"", "/schema-version");
  }
  Manifest m;
  bool found = false;
  for (const auto& [key, value] : j.items()) {
    if (key == "schema-version") continue;
    if (key == "metadata") {
      if (!value.is_object()) throw InputError("expected an object", "/metadata");
      for (const auto& [mk, mv] : value.items()) {
        if (!mv.is_string()) throw InputError("metadata values must be strings", child("/metadata", mk));
        m.metadata[mk] = mv.get<std::string>();
      }
      continue;
    }
    const auto it = std::find_if(kAllKinds.begin(), kAllKinds.end(), [&](ObjectKind k) { return kind_name(k) == key; });
    if (it == kAllKinds.end()) throw InputError("unknown field '" + key + "'", child("", key));
    if (found) throw InputError("a manifest holds exactly one object", child("", key));
    found = true;
    m.kind = *it;
    m.payload = value;
  }
  if (!found) throw InputError("no object in manifest (expected group, action, partition, pair, decomposition, verdict or report)", "");
  check_payload(m.kind, m.payload, "/" + kind_name(m.kind));
  return m;
}

Manifest read_manifest(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw InputError("cannot read " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_manifest(ss.str());
  } catch (const InputError& e) {
    throw InputError(file.string() + ": " + e.what());
  }
}

std::string emit_manifest(const Manifest& manifest) {
  Json j;
  j["schema-version"] = kSchemaVersion;
  j[kind_name(manifest.kind)] = manifest.payload;
  if (!manifest.metadata.empty()) j["metadata"] = manifest.metadata;
  return j.dump(2) + "\n";
}

// Groups -----------------------------------------------------------------------

Group group_from_json(const Json& j, const std::string& path) {
  const Fields probe(j, path, {"kind", "table", "identity", "labels", "name", "degree", "generators", "rank", "builtin"});
  const auto kind = probe.str("kind");
  if (kind == "finite-cayley") {
    const Fields f(j, path, {"kind", "table", "identity", "labels", "name"});
    std::vector<std::string> labels;
    if (const auto* l = f.opt("labels")) {
      for (std::size_t i = 0; i < array_at(*l, f.at("labels")).size(); ++i) {
        if (!(*l)[i].is_string()) throw InputError("expected a string", child(f.at("labels"), i));
        labels.push_back((*l)[i].get<std::string>());
      }
    }
    auto table = index_matrix(f.req("table"), f.at("table"));
    const auto id = static_cast<std::size_t>(f.natural("identity"));
    return at_path(f.at("table"), [&] { return Group::finite_cayley(std::move(table), id, labels, f.str_or("name", "")); });
  }
  if (kind == "finite-perm") {
    const Fields f(j, path, {"kind", "degree", "generators", "name"});
    const auto degree = static_cast<std::size_t>(f.natural("degree"));
    auto gens = index_matrix(f.req("generators"), f.at("generators"));
    for (std::size_t g = 0; g < gens.size(); ++g) {
      for (std::size_t i = 0; i < gens[g].size(); ++i) {
        if (gens[g][i] < 1 || gens[g][i] > degree) {
          throw InputError("permutation entries are 1.." + std::to_string(degree), child(child(f.at("generators"), g), i));
        }
        --gens[g][i];
      }
    }
    return at_path(f.at("generators"), [&] { return Group::from_permutations(degree, gens, f.str_or("name", "")); });
  }
  if (kind == "free" || kind == "free-abelian") {
    const Fields f(j, path, {"kind", "rank"});
    const auto rank = static_cast<std::size_t>(f.natural("rank"));
    return at_path(f.at("rank"), [&] { return kind == "free" ? Group::free(rank) : Group::free_abelian(rank); });
  }
  if (kind == "enumerated") {
    const Fields f(j, path, {"kind", "builtin"});
    const auto b = f.str("builtin");
    if (b == "integers") return Group::enumerated_integers();
    if (b == "lattice") return Group::enumerated_lattice();
    throw InputError("unknown builtin enumerated group '" + b + "' (integers, lattice)", f.at("builtin"));
  }
  if (kind == "catalog") {
    const Fields f(j, path, {"kind", "name"});
    const auto name = f.str("name");
    for (const auto& [n, g] : catalog::fixture_groups()) {
      if (n == name) return g;
    }
    throw InputError("unknown catalog group '" + name + "'", f.at("name"));
  }
  throw InputError("unknown group kind '" + kind + "'", probe.at("kind"));
}

// Actions ----------------------------------------------------------------------

Action action_from_json(const Json& j, const std::string& path) {
  const Fields probe(j, path, {"kind", "group", "table", "points", "base"});
  const auto kind = probe.str("kind");
  if (kind == "left-translation") {
    const Fields f(j, path, {"kind", "group"});
    return Action::left_translation(group_from_json(f.req("group"), f.at("group")));
  }
  if (kind == "explicit-table") {
    const Fields f(j, path, {"kind", "group", "table"});
    auto g = group_from_json(f.req("group"), f.at("group"));
    auto table = index_matrix(f.req("table"), f.at("table"));
    return at_path(f.at("table"), [&] { return Action::explicit_table(g, std::move(table)); });
  }
  if (kind == "trivial") {
    const Fields f(j, path, {"kind", "group", "points"});
    auto g = group_from_json(f.req("group"), f.at("group"));
    std::optional<std::size_t> n;
    if (f.has("points")) n = static_cast<std::size_t>(f.natural("points"));
    return Action::trivial(g, n);
  }
  if (kind == "product") {
    const Fields f(j, path, {"kind", "base"});
    auto base = action_from_json(f.req("base"), f.at("base"));
    return at_path(f.at("base"), [&] { return Action::product(base); });
  }
  throw InputError("unknown action kind '" + kind + "'", probe.at("kind"));
}

Action action_from_manifest(const Manifest& m) {
  if (m.kind == ObjectKind::group) return Action::left_translation(group_from_json(m.payload, "/group"));
  if (m.kind == ObjectKind::action) return action_from_json(m.payload, "/action");
  throw InputError("expected a group or action manifest, got " + kind_name(m.kind));
}

// Elements and points -------------------------------------------------------------

Element element_from_json(const Group& group, const Json& j, const std::string& path) {
  return at_path(path, [&]() -> Element {
    Element e;
    if (j.is_string()) {
      e = group.parse(j.get<std::string>());
    } else if (j.is_number_integer()) {
      e = group.parse(std::to_string(j.get<std::int64_t>()));
    } else if (j.is_array()) {
      if (group.kind() != GroupKind::free_abelian) throw InputError("vectors are elements of free abelian groups only");
      std::vector<std::int64_t> v;
      for (std::size_t i = 0; i < j.size(); ++i) v.push_back(Fields::as_int(j[i], child(path, i)));
      e = Element(std::move(v));
    } else {
      throw InputError("expected an element (string, integer or vector)");
    }
    group.validate(e);
    return e;
  });
}

Json element_to_json(const Group& group, const Element& e) {
  switch (group.kind()) {
    case GroupKind::free:
      return group.format(e);
    case GroupKind::free_abelian:
      return group.rank() == 1 ? Json(e.data.at(0)) : Json(e.data);
    default:
      return group.kind() != GroupKind::finite || group.labels().empty() ? Json(e.as_index()) : Json(group.format(e));
  }
}

Point point_from_json(const Action& action, const Json& j, const std::string& path) {
  switch (action.kind()) {
    case ActionKind::left_translation:
      return element_from_json(action.group(), j, path);
    case ActionKind::product: {
      if (!j.is_array() || j.size() != 2) throw InputError("expected [base point, layer]", path);
      const auto base = point_from_json(action.base(), j[0], child(path, 0));
      return Action::with_layer(base, Fields::as_nat(j[1], child(path, 1)));
    }
    default: {
      const auto x = Point::index(Fields::as_nat(j, path));
      at_path(path, [&] {
        action.validate(x);
        return 0;
      });
      return x;
    }
  }
}

Json point_to_json(const Action& action, const Point& x) {
  switch (action.kind()) {
    case ActionKind::left_translation:
      return element_to_json(action.group(), x);
    case ActionKind::product: {
      const auto [b, k] = Action::split_layer(x);
      return Json::array({point_to_json(action.base(), b), k});
    }
    default:
      return x.as_index();
  }
}

// Partitions and pairs ----------------------------------------------------------------

namespace {

Enumeration enumeration_by_name(const Group& group, const std::string& name, const std::string& path) {
  if (name == "canonical") return canonical_enumeration(group);
  if (name == "zigzag") {
    if (group.kind() != GroupKind::free_abelian || group.rank() != 1) throw InputError("zigzag enumerates Z only", path);
    return zigzag_enumeration();
  }
  if (name == "lattice") {
    if (group.kind() != GroupKind::free_abelian) throw InputError("lattice enumerates Z^k only", path);
    return lattice_enumeration(group.rank());
  }
  if (name == "shortlex") {
    if (group.kind() != GroupKind::free) throw InputError("shortlex enumerates free groups only", path);
    return shortlex_enumeration(group.rank());
  }
  throw InputError("unknown enumeration '" + name + "' (canonical, zigzag, lattice, shortlex)", path);
}

}  // namespace

Partition partition_from_json(const Action& action, const Json& j, const std::string& path) {
  const Fields probe(j, path, {"kind", "blocks", "modulus", "enumeration"});
  const auto kind = probe.str("kind");
  if (kind == "explicit") {
    const Fields f(j, path, {"kind", "blocks"});
    const auto& blocks = array_at(f.req("blocks"), f.at("blocks"));
    std::vector<std::vector<Point>> out;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const auto bp = child(f.at("blocks"), b);
      std::vector<Point> block;
      for (std::size_t i = 0; i < array_at(blocks[b], bp).size(); ++i) {
        block.push_back(point_from_json(action, blocks[b][i], child(bp, i)));
      }
      out.push_back(std::move(block));
    }
    return at_path(f.at("blocks"), [&] { return Partition::explicit_blocks(std::move(out)); });
  }
  if (kind == "residue") {
    const Fields f(j, path, {"kind", "modulus", "blocks"});
    const auto& blocks = array_at(f.req("blocks"), f.at("blocks"));
    std::vector<std::vector<std::int64_t>> residues;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const auto bp = child(f.at("blocks"), b);
      std::vector<std::int64_t> block;
      for (std::size_t i = 0; i < array_at(blocks[b], bp).size(); ++i) block.push_back(Fields::as_int(blocks[b][i], child(bp, i)));
      residues.push_back(std::move(block));
    }
    const auto modulus = f.integer("modulus");
    return at_path(path, [&] { return residue_partition(modulus, residues); });
  }
  if (kind == "singletons") {
    const Fields f(j, path, {"kind", "enumeration"});
    if (action.kind() != ActionKind::left_translation) {
      throw InputError("singleton partitions need a left translation", path);
    }
    return singleton_partition(enumeration_by_name(action.group(), f.str_or("enumeration", "canonical"), f.at("enumeration")));
  }
  throw InputError("unknown partition kind '" + kind + "' (explicit, residue, singletons)", probe.at("kind"));
}

LoadedPair pair_from_json(const Json& j, const std::string& path) {
  const Fields f(j, path, {"action", "tuple", "partition", "generating"});
  auto action = action_from_json(f.req("action"), f.at("action"));
  const auto& t = array_at(f.req("tuple"), f.at("tuple"));
  std::vector<Element> tuple;
  for (std::size_t i = 0; i < t.size(); ++i) tuple.push_back(element_from_json(action.group(), t[i], child(f.at("tuple"), i)));
  auto partition = partition_from_json(action, f.req("partition"), f.at("partition"));
  return LoadedPair{action, ConfigPair{std::move(tuple), std::move(partition), f.boolean_or("generating", false)}};
}

CountablePair countable_pair(const LoadedPair& loaded) {
  return CountablePair{Sequence::eventually_identity(loaded.pair.tuple, loaded.action.group().identity()),
                       loaded.pair.partition, loaded.pair.generating};
}

// Windows --------------------------------------------------------------------------

Window window_from_json(const Action& action, const Json& j, const std::string& path) {
  const Fields f(j, path, {"ball", "box", "prefix", "all", "range", "layered"});
  if (j.size() != 1) throw InputError("a window has exactly one of ball, box, prefix, all, range, layered", path);
  const auto& group = action.group();
  auto need_translation = [&](const char* key) {
    if (action.kind() != ActionKind::left_translation) {
      throw InputError(std::string(key) + " windows need a left translation", f.at(key));
    }
  };
  if (f.has("ball")) {
    need_translation("ball");
    const auto r = f.integer("ball");
    return at_path(f.at("ball"), [&] { return ball(group, r); });
  }
  if (f.has("box")) {
    need_translation("box");
    const auto r = f.integer("box");
    return at_path(f.at("box"), [&] { return box(group, r); });
  }
  if (f.has("prefix")) {
    const auto n = f.integer("prefix");
    if (action.kind() == ActionKind::left_translation) {
      return at_path(f.at("prefix"), [&] { return prefix(canonical_enumeration(group), n); });
    }
    if (action.kind() == ActionKind::trivial || action.kind() == ActionKind::explicit_table) {
      if (n < 0) throw InputError("prefix length must be non-negative", f.at("prefix"));
      std::vector<Point> pts;
      for (std::int64_t i = 0; i < n; ++i) {
        const auto x = Point::index(static_cast<std::uint64_t>(i));
        if (!action.contains(x)) break;
        pts.push_back(x);
      }
      auto w = custom_window(std::move(pts));
      w.kind = WindowKind::prefix;
      w.parameter = n;
      return w;
    }
    throw InputError("prefix windows need a left translation, explicit or trivial action", f.at("prefix"));
  }
  if (f.has("all")) {
    if (f.req("all") != true) throw InputError("expected true", f.at("all"));
    return at_path(f.at("all"), [&] { return all_points(action); });
  }
  if (f.has("range")) {
    need_translation("range");
    if (group.kind() != GroupKind::free_abelian || group.rank() != 1) throw InputError("range windows need Z", f.at("range"));
    const auto& r = f.req("range");
    if (!r.is_array() || r.size() != 2) throw InputError("expected [lo, hi]", f.at("range"));
    const auto lo = Fields::as_int(r[0], child(f.at("range"), 0));
    const auto hi = Fields::as_int(r[1], child(f.at("range"), 1));
    std::vector<Point> pts;
    for (auto n = lo; n <= hi; ++n) pts.push_back(Point{n});
    auto w = custom_window(std::move(pts));
    w.parameter = hi - lo + 1;
    return w;
  }
  if (action.kind() != ActionKind::product) throw InputError("layered windows need a product action", f.at("layered"));
  const Fields l(f.req("layered"), f.at("layered"), {"base", "layers"});
  const auto base = window_from_json(action.base(), l.req("base"), l.at("base"));
  return layered(base, static_cast<std::size_t>(l.natural("layers")));
}

Window parse_window(const Action& action, std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed window JSON: ") + e.what(), "/window");
  }
  return window_from_json(action, j, "/window");
}

// Decompositions ---------------------------------------------------------------------------

namespace {

void expect_cover(const Fields& f, const char* key, const std::string& expected) {
  const auto name = f.str(key);
  if (name != expected) {
    throw InputError("cover oracle '" + name + "' does not match this construction (expected '" + expected + "')", f.at(key));
  }
}

std::optional<SubgroupWitness> subgroup_from_json(const Group& group, const Json& j, const std::string& path) {
  const Fields probe(j, path, {"kind", "factor", "letter"});
  const auto kind = probe.str("kind");
  if (kind == "whole") {
    const Fields f(j, path, {"kind"});
    auto [e, t] = whole_group(group);
    return SubgroupWitness{e, t};
  }
  if (kind == "multiples") {
    const Fields f(j, path, {"kind", "factor"});
    if (group.kind() != GroupKind::free_abelian || group.rank() != 1) throw InputError("multiples live in Z", path);
    auto [e, t] = at_path(f.at("factor"), [&] { return multiples_in_integers(f.integer("factor")); });
    return SubgroupWitness{e, t};
  }
  if (kind == "cyclic") {
    const Fields f(j, path, {"kind", "letter"});
    if (group.kind() != GroupKind::free) throw InputError("cyclic letter subgroups live in free groups", path);
    const auto letter = f.str("letter");
    if (letter.size() != 1 || letter[0] < 'a') throw InputError("expected a single letter", f.at("letter"));
    const auto index = static_cast<std::size_t>(letter[0] - 'a' + 1);
    auto [e, t] = at_path(f.at("letter"), [&] { return cyclic_in_free(group.rank(), index); });
    return SubgroupWitness{e, t};
  }
  throw InputError("unknown subgroup kind '" + kind + "' (whole, multiples, cyclic)", probe.at("kind"));
}

bool same_shape(const Group& a, const Group& b) {
  if (a.kind() != b.kind()) return false;
  if (a.kind() == GroupKind::free || a.kind() == GroupKind::free_abelian) return a.rank() == b.rank();
  return a == b;
}

}  // namespace

Decomposition decomposition_from_json(const Json& j, const std::string& path) {
  const Fields probe(j, path,
                     {"construction", "a-family", "b-family", "a-cover", "b-cover", "group", "enumeration", "subgroup",
                      "inner", "bound", "action", "mode", "per-orbit", "probe-window"});
  const auto construction = probe.str("construction");
  auto tag = [&construction](Decomposition d) {
    d.metadata["construction"] = construction;
    return d;
  };

  if (construction == "f2-standard") {
    const Fields f(j, path, {"construction", "a-family", "b-family", "a-cover", "b-cover"});
    const Json a_family{{"family", "first-letter"}, {"letter", "a"}, {"include", "a-neg-powers"}};
    const Json b_family{{"family", "first-letter"}, {"letter", "b"}};
    if (f.req("a-family") != a_family) {
      throw InputError("unsupported a-family; expected " + a_family.dump(), f.at("a-family"));
    }
    if (f.req("b-family") != b_family) {
      throw InputError("unsupported b-family; expected " + b_family.dump(), f.at("b-family"));
    }
    expect_cover(f, "a-cover", "first-letter");
    expect_cover(f, "b-cover", "first-letter");
    return tag(f2_standard());
  }
  if (construction == "singleton") {
    const Fields f(j, path, {"construction", "group", "enumeration", "a-cover", "b-cover"});
    expect_cover(f, "a-cover", "enumeration-rank");
    expect_cover(f, "b-cover", "enumeration-rank");
    const auto group = group_from_json(f.req("group"), f.at("group"));
    const auto e = enumeration_by_name(group, f.str_or("enumeration", "canonical"), f.at("enumeration"));
    return tag(at_path(path, [&] { return singleton_decomposition(group, e); }));
  }
  if (construction == "lift" || construction == "countable") {
    const bool lift = construction == "lift";
    const Fields f = lift ? Fields(j, path, {"construction", "group", "subgroup", "inner", "a-cover", "b-cover"})
                          : Fields(j, path, {"construction", "group", "subgroup", "a-cover", "b-cover"});
    const auto group = group_from_json(f.req("group"), f.at("group"));
    std::optional<SubgroupWitness> witness;
    if (lift || f.has("subgroup")) witness = subgroup_from_json(group, f.req("subgroup"), f.at("subgroup"));
    const auto cover = witness ? "transversal-decoder" : "enumeration-rank";
    expect_cover(f, "a-cover", cover);
    expect_cover(f, "b-cover", cover);
    if (!lift) return tag(at_path(path, [&] { return countable_paradox_of_infinite(group, witness); }));
    const auto inner = decomposition_from_json(f.req("inner"), f.at("inner"));
    if (!same_shape(inner.action.group(), witness->embedding.subgroup)) {
      throw InputError("inner decomposition is not over the subgroup " + witness->embedding.name, f.at("inner"));
    }
    return tag(at_path(path, [&] { return lift_via_transversal(group, witness->embedding, witness->transversal, inner); }));
  }
  if (construction == "glue") {
    const Fields f(j, path, {"construction", "action", "mode", "per-orbit", "probe-window", "a-cover", "b-cover"});
    expect_cover(f, "a-cover", "orbit-decoder");
    expect_cover(f, "b-cover", "orbit-decoder");
    const auto action = action_from_json(f.req("action"), f.at("action"));
    const auto mode = f.str_or("mode", "uniform");
    if (mode != "uniform" && mode != "independent") {
      throw InputError("unknown glue mode '" + mode + "' (uniform, independent)", f.at("mode"));
    }
    const auto inner = decomposition_from_json(f.req("per-orbit"), f.at("per-orbit"));
    OrbitStructure orbits = at_path(f.at("action"), [&] {
      return action.kind() == ActionKind::trivial ? trivial_orbits(action) : layered_orbits(action);
    });
    GlueOptions options;
    options.mode = mode == "uniform" ? GlueMode::uniform : GlueMode::independent;
    if (f.has("probe-window")) options.probe_points = window_from_json(action, f.req("probe-window"), f.at("probe-window")).points;
    return tag(at_path(path, [&] {
      return glue_orbit_decompositions(action, orbits, [inner](std::uint64_t) { return inner; }, options);
    }));
  }
  if (construction == "compress") {
    const Fields f(j, path, {"construction", "inner", "bound", "a-cover", "b-cover"});
    expect_cover(f, "a-cover", "translator-range");
    expect_cover(f, "b-cover", "translator-range");
    const auto inner = decomposition_from_json(f.req("inner"), f.at("inner"));
    const auto bound = f.natural("bound");
    auto r = compress_translators(inner, bound);
    if (!r.decomposition) throw PreconditionError(r.reason);
    return tag(*r.decomposition);
  }
  if (construction == "refine") {
    const Fields f(j, path, {"construction", "inner", "enumeration", "a-cover", "b-cover"});
    expect_cover(f, "a-cover", "enumeration-rank");
    expect_cover(f, "b-cover", "enumeration-rank");
    const auto inner = decomposition_from_json(f.req("inner"), f.at("inner"));
    if (inner.action.kind() != ActionKind::left_translation) {
      throw InputError("refine needs a decomposition of a group acting on itself", f.at("inner"));
    }
    const auto e = enumeration_by_name(inner.action.group(), f.str_or("enumeration", "canonical"), f.at("enumeration"));
    return tag(refine_to_singletons(inner, e));
  }
  throw InputError("unknown construction '" + construction + "' (f2-standard, singleton, lift, countable, glue, compress, refine)",
                   probe.at("construction"));
}

// Verdicts and reports ------------------------------------------------------------------------

Json verdict_to_json(const Verdict& v) {
  Json j{{"status", v.verified() ? "verified-up-to" : "refuted"},
         {"window", v.window},
         {"index-bound", v.index_bound},
         {"points-checked", v.points_checked}};
  if (!v.verified()) {
    j["witness"] = v.witness_text;
    j["equation"] = v.equation;
    j["detail"] = v.detail;
  }
  return j;
}

Json configuration_to_json(const Configuration& c) { return c.entries; }

namespace {

void check_verdict(const Json& j, const std::string& path) {
  const Fields f(j, path, {"status", "window", "index-bound", "points-checked", "witness", "equation", "detail"});
  const auto status = f.str("status");
  f.str("window");
  f.natural("index-bound");
  f.natural("points-checked");
  if (status == "verified-up-to") {
    for (const char* k : {"witness", "equation", "detail"}) {
      if (f.has(k)) throw InputError("a verified verdict has no " + std::string(k), f.at(k));
    }
  } else if (status == "refuted") {
    f.str("witness");
    f.str("equation");
    f.str("detail");
  } else {
    throw InputError("unknown status '" + status + "' (verified-up-to, refuted)", f.at("status"));
  }
}

void check_payload(ObjectKind kind, const Json& payload, const std::string& path) {
  switch (kind) {
    case ObjectKind::group:
      group_from_json(payload, path);
      return;
    case ObjectKind::action:
      action_from_json(payload, path);
      return;
    case ObjectKind::partition: {
      // resolved against an action later; check the shape only
      const Fields f(payload, path, {"kind", "blocks", "modulus", "enumeration"});
      const auto k = f.str("kind");
      if (k != "explicit" && k != "residue" && k != "singletons") {
        throw InputError("unknown partition kind '" + k + "' (explicit, residue, singletons)", f.at("kind"));
      }
      if (k != "singletons") array_at(f.req("blocks"), f.at("blocks"));
      if (k == "residue") f.integer("modulus");
      if (k != "residue" && f.has("modulus")) throw InputError("unknown field 'modulus'", f.at("modulus"));
      if (k != "singletons" && f.has("enumeration")) throw InputError("unknown field 'enumeration'", f.at("enumeration"));
      if (k == "singletons" && f.has("blocks")) throw InputError("unknown field 'blocks'", f.at("blocks"));
      return;
    }
    case ObjectKind::pair:
      pair_from_json(payload, path);
      return;
    case ObjectKind::decomposition:
      decomposition_from_json(payload, path);
      return;
    case ObjectKind::verdict:
      check_verdict(payload, path);
      return;
    case ObjectKind::report: {
      const Fields f(payload, path, {"command", "bounds", "result", "summary", "exit-code"});
      f.str("command");
      f.str("summary");
      f.natural("exit-code");
      if (!f.req("bounds").is_object()) throw InputError("expected an object", f.at("bounds"));
      f.req("result");
      return;
    }
  }
}

}  // namespace

}  // namespace confpara::io
