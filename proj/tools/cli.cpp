#include "cli.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "confpara/configurations.hpp"
#include "confpara/equivalence.hpp"
#include "confpara/errors.hpp"
#include "confpara/io.hpp"
#include "confpara/paradox.hpp"
#include "confpara/reconstruction.hpp"

namespace confpara::cli {

namespace {

using io::Json;

struct Report {
  explicit Report(std::string c = {}) : command(std::move(c)) {}

  std::string command;
  Json bounds = Json::object();
  Json result = Json::object();
  std::string summary;
  int code = ok;
};

struct Common {
  std::string format = "json";
  std::uint64_t cap = 0;
};

void print(const Report& r, const Common& c, std::ostream& out) {
  if (c.format == "text") {
    out << r.summary << "\n";
    return;
  }
  io::Manifest m{io::ObjectKind::report,
                 Json{{"command", r.command}, {"bounds", r.bounds}, {"result", r.result}, {"summary", r.summary},
                      {"exit-code", r.code}},
                 {}};
  out << io::emit_manifest(m);
}

io::Manifest load(const std::string& file, io::ObjectKind expected) {
  auto m = io::read_manifest(file);
  if (m.kind != expected) {
    throw InputError(file + ": expected a " + io::kind_name(expected) + " manifest, got " + io::kind_name(m.kind));
  }
  return m;
}

Action load_action(const std::string& file) { return io::action_from_manifest(io::read_manifest(file)); }

Group load_group(const std::string& file) {
  return io::group_from_json(load(file, io::ObjectKind::group).payload, "/group");
}

/// Splits "a,b^-1,(1,2)" at top-level commas.
std::vector<std::string> split_tuple(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string format_config(const Configuration& c) {
  std::vector<std::string> parts;
  for (auto e : c.entries) parts.push_back(std::to_string(e));
  return "(" + join(parts, ",") + ")";
}

std::string format_points(const Action& a, const std::vector<Point>& pts) {
  std::vector<std::string> parts;
  for (const auto& p : pts) parts.push_back(a.format(p));
  return "{" + join(parts, ", ") + "}";
}

Json points_json(const Action& a, const std::vector<Point>& pts) {
  Json j = Json::array();
  for (const auto& p : pts) j.push_back(io::point_to_json(a, p));
  return j;
}

Json elements_json(const Group& g, const std::vector<Element>& es) {
  Json j = Json::array();
  for (const auto& e : es) j.push_back(io::element_to_json(g, e));
  return j;
}

// con ----------------------------------------------------------------------------

struct ConArgs {
  std::string action, partition, tuple, pair, window;
};

Report cmd_con(const ConArgs& a) {
  Report r{"con"};
  std::optional<io::LoadedPair> loaded;
  if (!a.pair.empty()) {
    loaded = io::pair_from_json(load(a.pair, io::ObjectKind::pair).payload);
  } else {
    if (a.action.empty() || a.partition.empty()) throw InputError("con needs --pair, or --action with --partition");
    const auto action = load_action(a.action);
    auto partition = io::partition_from_json(action, load(a.partition, io::ObjectKind::partition).payload);
    std::vector<Element> tuple;
    for (const auto& t : split_tuple(a.tuple)) tuple.push_back(action.group().parse(t));
    for (const auto& g : tuple) action.group().validate(g);
    loaded = io::LoadedPair{action, ConfigPair{tuple, std::move(partition), false}};
  }
  const auto& action = loaded->action;
  const auto& pair = loaded->pair;
  std::vector<Point> base;
  ConfigSet configs;
  std::string where;
  if (action.is_finite()) {
    configs = configurations_finite(action, pair);
    base = action.points();
    where = "all";
  } else {
    if (a.window.empty()) throw InputError("a countable X needs --window", "/window");
    const auto w = io::parse_window(action, a.window);
    configs = configurations_on(action, pair, w.points);
    base = w.points;
    where = w.describe();
  }
  const auto cells = all_cells(action, pair, base);
  Json list = Json::array();
  std::ostringstream text;
  text << configs.size() << " configurations over " << (action.is_finite() ? "all of X (exact)" : "window " + where + " (restricted to the window)");
  for (const auto& cc : cells) {
    Json cj = Json::array();
    for (const auto& cell : cc.cells) cj.push_back(points_json(action, cell));
    list.push_back({{"configuration", io::configuration_to_json(cc.config)}, {"cells", cj}});
    text << "\n  " << format_config(cc.config) << "  x_0 = " << format_points(action, cc.cells.front());
  }
  r.bounds = {{"window", where}};
  r.result = {{"configurations", list}, {"count", configs.size()}, {"exact", action.is_finite()}, {"window", where}};
  r.summary = text.str();
  return r;
}

// equiv ------------------------------------------------------------------------------

struct EquivArgs {
  std::string a, b, window;
  std::size_t n = 2, m = 2;
};

Report cmd_equiv(const EquivArgs& args, const Common& c) {
  Report r{"equiv"};
  const auto a = load_action(args.a);
  const auto b = load_action(args.b);
  EquivalenceOptions opts;
  opts.cap = c.cap;
  if (!args.window.empty()) {
    if (!a.is_finite()) opts.window_a = io::parse_window(a, args.window);
    if (!b.is_finite()) opts.window_b = io::parse_window(b, args.window);
  }
  const auto v = config_equiv_bounded(a, b, args.n, args.m, opts);
  const auto cap = c.cap ? c.cap : default_cap();
  r.bounds = {{"n", v.n}, {"m", v.m}, {"cap", cap}, {"window-a", v.window_a}, {"window-b", v.window_b}};
  r.result = {{"equivalent", v.equivalent}, {"windowed", v.windowed},   {"pairs-a", v.pairs_a},
              {"pairs-b", v.pairs_b},       {"classes-a", v.classes_a}, {"classes-b", v.classes_b}};
  std::ostringstream text;
  if (v.equivalent) {
    text << "equivalent up to n=" << v.n << ", m=" << v.m;
    if (v.windowed) text << " on windows " << v.window_a << " and " << v.window_b;
    text << " (" << v.classes_a << " configuration classes)";
  } else {
    r.code = distinguished;
    const auto& w = *v.witness;
    const auto& act = w.side == WitnessSide::a ? a : b;
    Json blocks = Json::array();
    std::vector<std::string> tuple_text, block_text;
    for (const auto& blk : w.blocks) {
      blocks.push_back(points_json(act, blk));
      block_text.push_back(format_points(act, blk));
    }
    if (w.complement_block) block_text.push_back("rest");
    for (const auto& g : w.tuple) tuple_text.push_back(act.group().format(g));
    Json configs = Json::array();
    for (const auto& cfg : w.configurations) configs.push_back(io::configuration_to_json(cfg));
    r.result["witness"] = {{"side", w.side == WitnessSide::a ? "a" : "b"},
                           {"tuple", elements_json(act.group(), w.tuple)},
                           {"blocks", blocks},
                           {"complement-block", w.complement_block},
                           {"configurations", configs}};
    text << "distinguished at n=" << v.n << ", m=" << v.m << ": side " << (w.side == WitnessSide::a ? "a" : "b")
         << " pair ((" << join(tuple_text, ",") << "), " << join(block_text, " | ") << ") has no counterpart";
  }
  r.summary = text.str();
  return r;
}

// prefixes ------------------------------------------------------------------------------

Report cmd_prefixes(const std::string& pair_file, std::size_t depth, const std::string& window) {
  Report r{"prefixes"};
  const auto loaded = io::pair_from_json(load(pair_file, io::ObjectKind::pair).payload);
  Window w;
  if (!window.empty()) w = io::parse_window(loaded.action, window);
  else if (loaded.action.is_finite()) w = all_points(loaded.action);
  else throw InputError("a countable X needs --window", "/window");
  const auto p = countable_config_prefixes(loaded.action, io::countable_pair(loaded), depth, w);
  Json list = Json::array();
  for (const auto& c : p.prefixes) list.push_back(io::configuration_to_json(c));
  r.bounds = {{"depth", depth}, {"window", p.window}};
  r.result = {{"prefixes", list}, {"depth", p.depth}, {"window", p.window}, {"exact", p.exact}, {"note", p.note}};
  r.summary = std::to_string(p.prefixes.size()) + " depth-" + std::to_string(depth) + " prefixes on window " + p.window +
              (p.exact ? " (exact)" : " (lower bound: " + p.note + ")");
  return r;
}

// recover --------------------------------------------------------------------------------

Report cmd_recover(const std::string& g_file, const std::string& h_file, const std::string& pair_file, bool q_check,
                   const Common& c) {
  Report r{"recover"};
  const auto g = load_group(g_file);
  const auto loaded = io::pair_from_json(load(pair_file, io::ObjectKind::pair).payload);
  const auto h = h_file.empty() ? loaded.action.group() : load_group(h_file);
  if (loaded.action.kind() != ActionKind::left_translation) throw InputError("the pair must be over H acting on itself", "/pair/action");
  if (!h.is_finite() || !loaded.action.group().is_finite() || h.cayley_table() != loaded.action.group().cayley_table()) {
    throw InputError("the pair's group differs from H", "/pair/action/group");
  }
  if (!g.is_finite()) throw InputError("G must be finite", "/group");
  const auto table = multiplication_index_table(g, index_enumeration(g), *g.order());
  r.bounds = {{"order-g", *g.order()}, {"order-h", *h.order()}};
  CosetFamily family;
  try {
    family = recover_cosets(h, loaded.pair, table);
  } catch (const ReconstructionFailure& e) {
    r.code = distinguished;
    r.result = {{"failure", {{"j", e.j()}, {"l", e.l()}, {"message", e.what()}}}};
    r.summary = std::string("reconstruction failed: ") + e.what();
    return r;
  }
  const auto v = verify_normal_and_iso(h, family, table);
  Json cosets = Json::object();
  for (std::size_t l = 0; l < family.blocks.size(); ++l) cosets["F" + std::to_string(l + 1)] = elements_json(h, family.blocks[l]);
  Json iso = Json::array();
  for (const auto& [j, block] : v.isomorphism) {
    iso.push_back(Json::array({io::element_to_json(g, table.elements()[j - 1]), elements_json(h, block)}));
  }
  r.result = {{"F1", elements_json(h, family.subgroup())},
              {"cosets", cosets},
              {"subgroup", v.subgroup},
              {"normal", v.normal},
              {"homomorphism", v.homomorphism},
              {"bijective", v.bijective},
              {"holds", v.holds},
              {"iso", iso}};
  std::vector<std::string> f1;
  for (const auto& e : family.subgroup()) f1.push_back(h.format(e));
  std::ostringstream text;
  if (v.holds) {
    text << "F_1 = {" << join(f1, ", ") << "} is normal in H and G is isomorphic to H/F_1";
  } else {
    r.code = distinguished;
    r.result["violated"] = v.violated;
    r.result["witnesses"] = elements_json(h, v.witnesses);
    text << "check failed: " << v.violated;
  }
  if (q_check && v.holds) {
    const auto q = q_group_refinement_check(h, loaded.pair, family, table, c.cap);
    const char* status = q.status == QStatus::trivial_kernel             ? "trivial-kernel"
                         : q.status == QStatus::refinement_unrealizable ? "refinement-unrealizable"
                                                                         : "refinement-realized";
    r.result["q-check"] = {{"status", status},
                           {"pairs-searched", q.pairs_searched},
                           {"rejected-by-label-count", q.rejected_by_label_count}};
    text << "; refinement check: " << status;
  }
  r.summary = text.str();
  return r;
}

// paradox ------------------------------------------------------------------------------

Report cmd_verify(const std::string& dec_file, const std::string& window, std::uint64_t bound) {
  Report r{"paradox verify"};
  const auto m = load(dec_file, io::ObjectKind::decomposition);
  const auto dec = io::decomposition_from_json(m.payload);
  const auto w = io::parse_window(dec.action, window);
  const auto v = verify_paradoxical(dec, w, bound);
  r.bounds = {{"window", v.window}, {"index-bound", bound}};
  r.result = io::verdict_to_json(v);
  if (v.verified()) {
    r.summary = "verified up to window " + v.window + " and index bound " + std::to_string(bound) + " (" +
                std::to_string(v.points_checked) + " points)";
  } else {
    r.code = distinguished;
    r.summary = "refuted at " + v.witness_text + ": " + v.equation + " fails; " + v.detail;
  }
  return r;
}

struct ConstructArgs {
  std::string kind, group, enumeration, subgroup, inner, action, mode, probe_window, output;
  std::uint64_t bound = 200;
};

Json subgroup_json(const std::string& text) {
  if (text == "whole") return {{"kind", "whole"}};
  const auto colon = text.find(':');
  const auto head = text.substr(0, colon);
  const auto tail = colon == std::string::npos ? std::string() : text.substr(colon + 1);
  if (head == "multiples" && !tail.empty()) {
    try {
      return {{"kind", "multiples"}, {"factor", std::stoll(tail)}};
    } catch (const std::exception&) {
      throw InputError("bad factor in --subgroup " + text);
    }
  }
  if (head == "cyclic" && !tail.empty()) return {{"kind", "cyclic"}, {"letter", tail}};
  throw InputError("--subgroup is whole, multiples:<k> or cyclic:<letter>");
}

int cmd_construct(const ConstructArgs& a, const Common& c, std::ostream& out) {
  auto need = [](const std::string& v, const char* flag) {
    if (v.empty()) throw InputError(std::string("this construction needs ") + flag);
    return v;
  };
  auto group_payload = [&] { return load(need(a.group, "--group"), io::ObjectKind::group).payload; };
  auto inner_payload = [&] { return load(need(a.inner, "--inner"), io::ObjectKind::decomposition).payload; };
  Json p;
  if (a.kind == "f2-standard") {
    p = {{"construction", "f2-standard"},
         {"a-family", {{"family", "first-letter"}, {"letter", "a"}, {"include", "a-neg-powers"}}},
         {"b-family", {{"family", "first-letter"}, {"letter", "b"}}},
         {"a-cover", "first-letter"},
         {"b-cover", "first-letter"}};
  } else if (a.kind == "singleton") {
    p = {{"construction", "singleton"}, {"group", group_payload()}, {"a-cover", "enumeration-rank"}, {"b-cover", "enumeration-rank"}};
    if (!a.enumeration.empty()) p["enumeration"] = a.enumeration;
  } else if (a.kind == "countable") {
    const auto cover = a.subgroup.empty() ? "enumeration-rank" : "transversal-decoder";
    p = {{"construction", "countable"}, {"group", group_payload()}, {"a-cover", cover}, {"b-cover", cover}};
    if (!a.subgroup.empty()) p["subgroup"] = subgroup_json(a.subgroup);
  } else if (a.kind == "lift") {
    p = {{"construction", "lift"},
         {"group", group_payload()},
         {"subgroup", subgroup_json(need(a.subgroup, "--subgroup"))},
         {"inner", inner_payload()},
         {"a-cover", "transversal-decoder"},
         {"b-cover", "transversal-decoder"}};
  } else if (a.kind == "glue") {
    p = {{"construction", "glue"},
         {"action", load(need(a.action, "--action"), io::ObjectKind::action).payload},
         {"mode", a.mode.empty() ? "uniform" : a.mode},
         {"per-orbit", inner_payload()},
         {"a-cover", "orbit-decoder"},
         {"b-cover", "orbit-decoder"}};
    if (!a.probe_window.empty()) {
      try {
        p["probe-window"] = Json::parse(a.probe_window);
      } catch (const Json::parse_error&) {
        throw InputError("malformed --probe-window JSON");
      }
    }
  } else if (a.kind == "compress") {
    p = {{"construction", "compress"}, {"inner", inner_payload()}, {"bound", a.bound}, {"a-cover", "translator-range"}, {"b-cover", "translator-range"}};
  } else if (a.kind == "refine") {
    p = {{"construction", "refine"}, {"inner", inner_payload()}, {"a-cover", "enumeration-rank"}, {"b-cover", "enumeration-rank"}};
    if (!a.enumeration.empty()) p["enumeration"] = a.enumeration;
  } else {
    throw InputError("unknown --kind '" + a.kind + "' (f2-standard, singleton, countable, lift, glue, compress, refine)");
  }
  const auto dec = io::decomposition_from_json(p);
  io::Manifest m{io::ObjectKind::decomposition, p, dec.metadata};
  const auto text = io::emit_manifest(m);
  if (!a.output.empty()) {
    std::ofstream f(a.output, std::ios::binary);
    if (!f) throw InputError("cannot write " + a.output);
    f << text;
  } else if (c.format == "json") {
    out << text;
  }
  if (c.format == "text") out << "constructed " << dec.name << "\n";
  return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Configurations of group actions and paradoxical decompositions", "confpara"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  Common common;
  auto add_common = [&common](CLI::App* sub) {
    sub->add_option("--format", common.format, "Report format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--cap", common.cap, "Enumeration cap (default: CONFPARA_CAP or 5000000)");
  };

  ConArgs con;
  auto* con_cmd = app.add_subcommand("con", "Configuration set of a pair, with cells");
  con_cmd->add_option("--action", con.action, "Group or action manifest");
  con_cmd->add_option("--partition", con.partition, "Partition manifest");
  con_cmd->add_option("--tuple", con.tuple, "Comma separated group elements");
  con_cmd->add_option("--pair", con.pair, "Pair manifest (instead of the three above)");
  con_cmd->add_option("--window", con.window, "Window JSON for a countable X");
  add_common(con_cmd);

  EquivArgs eq;
  auto* eq_cmd = app.add_subcommand("equiv", "Bounded configuration equivalence");
  eq_cmd->add_option("--a", eq.a, "First group or action")->required();
  eq_cmd->add_option("--b", eq.b, "Second group or action")->required();
  eq_cmd->add_option("-n", eq.n, "Tuple length");
  eq_cmd->add_option("-m", eq.m, "Maximum number of blocks");
  eq_cmd->add_option("--window", eq.window, "Window JSON for countable groups");
  add_common(eq_cmd);

  std::string pf_pair, pf_window;
  std::size_t pf_depth = 0;
  auto* pf_cmd = app.add_subcommand("prefixes", "Configuration prefixes of a countable pair");
  pf_cmd->add_option("--pair", pf_pair, "Pair manifest")->required();
  pf_cmd->add_option("--depth", pf_depth, "Prefix depth")->required();
  pf_cmd->add_option("--window", pf_window, "Window JSON");
  add_common(pf_cmd);

  std::string rc_g, rc_h, rc_pair;
  bool rc_q = false;
  auto* rc_cmd = app.add_subcommand("recover", "Recover F_1 and check G = H/F_1");
  rc_cmd->add_option("--g", rc_g, "Group G")->required();
  rc_cmd->add_option("--h", rc_h, "Group H");
  rc_cmd->add_option("--pair", rc_pair, "Pair over H")->required();
  rc_cmd->add_flag("--q-check", rc_q, "Also search for a pair over G realizing the refined configurations");
  add_common(rc_cmd);

  auto* px_cmd = app.add_subcommand("paradox", "Paradoxical decompositions");
  px_cmd->require_subcommand(1);
  std::string pv_dec, pv_window;
  std::uint64_t pv_bound = 500;
  auto* pv_cmd = px_cmd->add_subcommand("verify", "Check a decomposition on a window");
  pv_cmd->add_option("--dec", pv_dec, "Decomposition manifest")->required();
  pv_cmd->add_option("--window", pv_window, "Window JSON")->required();
  pv_cmd->add_option("--index-bound", pv_bound, "Largest piece index checked for covers");
  add_common(pv_cmd);
  ConstructArgs pc;
  auto* pc_cmd = px_cmd->add_subcommand("construct", "Build a decomposition manifest");
  pc_cmd->add_option("--kind", pc.kind, "f2-standard, singleton, countable, lift, glue, compress or refine")->required();
  pc_cmd->add_option("--group", pc.group, "Group manifest");
  pc_cmd->add_option("--enumeration", pc.enumeration, "canonical, zigzag, lattice or shortlex");
  pc_cmd->add_option("--subgroup", pc.subgroup, "whole, multiples:<k> or cyclic:<letter>");
  pc_cmd->add_option("--inner", pc.inner, "Decomposition manifest to lift, glue, compress or refine");
  pc_cmd->add_option("--action", pc.action, "Product or trivial action for glue");
  pc_cmd->add_option("--mode", pc.mode, "uniform or independent");
  pc_cmd->add_option("--probe-window", pc.probe_window, "Window JSON on which glue probes the orbit maps");
  pc_cmd->add_option("--bound", pc.bound, "Index bound for compress");
  pc_cmd->add_option("-o,--output", pc.output, "Write the manifest here");
  add_common(pc_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const auto code = app.exit(e, out, err);
    return code == 0 ? ok : input_error;
  }

  try {
    if (*pc_cmd) return cmd_construct(pc, common, out);
    Report r;
    if (*con_cmd) r = cmd_con(con);
    else if (*eq_cmd) r = cmd_equiv(eq, common);
    else if (*pf_cmd) r = cmd_prefixes(pf_pair, pf_depth, pf_window);
    else if (*rc_cmd) r = cmd_recover(rc_g, rc_h, rc_pair, rc_q, common);
    else r = cmd_verify(pv_dec, pv_window, pv_bound);
    print(r, common, out);
    return r.code;
  } catch (const ResourceCapExceeded& e) {
    err << "error: resource cap: " << e.what() << "\n";
    return cap_exceeded;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  } catch (const PreconditionError& e) {
    err << "error: precondition: " << e.what() << "\n";
    return input_error;
  } catch (const MalformedWitness& e) {
    err << "error: malformed witness: " << e.what() << "\n";
    return input_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return failure;
  }
}

}  // namespace confpara::cli
