#include "confpara/equivalence.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "confpara/errors.hpp"

namespace confpara {

namespace {

constexpr std::uint64_t kDefaultCap = 5'000'000;
constexpr std::size_t kMaxLabels = 8;
constexpr std::size_t kMaxTuple = 15;

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

std::uint64_t sat_pow(std::uint64_t base, std::size_t e) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r = sat_mul(r, base);
  return r;
}

struct KeyHash {
  std::size_t operator()(const ConfigKey& k) const noexcept {
    std::size_t h = 0x84222325cbf29ce4ULL ^ k.size();
    for (auto v : k) h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

/// Rows of point indices (into the side's point list), -1 for "outside the window".
using IndexRows = std::vector<std::vector<std::int64_t>>;

struct Side {
  std::vector<Element> elements;   // tuple entries range over these
  std::vector<Point> points;       // X, or the window
  bool windowed = false;
  std::string window;
  std::vector<IndexRows> rows;     // per tuple, in tuple order
  std::uint64_t partitions = 0;
  std::size_t max_blocks = 0;      // for the RGS over `points`
};

std::vector<std::size_t> tuple_digits(std::size_t t, std::size_t base, std::size_t n) {
  std::vector<std::size_t> d(n);
  for (std::size_t i = n; i-- > 0;) {
    d[i] = t % base;
    t /= base;
  }
  return d;
}

Side prepare(const Action& action, std::size_t n, std::size_t m, const std::optional<Window>& window,
             std::uint64_t cap, const char* which) {
  Side s;
  if (action.is_finite()) {
    if (!action.group().is_finite()) {
      throw PreconditionError(std::string("action ") + which + ": tuples over an infinite group need a window");
    }
    s.elements = action.group().elements();
    s.points = action.points();
    s.window = "all";
    s.max_blocks = m;
  } else {
    if (action.kind() != ActionKind::left_translation) {
      throw PreconditionError(std::string("action ") + which +
                              ": countable actions are only supported as left translations");
    }
    if (!window) throw InputError(std::string("action ") + which + " is countable and needs a window");
    if (m < 2) throw InputError("windowed equivalence needs m >= 2 (one block is the complement)");
    s.windowed = true;
    s.elements = window->points;
    s.points = window->points;
    s.window = window->describe();
    s.max_blocks = m - 1;
  }
  const auto tuples = sat_pow(s.elements.size(), n);
  s.partitions = partition_count(s.points.size(), s.max_blocks);
  const auto pairs = sat_mul(tuples, s.partitions);
  if (pairs > cap) throw ResourceCapExceeded(std::string("pair enumeration for action ") + which, pairs, cap);

  std::unordered_map<Point, std::int64_t, ElementHash> index;
  for (std::size_t p = 0; p < s.points.size(); ++p) index.emplace(s.points[p], static_cast<std::int64_t>(p));
  auto idx = [&](const Point& y) -> std::int64_t {
    auto it = index.find(y);
    return it == index.end() ? -1 : it->second;
  };
  const auto& group = action.group();
  s.rows.reserve(static_cast<std::size_t>(tuples));
  for (std::uint64_t t = 0; t < tuples; ++t) {
    const auto digits = tuple_digits(static_cast<std::size_t>(t), s.elements.size(), n);
    std::vector<Point> base = s.points;
    if (s.windowed) {
      for (auto d : digits) {
        const auto ginv = group.inv(s.elements[d]);
        for (const auto& w : s.points) base.push_back(action.act(ginv, w));
      }
      std::sort(base.begin(), base.end());
      base.erase(std::unique(base.begin(), base.end()), base.end());
    }
    IndexRows rows;
    rows.reserve(base.size() + 1);
    for (const auto& x : base) {
      std::vector<std::int64_t> r{idx(x)};
      for (auto d : digits) r.push_back(idx(action.act(s.elements[d], x)));
      rows.push_back(std::move(r));
    }
    // a point far from the window sees the complement everywhere
    if (s.windowed) rows.emplace_back(n + 1, -1);
    s.rows.push_back(std::move(rows));
  }
  return s;
}

ConfigSet con_from_rows(const IndexRows& rows, const std::vector<std::size_t>& rgs, std::size_t complement) {
  ConfigSet out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    Configuration c;
    c.entries.reserve(r.size());
    for (auto p : r) c.entries.push_back(p < 0 ? complement : rgs[static_cast<std::size_t>(p)] + 1);
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct FirstPair {
  std::uint64_t order = 0;
  std::size_t tuple = 0;
  std::vector<std::size_t> rgs;
};

using KeyTable = std::unordered_map<ConfigKey, FirstPair, KeyHash>;

KeyTable collect(const Side& s) {
  KeyTable table;
  std::uint64_t order = 0;
  for_each_rgs(s.points.size(), s.max_blocks, [&](const std::vector<std::size_t>& rgs) {
    const auto used = rgs.empty() ? 0 : *std::max_element(rgs.begin(), rgs.end()) + 1;
    const auto complement = used + 1;
    for (std::size_t t = 0; t < s.rows.size(); ++t) {
      auto key = canonical_key(con_from_rows(s.rows[t], rgs, complement));
      table.try_emplace(std::move(key), FirstPair{order, t, rgs});
      ++order;
    }
    return true;
  });
  return table;
}

std::optional<FirstPair> first_missing(const KeyTable& from, const KeyTable& other) {
  std::optional<FirstPair> best;
  for (const auto& [key, first] : from) {
    if (other.count(key)) continue;
    if (!best || first.order < best->order) best = first;
  }
  return best;
}

EquivalenceWitness make_witness(const Side& s, const FirstPair& fp, std::size_t n, WitnessSide side) {
  EquivalenceWitness w;
  w.side = side;
  for (auto d : tuple_digits(fp.tuple, s.elements.size(), n)) w.tuple.push_back(s.elements[d]);
  const auto used = fp.rgs.empty() ? 0 : *std::max_element(fp.rgs.begin(), fp.rgs.end()) + 1;
  w.blocks.assign(used, {});
  for (std::size_t p = 0; p < fp.rgs.size(); ++p) w.blocks[fp.rgs[p]].push_back(s.points[p]);
  w.complement_block = s.windowed;
  w.configurations = con_from_rows(s.rows[fp.tuple], fp.rgs, used + 1);
  return w;
}

}  // namespace

std::uint64_t default_cap() {
  if (const char* env = std::getenv("CONFPARA_CAP")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultCap;
}

std::uint64_t partition_count(std::size_t points, std::size_t max_blocks) {
  // S(p, k) by the recurrence S(p, k) = k S(p-1, k) + S(p-1, k-1)
  std::vector<std::uint64_t> row(max_blocks + 1, 0);
  row[0] = 1;
  for (std::size_t p = 1; p <= points; ++p) {
    for (std::size_t k = std::min(p, max_blocks); k >= 1; --k) row[k] = sat_add(sat_mul(k, row[k]), row[k - 1]);
    row[0] = 0;
  }
  std::uint64_t total = 0;
  for (std::size_t k = (points == 0 ? 0 : 1); k <= max_blocks; ++k) total = sat_add(total, row[k]);
  return total;
}

void for_each_rgs(std::size_t points, std::size_t max_blocks,
                  const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  if (points == 0) {
    visit({});
    return;
  }
  if (max_blocks == 0) return;
  std::vector<std::size_t> a(points, 0);
  std::vector<std::size_t> prefix_max(points, 0);  // max of a[0..i]
  while (true) {
    if (!visit(a)) return;
    // rightmost position that can be incremented
    std::size_t i = points;
    while (i-- > 1) {
      if (a[i] <= prefix_max[i - 1] && a[i] + 1 < max_blocks) break;
    }
    if (i == 0 || i >= points) return;
    ++a[i];
    prefix_max[i] = std::max(prefix_max[i - 1], a[i]);
    for (std::size_t j = i + 1; j < points; ++j) {
      a[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
}

ConfigKey canonical_key(const ConfigSet& configs) {
  if (configs.empty()) return {0};
  const auto len = configs.front().size();
  if (len > 16) throw PreconditionError("canonical keys support configurations of at most 16 entries");
  std::vector<std::size_t> labels;
  for (const auto& c : configs) {
    if (c.size() != len) throw InputError("configurations of different lengths in one set");
    labels.insert(labels.end(), c.entries.begin(), c.entries.end());
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  const auto k = labels.size();
  if (k > 15) throw PreconditionError("canonical keys support at most 15 distinct blocks");

  std::vector<std::vector<std::size_t>> compact;
  compact.reserve(configs.size());
  for (const auto& c : configs) {
    std::vector<std::size_t> r;
    for (auto v : c.entries) r.push_back(static_cast<std::size_t>(std::lower_bound(labels.begin(), labels.end(), v) - labels.begin()));
    compact.push_back(std::move(r));
  }

  std::vector<std::size_t> sigma(k);
  std::iota(sigma.begin(), sigma.end(), 0);
  ConfigKey best;
  ConfigKey current(compact.size());
  do {
    for (std::size_t r = 0; r < compact.size(); ++r) {
      std::uint64_t code = 0;
      for (auto v : compact[r]) code = (code << 4) | static_cast<std::uint64_t>(sigma[v] + 1);
      current[r] = code;
    }
    std::sort(current.begin(), current.end());
    if (best.empty() || current < best) best = current;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  best.insert(best.begin(), static_cast<std::uint64_t>(len));
  return best;
}

ConfigSet canonical_form(const ConfigSet& configs) {
  const auto key = canonical_key(configs);
  if (configs.empty()) return {};
  const auto len = static_cast<std::size_t>(key.front());
  ConfigSet out;
  for (std::size_t r = 1; r < key.size(); ++r) {
    Configuration c;
    c.entries.resize(len);
    auto code = key[r];
    for (std::size_t pos = len; pos-- > 0;) {
      c.entries[pos] = static_cast<std::size_t>(code & 0xF);
      code >>= 4;
    }
    out.push_back(std::move(c));
  }
  return out;
}

bool equal_up_to_relabeling(const ConfigSet& a, const ConfigSet& b) {
  if (a.size() != b.size()) return false;
  return canonical_key(a) == canonical_key(b);
}

EquivalenceVerdict config_equiv_bounded(const Action& a, const Action& b, std::size_t n, std::size_t m,
                                        const EquivalenceOptions& options) {
  if (m == 0) throw InputError("m must be at least 1");
  if (m > kMaxLabels) throw InputError("m is limited to " + std::to_string(kMaxLabels));
  if (n > kMaxTuple) throw InputError("n is limited to " + std::to_string(kMaxTuple));
  if (a.is_finite() != b.is_finite()) {
    throw InputError("cannot compare a finite action with a countable one at bounded depth");
  }
  const auto cap = options.cap ? options.cap : default_cap();
  const auto sa = prepare(a, n, m, options.window_a, cap, "a");
  const auto sb = prepare(b, n, m, options.window_b, cap, "b");

  const auto ka = collect(sa);
  const auto kb = collect(sb);

  EquivalenceVerdict v;
  v.n = n;
  v.m = m;
  v.windowed = sa.windowed;
  v.window_a = sa.window;
  v.window_b = sb.window;
  v.pairs_a = sat_mul(sa.rows.size(), sa.partitions);
  v.pairs_b = sat_mul(sb.rows.size(), sb.partitions);
  v.classes_a = ka.size();
  v.classes_b = kb.size();
  if (auto fa = first_missing(ka, kb)) {
    v.witness = make_witness(sa, *fa, n, WitnessSide::a);
  } else if (auto fb = first_missing(kb, ka)) {
    v.witness = make_witness(sb, *fb, n, WitnessSide::b);
  }
  v.equivalent = !v.witness.has_value();
  return v;
}

}  // namespace confpara
