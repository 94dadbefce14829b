#include "confpara/group.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

#include "confpara/codec.hpp"
#include "confpara/errors.hpp"

namespace confpara {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view s, std::string_view what) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw InputError("malformed " + std::string(what) + ": '" + std::string(s) + "'");
  }
  return v;
}

std::string join_ints(const std::vector<std::int64_t>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out + "]";
}

}  // namespace

namespace detail {

class GroupImpl {
 public:
  virtual ~GroupImpl() = default;
  virtual GroupKind kind() const = 0;
  virtual std::optional<std::size_t> order() const { return std::nullopt; }
  virtual std::size_t rank() const { return 0; }
  virtual Element identity() const = 0;
  virtual Element mul(const Element& a, const Element& b) const = 0;
  virtual Element inv(const Element& a) const = 0;
  virtual bool contains(const Element& a) const = 0;
  virtual bool less(const Element& a, const Element& b) const { return a < b; }
  virtual std::string format(const Element& a) const = 0;
  virtual Element parse(std::string_view text) const = 0;
  virtual std::vector<Element> generators() const = 0;

  std::string name;
};

class FiniteGroup final : public GroupImpl {
 public:
  CayleyTable table;
  std::size_t id = 0;
  std::vector<std::size_t> inverse;
  std::vector<std::string> labels;
  std::vector<Permutation> perm_generators;
  std::vector<Permutation> perms;
  std::size_t degree = 0;

  GroupKind kind() const override { return GroupKind::finite; }
  std::optional<std::size_t> order() const override { return table.size(); }
  Element identity() const override { return Element::index(id); }

  Element mul(const Element& a, const Element& b) const override {
    return Element::index(table[check(a)][check(b)]);
  }
  Element inv(const Element& a) const override { return Element::index(inverse[check(a)]); }

  bool contains(const Element& a) const override {
    return a.data.size() == 1 && a.data[0] >= 0 &&
           static_cast<std::size_t>(a.data[0]) < table.size();
  }

  std::string format(const Element& a) const override {
    const auto i = check(a);
    return labels.empty() ? std::to_string(i) : labels[i];
  }

  Element parse(std::string_view text) const override {
    text = trim(text);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == text) return Element::index(i);
    }
    const auto v = parse_int(text, "element index");
    Element e = Element::index(static_cast<std::uint64_t>(v));
    if (v < 0 || !contains(e)) {
      throw InputError("element index " + std::to_string(v) + " out of range for group of order " +
                       std::to_string(table.size()));
    }
    return e;
  }

  std::vector<Element> generators() const override {
    std::vector<Element> gens;
    if (!perm_generators.empty()) {
      for (const auto& p : perm_generators) {
        auto it = std::lower_bound(perms.begin(), perms.end(), p);
        gens.push_back(Element::index(static_cast<std::size_t>(it - perms.begin())));
      }
      return gens;
    }
    // greedy: add the first element not yet generated
    std::vector<bool> reached(table.size(), false);
    reached[id] = true;
    std::vector<std::size_t> members{id};
    for (std::size_t g = 0; g < table.size(); ++g) {
      if (reached[g]) continue;
      gens.push_back(Element::index(g));
      // re-close
      bool grew = true;
      members.push_back(g);
      reached[g] = true;
      while (grew) {
        grew = false;
        for (std::size_t i = 0; i < members.size(); ++i) {
          for (const auto& h : gens) {
            const auto p = table[members[i]][h.as_index()];
            if (!reached[p]) {
              reached[p] = true;
              members.push_back(p);
              grew = true;
            }
          }
        }
      }
    }
    return gens;
  }

  std::size_t check(const Element& a) const {
    if (!contains(a)) throw InputError("element outside finite group of order " + std::to_string(table.size()));
    return static_cast<std::size_t>(a.data[0]);
  }
};

class FreeGroup final : public GroupImpl {
 public:
  std::size_t r = 0;

  GroupKind kind() const override { return GroupKind::free; }
  std::size_t rank() const override { return r; }
  Element identity() const override { return Element{}; }

  Element mul(const Element& a, const Element& b) const override {
    check(a);
    check(b);
    std::vector<std::int64_t> out = a.data;
    for (auto letter : b.data) {
      if (!out.empty() && out.back() == -letter) {
        out.pop_back();
      } else {
        out.push_back(letter);
      }
    }
    return Element(std::move(out));
  }

  Element inv(const Element& a) const override {
    check(a);
    std::vector<std::int64_t> out(a.data.rbegin(), a.data.rend());
    for (auto& l : out) l = -l;
    return Element(std::move(out));
  }

  bool contains(const Element& a) const override {
    for (std::size_t i = 0; i < a.data.size(); ++i) {
      const auto l = a.data[i];
      if (l == 0 || static_cast<std::size_t>(l > 0 ? l : -l) > r) return false;
      if (i > 0 && a.data[i - 1] == -l) return false;
    }
    return true;
  }

  bool less(const Element& a, const Element& b) const override {
    return codec::shortlex_less(a.data, b.data);
  }

  std::string format(const Element& a) const override {
    if (a.data.empty()) return r < 5 ? "e" : "1";
    std::string out;
    std::size_t i = 0;
    while (i < a.data.size()) {
      std::size_t j = i;
      while (j < a.data.size() && a.data[j] == a.data[i]) ++j;
      const auto letter = a.data[i];
      const auto run = static_cast<std::int64_t>(j - i) * (letter > 0 ? 1 : -1);
      if (!out.empty()) out += "*";
      out += static_cast<char>('a' + (letter > 0 ? letter : -letter) - 1);
      if (run != 1) out += "^" + std::to_string(run);
      i = j;
    }
    return out;
  }

  Element parse(std::string_view text) const override {
    text = trim(text);
    if (text.empty() || text == "1" || (text == "e" && r < 5)) return Element{};
    Element acc;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto star = text.find('*', pos);
      const auto token = trim(text.substr(pos, star == std::string_view::npos ? std::string_view::npos : star - pos));
      if (token.empty() || !std::islower(static_cast<unsigned char>(token[0]))) {
        throw InputError("malformed word '" + std::string(text) + "'");
      }
      const auto g = static_cast<std::int64_t>(token[0] - 'a' + 1);
      if (static_cast<std::size_t>(g) > r) {
        throw InputError("letter '" + std::string(1, token[0]) + "' exceeds rank " + std::to_string(r) +
                         " in word '" + std::string(text) + "'");
      }
      std::int64_t exponent = 1;
      auto rest = trim(token.substr(1));
      if (!rest.empty()) {
        if (rest[0] != '^') throw InputError("malformed word '" + std::string(text) + "'");
        exponent = parse_int(rest.substr(1), "exponent");
      }
      const std::int64_t letter = exponent >= 0 ? g : -g;
      for (std::int64_t k = 0; k < (exponent >= 0 ? exponent : -exponent); ++k) {
        acc = mul(acc, Element{letter});
      }
      if (star == std::string_view::npos) break;
      pos = star + 1;
    }
    return acc;
  }

  std::vector<Element> generators() const override {
    std::vector<Element> gens;
    for (std::size_t i = 1; i <= r; ++i) gens.push_back(Element{static_cast<std::int64_t>(i)});
    return gens;
  }

  void check(const Element& a) const {
    if (!contains(a)) throw InputError("not a reduced word over " + std::to_string(r) + " generators");
  }
};

class FreeAbelianGroup final : public GroupImpl {
 public:
  std::size_t r = 0;

  GroupKind kind() const override { return GroupKind::free_abelian; }
  std::size_t rank() const override { return r; }
  Element identity() const override { return Element(std::vector<std::int64_t>(r, 0)); }

  Element mul(const Element& a, const Element& b) const override {
    check(a);
    check(b);
    std::vector<std::int64_t> out(r);
    for (std::size_t i = 0; i < r; ++i) out[i] = a.data[i] + b.data[i];
    return Element(std::move(out));
  }

  Element inv(const Element& a) const override {
    check(a);
    std::vector<std::int64_t> out(r);
    for (std::size_t i = 0; i < r; ++i) out[i] = -a.data[i];
    return Element(std::move(out));
  }

  bool contains(const Element& a) const override { return a.data.size() == r; }

  std::string format(const Element& a) const override {
    check(a);
    return r == 1 ? std::to_string(a.data[0]) : join_ints(a.data);
  }

  Element parse(std::string_view text) const override {
    text = trim(text);
    if (!text.empty() && (text.front() == '[' || text.front() == '(')) {
      const char close = text.front() == '[' ? ']' : ')';
      if (text.back() != close) throw InputError("malformed vector '" + std::string(text) + "'");
      text = text.substr(1, text.size() - 2);
      std::vector<std::int64_t> v;
      std::size_t pos = 0;
      while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        v.push_back(parse_int(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos),
                              "coordinate"));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
      }
      Element e(std::move(v));
      check(e);
      return e;
    }
    if (r != 1) throw InputError("expected a vector of length " + std::to_string(r));
    return Element{parse_int(text, "integer")};
  }

  std::vector<Element> generators() const override {
    std::vector<Element> gens;
    for (std::size_t i = 0; i < r; ++i) {
      std::vector<std::int64_t> v(r, 0);
      v[i] = 1;
      gens.emplace_back(std::move(v));
    }
    return gens;
  }

  void check(const Element& a) const {
    if (!contains(a)) throw InputError("expected an integer vector of length " + std::to_string(r));
  }
};

class EnumeratedGroup final : public GroupImpl {
 public:
  EnumeratedOracles o;

  GroupKind kind() const override { return GroupKind::enumerated; }
  Element identity() const override { return Element::index(o.identity); }

  Element mul(const Element& a, const Element& b) const override {
    return Element::index(o.mul(check(a), check(b)));
  }
  Element inv(const Element& a) const override { return Element::index(o.inv(check(a))); }
  bool contains(const Element& a) const override { return a.data.size() == 1 && a.data[0] >= 0; }

  std::string format(const Element& a) const override { return std::to_string(check(a)); }

  Element parse(std::string_view text) const override {
    const auto v = parse_int(text, "element index");
    if (v < 0) throw InputError("negative element index");
    return Element::index(static_cast<std::uint64_t>(v));
  }

  std::vector<Element> generators() const override {
    std::vector<Element> gens;
    if (!o.coordinates || !o.from_coordinates) return gens;
    const auto dim = o.coordinates(o.identity).size();
    for (std::size_t i = 0; i < dim; ++i) {
      std::vector<std::int64_t> v(dim, 0);
      v[i] = 1;
      gens.push_back(Element::index(o.from_coordinates(v)));
    }
    return gens;
  }

  std::uint64_t check(const Element& a) const {
    if (!contains(a)) throw InputError("not an enumerated element index");
    return a.as_index();
  }
};

}  // namespace detail

namespace {

const detail::FiniteGroup& as_finite(const std::shared_ptr<const detail::GroupImpl>& impl) {
  auto* f = dynamic_cast<const detail::FiniteGroup*>(impl.get());
  if (!f) throw PreconditionError("operation requires a finite group");
  return *f;
}

void validate_table(const CayleyTable& table, std::size_t identity) {
  const std::size_t n = table.size();
  if (n == 0) throw InputError("Cayley table is empty");
  if (identity >= n) throw InputError("identity index out of range");
  for (std::size_t a = 0; a < n; ++a) {
    if (table[a].size() != n) throw InputError("Cayley table is not square", "/table/" + std::to_string(a));
    std::vector<bool> seen(n, false);
    for (std::size_t b = 0; b < n; ++b) {
      const auto v = table[a][b];
      if (v >= n) throw InputError("Cayley table entry out of range", "/table/" + std::to_string(a) + "/" + std::to_string(b));
      if (seen[v]) throw InputError("Cayley table is not a Latin square (row " + std::to_string(a) + ")");
      seen[v] = true;
    }
  }
  for (std::size_t b = 0; b < n; ++b) {
    std::vector<bool> seen(n, false);
    for (std::size_t a = 0; a < n; ++a) {
      if (seen[table[a][b]]) throw InputError("Cayley table is not a Latin square (column " + std::to_string(b) + ")");
      seen[table[a][b]] = true;
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (table[identity][a] != a || table[a][identity] != a) {
      throw InputError("index " + std::to_string(identity) + " is not a two-sided identity");
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (table[table[a][b]][c] != table[a][table[b][c]]) {
          throw InputError("Cayley table is not associative at (" + std::to_string(a) + "," + std::to_string(b) +
                           "," + std::to_string(c) + ")");
        }
      }
    }
  }
}

std::string cycle_notation(const Permutation& p) {
  std::string out;
  std::vector<bool> done(p.size(), false);
  for (std::size_t s = 0; s < p.size(); ++s) {
    if (done[s] || p[s] == s) continue;
    out += "(";
    std::size_t x = s;
    bool first = true;
    while (!done[x]) {
      done[x] = true;
      if (!first) out += " ";
      out += std::to_string(x);
      first = false;
      x = p[x];
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  // (p*q)(x) = p(q(x))
  Permutation out(q.size());
  for (std::size_t x = 0; x < q.size(); ++x) out[x] = p[q[x]];
  return out;
}

}  // namespace

Group Group::finite_cayley(CayleyTable table, std::size_t identity, std::vector<std::string> labels,
                           std::string name) {
  validate_table(table, identity);
  if (!labels.empty() && labels.size() != table.size()) throw InputError("label count differs from group order");
  auto impl = std::make_shared<detail::FiniteGroup>();
  const auto n = table.size();
  impl->inverse.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (table[a][b] == identity) impl->inverse[a] = b;
    }
  }
  impl->table = std::move(table);
  impl->id = identity;
  impl->labels = std::move(labels);
  impl->name = name.empty() ? "finite(" + std::to_string(n) + ")" : std::move(name);
  return Group(std::move(impl));
}

Group Group::from_permutations(std::size_t degree, std::vector<Permutation> generators, std::string name) {
  for (std::size_t g = 0; g < generators.size(); ++g) {
    const auto& p = generators[g];
    std::vector<bool> seen(degree, false);
    if (p.size() != degree) throw InputError("permutation has wrong degree", "/generators/" + std::to_string(g));
    for (auto v : p) {
      if (v >= degree || seen[v]) throw InputError("not a permutation", "/generators/" + std::to_string(g));
      seen[v] = true;
    }
  }
  Permutation id(degree);
  for (std::size_t i = 0; i < degree; ++i) id[i] = i;
  std::set<Permutation> elements{id};
  std::vector<Permutation> frontier{id};
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& p : frontier) {
      for (const auto& g : generators) {
        auto q = compose(g, p);
        if (elements.insert(q).second) next.push_back(std::move(q));
      }
    }
    frontier = std::move(next);
  }
  std::vector<Permutation> perms(elements.begin(), elements.end());
  const auto n = perms.size();
  CayleyTable table(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const auto c = compose(perms[a], perms[b]);
      table[a][b] = static_cast<std::size_t>(std::lower_bound(perms.begin(), perms.end(), c) - perms.begin());
    }
  }
  std::vector<std::string> labels;
  for (const auto& p : perms) labels.push_back(cycle_notation(p));
  Group base = finite_cayley(std::move(table), 0, std::move(labels),
                             name.empty() ? "perm(" + std::to_string(n) + ")" : std::move(name));
  auto impl = std::make_shared<detail::FiniteGroup>(as_finite(base.impl_));
  impl->perm_generators = std::move(generators);
  impl->perms = std::move(perms);
  impl->degree = degree;
  return Group(std::move(impl));
}

Group Group::free(std::size_t rank) {
  if (rank == 0 || rank > 26) throw InputError("free group rank must be in 1..26");
  auto impl = std::make_shared<detail::FreeGroup>();
  impl->r = rank;
  impl->name = "F" + std::to_string(rank);
  return Group(std::move(impl));
}

Group Group::free_abelian(std::size_t rank) {
  if (rank == 0) throw InputError("free abelian rank must be at least 1");
  auto impl = std::make_shared<detail::FreeAbelianGroup>();
  impl->r = rank;
  impl->name = rank == 1 ? "Z" : "Z^" + std::to_string(rank);
  return Group(std::move(impl));
}

Group Group::enumerated(EnumeratedOracles oracles, std::size_t check_prefix) {
  if (!oracles.mul || !oracles.inv) throw InputError("enumerated group needs mul and inv oracles");
  const auto id = oracles.identity;
  for (std::uint64_t i = 0; i < check_prefix; ++i) {
    if (oracles.mul(i, id) != i || oracles.mul(id, i) != i) {
      throw InputError("enumerated oracle violates the identity law at index " + std::to_string(i));
    }
    if (oracles.mul(oracles.inv(i), i) != id) {
      throw InputError("enumerated oracle violates the inverse law at index " + std::to_string(i));
    }
  }
  auto impl = std::make_shared<detail::EnumeratedGroup>();
  impl->name = oracles.name.empty() ? "enumerated" : oracles.name;
  impl->o = std::move(oracles);
  return Group(std::move(impl));
}

Group Group::enumerated_integers() {
  EnumeratedOracles o;
  o.name = "Z(enumerated)";
  o.builtin = "integers";
  o.identity = 0;
  o.mul = [](std::uint64_t a, std::uint64_t b) {
    return codec::zigzag_rank(codec::zigzag_unrank(a) + codec::zigzag_unrank(b));
  };
  o.inv = [](std::uint64_t a) { return codec::zigzag_rank(-codec::zigzag_unrank(a)); };
  o.label = [](std::uint64_t a) { return std::to_string(codec::zigzag_unrank(a)); };
  o.coordinates = [](std::uint64_t a) { return std::vector<std::int64_t>{codec::zigzag_unrank(a)}; };
  o.from_coordinates = [](const std::vector<std::int64_t>& v) { return codec::zigzag_rank(v.at(0)); };
  return enumerated(std::move(o));
}

Group Group::enumerated_lattice() {
  auto decode = [](std::uint64_t a) {
    auto [x, y] = codec::cantor_unpair(a);
    return std::vector<std::int64_t>{codec::zigzag_unrank(x), codec::zigzag_unrank(y)};
  };
  auto encode = [](const std::vector<std::int64_t>& v) {
    return codec::cantor_pair(codec::zigzag_rank(v.at(0)), codec::zigzag_rank(v.at(1)));
  };
  EnumeratedOracles o;
  o.name = "Z^2(enumerated)";
  o.builtin = "lattice";
  o.identity = 0;
  o.mul = [=](std::uint64_t a, std::uint64_t b) {
    auto u = decode(a);
    auto v = decode(b);
    return encode({u[0] + v[0], u[1] + v[1]});
  };
  o.inv = [=](std::uint64_t a) {
    auto u = decode(a);
    return encode({-u[0], -u[1]});
  };
  o.label = [=](std::uint64_t a) {
    auto u = decode(a);
    return "(" + std::to_string(u[0]) + "," + std::to_string(u[1]) + ")";
  };
  o.coordinates = decode;
  o.from_coordinates = encode;
  return enumerated(std::move(o));
}

GroupKind Group::kind() const { return impl_->kind(); }
const std::string& Group::name() const { return impl_->name; }
bool Group::is_finite() const { return impl_->order().has_value(); }
std::optional<std::size_t> Group::order() const { return impl_->order(); }
std::size_t Group::rank() const { return impl_->rank(); }
Element Group::identity() const { return impl_->identity(); }
Element Group::mul(const Element& a, const Element& b) const { return impl_->mul(a, b); }
Element Group::inv(const Element& a) const { return impl_->inv(a); }

Element Group::pow(const Element& a, std::int64_t exponent) const {
  Element base = exponent < 0 ? inv(a) : a;
  auto e = static_cast<std::uint64_t>(exponent < 0 ? -exponent : exponent);
  Element acc = identity();
  while (e > 0) {
    if (e & 1) acc = mul(acc, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return acc;
}

bool Group::contains(const Element& a) const { return impl_->contains(a); }

void Group::validate(const Element& a) const {
  if (!contains(a)) throw InputError("element is not valid in group " + name());
}

bool Group::less(const Element& a, const Element& b) const { return impl_->less(a, b); }
std::string Group::format(const Element& a) const { return impl_->format(a); }
Element Group::parse(std::string_view text) const { return impl_->parse(text); }

std::vector<Element> Group::elements() const {
  const auto& f = as_finite(impl_);
  std::vector<Element> out;
  out.reserve(f.table.size());
  for (std::size_t i = 0; i < f.table.size(); ++i) out.push_back(Element::index(i));
  return out;
}

std::vector<Element> Group::generators() const { return impl_->generators(); }
const CayleyTable& Group::cayley_table() const { return as_finite(impl_).table; }
const std::vector<std::string>& Group::labels() const { return as_finite(impl_).labels; }
const std::vector<Permutation>& Group::permutation_generators() const { return as_finite(impl_).perm_generators; }
const std::vector<Permutation>& Group::permutations() const { return as_finite(impl_).perms; }
std::size_t Group::degree() const { return as_finite(impl_).degree; }

const EnumeratedOracles& Group::oracles() const {
  auto* e = dynamic_cast<const detail::EnumeratedGroup*>(impl_.get());
  if (!e) throw PreconditionError("operation requires an enumerated group");
  return e->o;
}

ProductAndInverse mul_inv(const Group& group, const Element& a, const Element& b) {
  return {group.mul(a, b), group.inv(a)};
}

std::vector<Element> generated_subgroup(const Group& group, const std::vector<Element>& subset) {
  if (!group.is_finite()) throw PreconditionError("subgroup closure is only decidable here for finite groups");
  std::vector<Element> gens;
  for (const auto& s : subset) {
    group.validate(s);
    gens.push_back(s);
    gens.push_back(group.inv(s));
  }
  std::set<Element> reached{group.identity()};
  std::vector<Element> frontier{group.identity()};
  while (!frontier.empty()) {
    std::vector<Element> next;
    for (const auto& x : frontier) {
      for (const auto& g : gens) {
        auto y = group.mul(x, g);
        if (reached.insert(y).second) next.push_back(std::move(y));
      }
    }
    frontier = std::move(next);
  }
  return {reached.begin(), reached.end()};
}

bool is_generating(const Group& group, const std::vector<Element>& subset) {
  return generated_subgroup(group, subset).size() == *group.order();
}

}  // namespace confpara
