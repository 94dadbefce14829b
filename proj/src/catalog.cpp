#include "confpara/catalog.hpp"

#include <array>

#include "confpara/errors.hpp"

namespace confpara::catalog {

Group cyclic(std::size_t n) {
  if (n == 0) throw InputError("cyclic group order must be positive");
  CayleyTable t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  }
  return Group::finite_cayley(std::move(t), 0, {}, "Z" + std::to_string(n));
}

Group direct_product(const Group& g, const Group& h, std::string name) {
  const auto ng = *g.order();
  const auto nh = *h.order();
  const auto& tg = g.cayley_table();
  const auto& th = h.cayley_table();
  CayleyTable t(ng * nh, std::vector<std::size_t>(ng * nh));
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < ng * nh; ++a) {
    labels.push_back("(" + g.format(Element::index(a / nh)) + "," + h.format(Element::index(a % nh)) + ")");
    for (std::size_t b = 0; b < ng * nh; ++b) {
      t[a][b] = tg[a / nh][b / nh] * nh + th[a % nh][b % nh];
    }
  }
  const auto id = g.identity().as_index() * nh + h.identity().as_index();
  return Group::finite_cayley(std::move(t), id, std::move(labels),
                              name.empty() ? g.name() + "x" + h.name() : std::move(name));
}

Group symmetric(std::size_t degree) {
  if (degree < 2) return Group::from_permutations(1, {{0}}, "S1");
  Permutation swap(degree), cycle(degree);
  for (std::size_t i = 0; i < degree; ++i) {
    swap[i] = i;
    cycle[i] = (i + 1) % degree;
  }
  std::swap(swap[0], swap[1]);
  return Group::from_permutations(degree, {swap, cycle}, "S" + std::to_string(degree));
}

Group alternating(std::size_t degree) {
  if (degree < 3) return Group::from_permutations(std::max<std::size_t>(degree, 1), {}, "A" + std::to_string(degree));
  // 3-cycles (0 1 k) generate A_n
  std::vector<Permutation> gens;
  for (std::size_t k = 2; k < degree; ++k) {
    Permutation p(degree);
    for (std::size_t i = 0; i < degree; ++i) p[i] = i;
    p[0] = 1;
    p[1] = k;
    p[k] = 0;
    gens.push_back(p);
  }
  return Group::from_permutations(degree, std::move(gens), "A" + std::to_string(degree));
}

Group dihedral(std::size_t n) {
  if (n < 3) throw InputError("dihedral group needs n >= 3");
  Permutation rot(n), refl(n);
  for (std::size_t i = 0; i < n; ++i) {
    rot[i] = (i + 1) % n;
    refl[i] = (n - i) % n;
  }
  return Group::from_permutations(n, {rot, refl}, "D" + std::to_string(n));
}

Group quaternion() {
  // unit u in {1,i,j,k} = 0..3, element index = 2u + (negative ? 1 : 0)
  // unit products: sign and unit of u*v
  constexpr std::array<std::array<std::pair<int, int>, 4>, 4> unit_mul{{
      {{{1, 0}, {1, 1}, {1, 2}, {1, 3}}},
      {{{1, 1}, {-1, 0}, {1, 3}, {-1, 2}}},
      {{{1, 2}, {-1, 3}, {-1, 0}, {1, 1}}},
      {{{1, 3}, {1, 2}, {-1, 1}, {-1, 0}}},
  }};
  CayleyTable t(8, std::vector<std::size_t>(8));
  for (std::size_t a = 0; a < 8; ++a) {
    for (std::size_t b = 0; b < 8; ++b) {
      const auto [s, u] = unit_mul[a / 2][b / 2];
      const int sign = s * ((a % 2) ? -1 : 1) * ((b % 2) ? -1 : 1);
      t[a][b] = static_cast<std::size_t>(2 * u + (sign < 0 ? 1 : 0));
    }
  }
  return Group::finite_cayley(std::move(t), 0, {"1", "-1", "i", "-i", "j", "-j", "k", "-k"}, "Q8");
}

std::vector<std::pair<std::string, Group>> fixture_groups() {
  const auto z2 = cyclic(2);
  return {
      {"Z2", z2},
      {"Z3", cyclic(3)},
      {"Z4", cyclic(4)},
      {"Z2xZ2", direct_product(z2, z2, "Z2xZ2")},
      {"Z5", cyclic(5)},
      {"Z6", cyclic(6)},
      {"S3", symmetric(3)},
      {"Z7", cyclic(7)},
      {"Z8", cyclic(8)},
      {"Z4xZ2", direct_product(cyclic(4), z2, "Z4xZ2")},
      {"Z2^3", direct_product(direct_product(z2, z2), z2, "Z2^3")},
      {"D4", dihedral(4)},
      {"Q8", quaternion()},
  };
}

}  // namespace confpara::catalog
