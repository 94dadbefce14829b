#include "confpara/partition.hpp"

#include <algorithm>
#include <set>

#include "confpara/codec.hpp"
#include "confpara/errors.hpp"

namespace confpara {

struct Partition::Impl {
  std::string name;
  bool is_explicit = false;
  std::vector<std::vector<Point>> blocks;
  std::map<Point, std::size_t> index;
  std::function<std::size_t(const Point&)> classify;
  std::optional<std::size_t> block_count;
  std::map<std::size_t, BlockEnumerator> enumerators;
};

Partition Partition::explicit_blocks(std::vector<std::vector<Point>> blocks) {
  auto impl = std::make_shared<Impl>();
  impl->name = "explicit";
  impl->is_explicit = true;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw InputError("partition block " + std::to_string(b + 1) + " is empty", "/blocks/" + std::to_string(b));
    for (const auto& p : blocks[b]) {
      if (!impl->index.emplace(p, b + 1).second) {
        throw InputError("partition blocks are not disjoint (block " + std::to_string(b + 1) + ")",
                         "/blocks/" + std::to_string(b));
      }
    }
    std::sort(blocks[b].begin(), blocks[b].end());
  }
  impl->block_count = blocks.size();
  impl->blocks = std::move(blocks);
  return Partition(std::move(impl));
}

Partition Partition::classifier(std::string name, std::function<std::size_t(const Point&)> block_of,
                                std::optional<std::size_t> block_count,
                                std::map<std::size_t, BlockEnumerator> enumerators) {
  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  impl->classify = std::move(block_of);
  impl->block_count = block_count;
  impl->enumerators = std::move(enumerators);
  return Partition(std::move(impl));
}

std::size_t Partition::block_of(const Point& x) const {
  if (impl_->is_explicit) {
    auto it = impl_->index.find(x);
    if (it == impl_->index.end()) throw InputError("point is not covered by the partition");
    return it->second;
  }
  const auto b = impl_->classify(x);
  if (b == 0) throw InputError("classifier '" + impl_->name + "' returned block 0");
  if (impl_->block_count && b > *impl_->block_count) {
    throw InputError("classifier '" + impl_->name + "' returned block " + std::to_string(b) + " beyond its " +
                     std::to_string(*impl_->block_count) + " blocks");
  }
  return b;
}

std::optional<std::size_t> Partition::block_count() const { return impl_->block_count; }
bool Partition::is_explicit() const { return impl_->is_explicit; }

const std::vector<std::vector<Point>>& Partition::blocks() const {
  if (!impl_->is_explicit) throw PreconditionError("classifier partitions have no explicit block list");
  return impl_->blocks;
}

const BlockEnumerator* Partition::enumerator(std::size_t block) const {
  if (impl_->is_explicit) return nullptr;
  auto it = impl_->enumerators.find(block);
  return it == impl_->enumerators.end() ? nullptr : &it->second;
}

const std::string& Partition::name() const { return impl_->name; }

void Partition::check_covers(const std::vector<Point>& points) const {
  for (const auto& p : points) block_of(p);
  if (impl_->is_explicit) {
    std::set<Point> universe(points.begin(), points.end());
    for (std::size_t b = 0; b < impl_->blocks.size(); ++b) {
      for (const auto& p : impl_->blocks[b]) {
        if (!universe.count(p)) {
          throw InputError("partition block " + std::to_string(b + 1) + " contains a point outside X",
                           "/blocks/" + std::to_string(b));
        }
      }
    }
  }
}

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  const auto r = a % m;
  return r < 0 ? r + m : r;
}

/// Number of integers among the first r zigzag values whose residue is in `residues`.
std::uint64_t count_first(std::uint64_t r, std::int64_t modulus, const std::vector<std::int64_t>& residues) {
  if (r == 0) return 0;
  const auto hi = static_cast<std::int64_t>(r / 2);
  const auto lo = -static_cast<std::int64_t>((r - 1) / 2);
  std::uint64_t total = 0;
  for (auto s : residues) {
    total += static_cast<std::uint64_t>(floor_div(hi - s, modulus) - floor_div(lo - 1 - s, modulus));
  }
  return total;
}

}  // namespace

Partition residue_partition(std::int64_t modulus, std::vector<std::vector<std::int64_t>> residue_blocks) {
  if (modulus < 1) throw InputError("modulus must be positive");
  std::vector<std::size_t> block_of_residue(static_cast<std::size_t>(modulus), 0);
  for (std::size_t b = 0; b < residue_blocks.size(); ++b) {
    if (residue_blocks[b].empty()) throw InputError("residue block " + std::to_string(b + 1) + " is empty");
    for (auto& s : residue_blocks[b]) {
      s = mod(s, modulus);
      if (block_of_residue[static_cast<std::size_t>(s)] != 0) throw InputError("residue listed in two blocks");
      block_of_residue[static_cast<std::size_t>(s)] = b + 1;
    }
  }
  for (std::int64_t s = 0; s < modulus; ++s) {
    if (block_of_residue[static_cast<std::size_t>(s)] == 0) {
      throw InputError("residue " + std::to_string(s) + " is in no block");
    }
  }
  std::map<std::size_t, BlockEnumerator> enumerators;
  for (std::size_t b = 0; b < residue_blocks.size(); ++b) {
    const auto residues = residue_blocks[b];
    BlockEnumerator e;
    e.position = [modulus, residues](const Point& x) {
      return count_first(codec::zigzag_rank(x.data.at(0)), modulus, residues);
    };
    e.nth = [modulus, residues](std::uint64_t k) {
      // smallest r with count_first(r) > k; the answer is the (r-1)-th zigzag value
      std::uint64_t lo = 1;
      std::uint64_t hi = 2 * static_cast<std::uint64_t>(modulus) * (k + 2);
      while (lo < hi) {
        const auto mid = lo + (hi - lo) / 2;
        if (count_first(mid, modulus, residues) > k) {
          hi = mid;
        } else {
          lo = mid + 1;
        }
      }
      return Point{codec::zigzag_unrank(lo - 1)};
    };
    enumerators.emplace(b + 1, std::move(e));
  }
  std::string name = "residue mod " + std::to_string(modulus);
  return Partition::classifier(
      std::move(name),
      [modulus, block_of_residue](const Point& x) {
        if (x.data.size() != 1) throw InputError("residue partition expects integer points");
        return block_of_residue[static_cast<std::size_t>(mod(x.data[0], modulus))];
      },
      residue_blocks.size(), std::move(enumerators));
}

Partition singleton_partition(const Enumeration& enumeration) {
  auto e = enumeration;
  return Partition::classifier(
      "singletons(" + enumeration.name + ")", [e](const Point& x) { return static_cast<std::size_t>(e.rank(x) + 1); },
      enumeration.size ? std::optional<std::size_t>(*enumeration.size) : std::nullopt);
}

}  // namespace confpara
