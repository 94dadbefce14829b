#include "confpara/codec.hpp"

#include <algorithm>
#include <cmath>

#include "confpara/errors.hpp"

namespace confpara::codec {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw InputError("index codec overflow");
  return out;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw InputError("index codec overflow");
  return out;
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

std::uint64_t zigzag_rank(std::int64_t n) {
  if (n > 0) return 2 * static_cast<std::uint64_t>(n) - 1;
  return 2 * static_cast<std::uint64_t>(-n);
}

std::int64_t zigzag_unrank(std::uint64_t r) {
  if (r % 2 == 1) return static_cast<std::int64_t>((r + 1) / 2);
  return -static_cast<std::int64_t>(r / 2);
}

std::uint64_t cantor_pair(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t s = checked_add(a, b);
  const std::uint64_t s1 = checked_add(s, 1);
  // one of s, s+1 is even
  const std::uint64_t tri = (s % 2 == 0) ? checked_mul(s / 2, s1) : checked_mul(s, s1 / 2);
  return checked_add(tri, b);
}

std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t z) {
  // w(w+1)/2 <= z < (w+1)(w+2)/2
  std::uint64_t w = isqrt(z <= UINT64_MAX / 2 ? 2 * z : UINT64_MAX);
  auto tri = [](std::uint64_t v) { return v % 2 == 0 ? (v / 2) * (v + 1) : v * ((v + 1) / 2); };
  while (tri(w) > z) --w;
  while (tri(w + 1) <= z) ++w;
  const std::uint64_t b = z - tri(w);
  return {w - b, b};
}

std::uint64_t tuple_pair(std::span<const std::uint64_t> values) {
  if (values.empty()) return 0;
  std::uint64_t acc = values.back();
  for (std::size_t i = values.size() - 1; i-- > 0;) acc = cantor_pair(values[i], acc);
  return acc;
}

std::vector<std::uint64_t> tuple_unpair(std::uint64_t z, std::size_t arity) {
  std::vector<std::uint64_t> out;
  if (arity == 0) return out;
  for (std::size_t i = 0; i + 1 < arity; ++i) {
    auto [a, rest] = cantor_unpair(z);
    out.push_back(a);
    z = rest;
  }
  out.push_back(z);
  return out;
}

std::size_t letter_key(std::int64_t letter) {
  const auto g = static_cast<std::size_t>(letter > 0 ? letter : -letter);
  return 2 * (g - 1) + (letter < 0 ? 1 : 0);
}

std::int64_t letter_from_key(std::size_t key) {
  const auto g = static_cast<std::int64_t>(key / 2 + 1);
  return key % 2 == 0 ? g : -g;
}

std::uint64_t reduced_word_count(std::size_t rank, std::size_t length) {
  if (length == 0) return 1;
  std::uint64_t n = 2 * rank;
  for (std::size_t i = 1; i < length; ++i) n = checked_mul(n, 2 * rank - 1);
  return n;
}

std::uint64_t shortlex_rank(std::span<const std::int64_t> word, std::size_t rank) {
  std::uint64_t offset = 0;
  for (std::size_t len = 0; len < word.size(); ++len) {
    offset = checked_add(offset, reduced_word_count(rank, len));
  }
  if (word.empty()) return offset;
  const std::uint64_t branching = 2 * rank - 1;
  std::uint64_t within = letter_key(word[0]);
  for (std::size_t t = 1; t < word.size(); ++t) {
    const std::size_t key = letter_key(word[t]);
    const std::size_t banned = letter_key(-word[t - 1]);
    const std::size_t pos = key - (banned < key ? 1 : 0);
    within = checked_add(checked_mul(within, branching), pos);
  }
  return checked_add(offset, within);
}

std::vector<std::int64_t> shortlex_unrank(std::uint64_t r, std::size_t rank) {
  if (rank == 0) {
    if (r != 0) throw InputError("rank-0 free group has only the identity");
    return {};
  }
  std::size_t len = 0;
  while (true) {
    const std::uint64_t count = reduced_word_count(rank, len);
    if (r < count) break;
    r -= count;
    ++len;
  }
  std::vector<std::int64_t> word(len);
  if (len == 0) return word;
  const std::uint64_t branching = 2 * rank - 1;
  // digits: first in base 2*rank, remaining in base 2*rank-1 (most significant first)
  std::vector<std::uint64_t> digits(len);
  for (std::size_t t = len; t-- > 1;) {
    digits[t] = r % branching;
    r /= branching;
  }
  digits[0] = r;
  word[0] = letter_from_key(static_cast<std::size_t>(digits[0]));
  for (std::size_t t = 1; t < len; ++t) {
    const std::size_t banned = letter_key(-word[t - 1]);
    std::size_t key = static_cast<std::size_t>(digits[t]);
    if (key >= banned) ++key;
    word[t] = letter_from_key(key);
  }
  return word;
}

bool shortlex_less(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto ka = letter_key(a[i]);
    const auto kb = letter_key(b[i]);
    if (ka != kb) return ka < kb;
  }
  return false;
}

}  // namespace confpara::codec
