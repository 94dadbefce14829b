#pragma once

// Index codecs that put countable objects in bijection with the naturals.
// All ranks are 0-based.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace confpara::codec {

/// 0, 1, -1, 2, -2, ...  (n > 0 -> 2n-1, n <= 0 -> -2n)
std::uint64_t zigzag_rank(std::int64_t n);
std::int64_t zigzag_unrank(std::uint64_t r);

/// Cantor pairing (a, b) -> (a+b)(a+b+1)/2 + b. Throws InputError on overflow.
std::uint64_t cantor_pair(std::uint64_t a, std::uint64_t b);
std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t z);

/// Nested Cantor pairing of a k-tuple: (v0, (v1, (v2, ...))).
std::uint64_t tuple_pair(std::span<const std::uint64_t> values);
std::vector<std::uint64_t> tuple_unpair(std::uint64_t z, std::size_t arity);

/// Free group letters: +i is a_i, -i is a_i^-1 (1-based generator numbers).
/// Shortlex letter order is a < a^-1 < b < b^-1 < ...
std::size_t letter_key(std::int64_t letter);
std::int64_t letter_from_key(std::size_t key);

/// Number of reduced words of the given length in the free group of `rank`.
std::uint64_t reduced_word_count(std::size_t rank, std::size_t length);

/// Position of a reduced word in the shortlex enumeration of F_rank.
std::uint64_t shortlex_rank(std::span<const std::int64_t> word, std::size_t rank);
std::vector<std::int64_t> shortlex_unrank(std::uint64_t r, std::size_t rank);

/// Shortlex comparison of two reduced words.
bool shortlex_less(std::span<const std::int64_t> a, std::span<const std::int64_t> b);

}  // namespace confpara::codec
