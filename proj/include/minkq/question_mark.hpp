#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "minkq/continued_fraction.hpp"
#include "minkq/dyadic.hpp"

namespace minkq {

// ?([0;a_1..a_n]) = sum_{k=1..n} (-1)^{k+1} / 2^{a_1+...+a_k - 1}, exact.
// Both representations of a rational give the same dyadic.
// Throws std::invalid_argument on an empty sequence.
Dyadic question_mark(std::span<const std::int64_t> seq);
inline Dyadic question_mark(const PartialQuotients& seq) {
    return question_mark(std::span<const std::int64_t>(seq));
}

// ?(x) for a rational x in (0, 1].
Dyadic question_mark(const mpq_class& x);

// Interval guaranteed to contain ?(y) for every irrational y whose expansion
// begins with `prefix`. Width is exactly 2^{-S(prefix)} (the alternating tail
// bound, one power below the 2^{-(S-1)} guarantee).
Enclosure question_mark_enclosure(std::span<const std::int64_t> prefix);
inline Enclosure question_mark_enclosure(const PartialQuotients& prefix) {
    return question_mark_enclosure(std::span<const std::int64_t>(prefix));
}

// Level n of the Stern-Brocot tree: all rationals [0;a_1..a_k] with
// a_1+...+a_k = n+1, sorted ascending. |values| = 2^{n-1}.
struct SternBrocotLevel {
    std::int64_t n;
    std::vector<mpq_class> values;
};

inline constexpr std::int64_t kDefaultLevelCap = 24;

// Enumerates compositions of n+1 whose last part is >= 2 (one per value).
// Throws resource_limit_error when n exceeds `cap`.
SternBrocotLevel stern_brocot_level(std::int64_t n,
                                    std::int64_t cap = kDefaultLevelCap);

// |{v in B_n : v <= x}| / |B_n| as an exact rational. Streams the level, so
// no materialization. Requires 0 <= x <= 1.
mpq_class empirical_distribution(std::int64_t n, const mpq_class& x,
                                 std::int64_t cap = kDefaultLevelCap);

}  // namespace minkq
