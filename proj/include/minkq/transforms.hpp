#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "minkq/continued_fraction.hpp"

namespace minkq {

// (<A,1,B,p+m-1,C>, <A,m,B,p,C>) for symmetric B and p >= m >= 1; the left
// value never exceeds the right one. Throws std::invalid_argument when B is
// not symmetric or p < m.
std::pair<mpz_class, mpz_class> unit_shift_compare(const PartialQuotients& a,
                                                   const PartialQuotients& b,
                                                   const PartialQuotients& c,
                                                   std::int64_t m, std::int64_t p);

// Record of the elimination passes: for pass value v, the (s, t) index pairs
// (1-based) where a_s = v was replaced by 1 and a_t gained v - 1. A pass whose
// s has no later element > 1 inside the prefix leaves the element in place and
// records it as unmatched.
struct EliminationTrace {
    struct Pass {
        std::int64_t value = 0;
        std::vector<std::pair<std::size_t, std::size_t>> replacements;
        std::optional<std::size_t> unmatched_s;
    };
    std::vector<Pass> passes;

    bool has_unmatched_tail() const {
        for (const auto& p : passes) {
            if (p.unmatched_s) return true;
        }
        return false;
    }
};

// Rewrites the prefix so that every element is 1 or >= threshold, one pass per
// value v = 2..threshold-1 in increasing order: each a_s = v becomes 1 and the
// next element > 1 gains v - 1. Sum and length are preserved except at a
// flagged unmatched tail; prefix sums and prefix continuants never increase.
std::pair<PartialQuotients, EliminationTrace> eliminate_small(
    PartialQuotients prefix, std::int64_t threshold = 12);

}  // namespace minkq
