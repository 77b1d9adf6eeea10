#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace minkq {

// A finite continued-fraction prefix (a_1, ..., a_t), every element >= 1.
using PartialQuotients = std::vector<std::int64_t>;

// Throws std::invalid_argument if any element is < 1.
void validate_quotients(std::span<const std::int64_t> seq);

// Sum of the elements (S(A)). No overflow check beyond int64 width; callers
// work with prefixes far below that range.
std::int64_t quotient_sum(std::span<const std::int64_t> seq);

// Continuant <a_1,...,a_t> over exact integers. <> = 1, <a_1> = a_1,
// <a_1..a_t> = a_t * <a_1..a_{t-1}> + <a_1..a_{t-2}>. Iterative, two running
// values, linear in the length.
mpz_class continuant(std::span<const std::int64_t> seq);
inline mpz_class continuant(const PartialQuotients& seq) {
    return continuant(std::span<const std::int64_t>(seq));
}

// Incremental continuant state over a growing prefix: keeps
// (<a_1..a_{t-1}>, <a_1..a_t>) plus the running element sum so downstream
// passes never recompute from scratch.
class ContinuantAccumulator {
public:
    ContinuantAccumulator() : prev_(1), cur_(1) {}  // <A_{-1}> by convention never read

    void push(std::int64_t a);

    // <a_1..a_t> for the elements pushed so far; 1 when empty.
    const mpz_class& value() const { return cur_; }
    // <a_1..a_{t-1}>; 1 when fewer than two elements were pushed (the <A_0>=1
    // convention).
    const mpz_class& previous() const { return len_ == 0 ? cur_ : prev_; }
    std::int64_t sum() const { return sum_; }
    std::size_t length() const { return len_; }

private:
    mpz_class prev_, cur_;
    std::int64_t sum_ = 0;
    std::size_t len_ = 0;
};

// [0; a_1, ..., a_t] = <a_2..a_t> / <a_1..a_t>, reduced, in (0, 1].
// Throws std::invalid_argument on an empty sequence.
mpq_class to_fraction(std::span<const std::int64_t> seq);
inline mpq_class to_fraction(const PartialQuotients& seq) {
    return to_fraction(std::span<const std::int64_t>(seq));
}

// The two continued-fraction representations of a rational in (0, 1]:
// canonical ends with a_n >= 2, alternate is (a_1,...,a_n - 1, 1).
// x = 1 is the degenerate single-quotient case ((1), (1)).
struct TwoExpansions {
    PartialQuotients canonical;
    PartialQuotients alternate;
    bool degenerate_one = false;
};

// Throws std::domain_error unless 0 < x <= 1.
TwoExpansions expand(const mpq_class& x);

// <a_1..a_cut> * <a_{cut+1}..a_s> + <a_1..a_{cut-1}> * <a_{cut+2}..a_s>.
// Equals continuant(seq) for every 0 <= cut <= length; throws
// std::out_of_range otherwise.
mpz_class split_product(std::span<const std::int64_t> seq, std::size_t cut);
inline mpz_class split_product(const PartialQuotients& seq, std::size_t cut) {
    return split_product(std::span<const std::int64_t>(seq), cut);
}

}  // namespace minkq
