#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "minkq/continued_fraction.hpp"
#include "minkq/interval.hpp"

namespace minkq {

// Enclosure of (1/2) Phi^t prod_i (d_i/4) over the elements d_i > 1 of the
// sequence; the enclosed value never exceeds <A_t>.
Interval continuant_lower_bound(std::span<const std::int64_t> seq,
                                mpfr_prec_t precision_bits = 128);
inline Interval continuant_lower_bound(const PartialQuotients& seq,
                                       mpfr_prec_t precision_bits = 128) {
    return continuant_lower_bound(std::span<const std::int64_t>(seq), precision_bits);
}

// Instance of the min-product problem: sequences with real elements in
// [alpha, beta], beta > alpha >= 3, summing to s >= beta.
struct MinProductInstance {
    mpq_class s;
    mpq_class alpha;
    mpq_class beta;

    // Throws std::invalid_argument when the invariants fail.
    void validate() const;
};

// Enclosure of beta^{floor(s/beta)}.
Interval min_product_bound(const MinProductInstance& inst,
                           mpfr_prec_t precision_bits = 128);

// Exact value of beta^{floor(s/beta)} (beta is rational).
mpq_class min_product_bound_exact(const MinProductInstance& inst);

struct MinProductOracleResult {
    mpq_class minimum;                 // min product over the grid
    std::vector<mpq_class> argmin;     // a witness sequence
    // Discretization allowance k * step * beta^{k-1} with k = floor(s/alpha),
    // subtracted before declaring a bound violation.
    mpq_class slack;
    std::size_t states_explored = 0;
};

// Brute-force minimum of prod(R) over sequences with elements on the grid
// {alpha, alpha+step, ..., beta} and exact sum s. Requires (beta-alpha)/step,
// (s-alpha... every grid offset)/step integral; throws resource_limit_error
// when the DP table would exceed `state_cap`.
MinProductOracleResult min_product_oracle(const MinProductInstance& inst,
                                          const mpq_class& grid_step,
                                          std::size_t state_cap = 10'000'000);

}  // namespace minkq
