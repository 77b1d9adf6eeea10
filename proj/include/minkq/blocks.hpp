#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "minkq/continued_fraction.hpp"
#include "minkq/interval.hpp"

namespace minkq {

struct BlockAnalysisOptions {
    // Epsilon of the deviation threshold kappa1 (t_{k-1}-t_k) eps^5.
    mpq_class epsilon = mpq_class(1, 2);
    mpfr_prec_t precision = 256;
};

// The block statistics of a prefix along the geometric grid t_i = lambda^i t_0,
// together with the sign/deviation/main-estimate diagnostics. The main
// inequality is reported as data (lhs, rhs, ratio), never asserted: its
// asymptotic correction factor is fixed at 1.
struct BlockDecomposition {
    std::vector<std::int64_t> grid;  // t_0 > t_1 > ... > t_N, then t_{N+1} = 0

    struct Block {
        std::int64_t sum = 0;           // S(B_i)
        std::int64_t length = 0;        // t_{i-1} - t_i
        std::int64_t max_element = 0;   // M_i
        std::size_t max_index = 0;      // m_i: 1-based global index, rightmost max
        std::int64_t short_sum = 0;     // S(B'_i), elements before the max
        Interval c;                     // M_i / sqrt(t_{i-1} log t_0)
        Interval f;                     // <B_i>  = sqrt2^{S(B_i)  + f  sqrt(t_{i-1} log t_0)}
        Interval f_prime;               // <B'_i> = sqrt2^{S(B'_i) + f' sqrt(t_{i-1} log t_0)}
    };
    std::vector<Block> blocks;  // size N+1, blocks[i-1] = B_i

    // Sign certificate of f'_i sqrt(t_{i-1} L) + sum_{k>i} f_k sqrt(t_{k-1} L) < 0
    // for i = 1..N (yes = certified negative).
    std::vector<Decision> chain_negative;

    // |S(B_k) - kappa1 (t_{k-1}-t_k)| > kappa1 (t_{k-1}-t_k) eps^5 per block.
    std::vector<Decision> deviation_large;

    // max of phi1 over the window [t_N, t_0] against t_0^{0.9}.
    Interval max_phi_window;
    Decision max_phi_ge_t09 = Decision::undecided;

    struct MainEstimate {
        std::size_t at_index = 0;  // m_i
        Interval lhs;              // phi1(m_i)
        Interval rhs;              // ((k1-1)(1-l)/log2 sum sqrt(l)^{k-i}/c_k + c_i) sqrt(t_{i-1} log t_0)
        Interval ratio;            // lhs / rhs
    };
    std::vector<MainEstimate> main_estimates;  // i = 1..N
};

// Decomposes prefix[0..t0) into blocks B_1..B_{N+1} along t_i = lambda^i t0.
// Requires 0 < lambda < 1 rational, lambda^N t0 a positive integer (which
// makes every t_i integral) and t0 <= prefix length; throws
// std::invalid_argument otherwise.
BlockDecomposition block_decompose(std::span<const std::int64_t> prefix,
                                   std::int64_t t0, const mpq_class& lambda,
                                   std::int64_t num_blocks,
                                   const BlockAnalysisOptions& options = {});
inline BlockDecomposition block_decompose(const PartialQuotients& prefix,
                                          std::int64_t t0, const mpq_class& lambda,
                                          std::int64_t num_blocks,
                                          const BlockAnalysisOptions& options = {}) {
    return block_decompose(std::span<const std::int64_t>(prefix), t0, lambda,
                           num_blocks, options);
}

}  // namespace minkq
