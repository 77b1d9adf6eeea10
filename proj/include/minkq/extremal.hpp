#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "minkq/continued_fraction.hpp"
#include "minkq/interval.hpp"

namespace minkq {

// Parameters of the superblock construction. Paper mode derives M, P, N from
// (epsilon, lambda); override mode takes N (and everything else) verbatim so
// the construction runs at desk scale — all verifications are per-instance
// certificates either way.
struct ConstructionParams {
    mpq_class epsilon;
    mpq_class lambda;
    std::size_t m = 0;  // M
    std::size_t p = 0;  // P
    std::size_t n = 0;  // N
    std::int64_t t1 = 0;
    mpfr_prec_t precision = 256;
    bool paper_mode = false;
    // Normalizer of the d-sequence; empty = 1/alpha with
    // alpha = (kappa1-1)(1+eps/8)/log 2.
    std::optional<mpq_class> eta;
    // Length of the all-ones initial segment; empty = t_N of the first grid.
    std::optional<std::int64_t> head_length;
    // Integer rounding applied to the derived constants.
    std::string rounding_note;
};

// Paper-formula constants: M = ceil(10 log eps / log lambda),
// P = floor(log 6 / log(1+eps^2)) + 1, N = 2 M (P+2). Requires
// 1 - eps^6 < lambda < 1 and 0 < eps < 1.
ConstructionParams derive_constants(const mpq_class& epsilon, const mpq_class& lambda,
                                    mpfr_prec_t precision = 256);

// The modified minimizing sequence for the construction:
// d_1 = d_2 = sqrt((1-lambda) lambda / eta), then the equalizing recurrence.
struct DSequence {
    std::vector<Interval> d;
    Interval eta;
};

// eta defaults to 1/alpha with alpha = (kappa1-1)(1+eps/8)/log 2 (the
// verification chain's normalization); pass a custom eta to override.
DSequence modified_d_sequence(const ConstructionParams& params,
                              std::optional<Interval> eta = std::nullopt);

// One superblock: per k = 1..N the selected (m_k, n_k, t_k) and the repeat
// count r_k = (t_{k-1}-t_k)/(n_k+1).
struct SuperblockPlan {
    std::int64_t t_top = 0;  // T_i = t_0 of this superblock's grid
    std::vector<std::int64_t> m, n, t, r;  // m,n,r indexed 1..N (position k-1);
                                           // t holds t_0..t_N
};

// Selects (m_k, n_k, t_k) per the three windows
//   d_k sqrt(T log T)            <= m_k <= same (1+eps^4)
//   d_k/(kappa1-1) sqrt(T log T) <= n_k <= same (1+eps^4)
//   (log T/log 2)(1+eps/8-eps^3) <= m_k+n_k-kappa1(n_k+1) <= (log T/log 2)(1+eps/8+eps^3)
// with t_k congruent to t_{k-1} mod (n_k+1), nearest lambda^k t_0. Every
// inequality is interval-certified. Iterates n ascending and picks the
// smallest feasible m. Throws infeasible_error naming the violated window
// with a rough smallest feasible T.
SuperblockPlan plan_superblock(std::int64_t t_top, const DSequence& d,
                               const ConstructionParams& params);

// Concatenation of, for k = N down to 1, r_k repetitions of
// (m_k, 1 x n_k). Emitted length = t_0 - t_N.
PartialQuotients emit_blocks(const SuperblockPlan& plan);

enum class PatternCheck { pass, fail };

// Exact test 16 <m, 1 x n>^2 < 2^{m+n}, i.e. 2 <pattern>/sqrt2^{S} < 1/2.
PatternCheck verify_pattern(std::int64_t m, std::int64_t n);

// phi1(nu) <= (sqrt 2 + eps) kappa4 sqrt(T log T) for every nu <= T, per
// checkpoint T; reports the certified decision, the max ratio
// phi1(nu)/(kappa4 sqrt(T log T)) attained and its argmax.
struct PhiBoundCheckpoint {
    std::int64_t t = 0;
    Decision all_below = Decision::undecided;
    std::vector<std::size_t> undecided_indices;
    Interval max_ratio;
    std::size_t argmax = 0;
};

struct PhiBoundReport {
    std::vector<PhiBoundCheckpoint> checkpoints;
    bool all_pass() const {
        for (const auto& c : checkpoints) {
            if (c.all_below != Decision::yes) return false;
        }
        return true;
    }
};

PhiBoundReport verify_phi_bound(std::span<const std::int64_t> prefix,
                                std::span<const std::int64_t> checkpoints,
                                const mpq_class& epsilon,
                                mpfr_prec_t precision = 256);
inline PhiBoundReport verify_phi_bound(const PartialQuotients& prefix,
                                       const std::vector<std::int64_t>& checkpoints,
                                       const mpq_class& epsilon,
                                       mpfr_prec_t precision = 256) {
    return verify_phi_bound(std::span<const std::int64_t>(prefix),
                            std::span<const std::int64_t>(checkpoints), epsilon,
                            precision);
}

// Exact comparisons of the derivative-criterion ratio <A_t>/sqrt2^{S_x(t)}
// against `threshold` at the sample indices, plus exact non-increase checks
// between consecutive samples.
struct RatioDecaySample {
    std::size_t t = 0;
    Ordering versus_threshold = Ordering::less;
    bool worst_case_point = false;  // a_t = 1 and (t = end or a_{t+1} > 1)
};

struct RatioDecayReport {
    std::vector<RatioDecaySample> samples;
    // non_increasing[j]: ratio(sample j+1) <= ratio(sample j), exact.
    std::vector<bool> non_increasing;
    bool all_below_threshold() const {
        for (const auto& s : samples) {
            if (s.versus_threshold != Ordering::less) return false;
        }
        return true;
    }
};

RatioDecayReport verify_ratio_decay(std::span<const std::int64_t> prefix,
                                    std::span<const std::size_t> sample_points,
                                    const mpq_class& threshold = mpq_class(1, 2));
inline RatioDecayReport verify_ratio_decay(const PartialQuotients& prefix,
                                           const std::vector<std::size_t>& samples,
                                           const mpq_class& threshold = mpq_class(1, 2)) {
    return verify_ratio_decay(std::span<const std::int64_t>(prefix),
                              std::span<const std::size_t>(samples), threshold);
}

// Full construction driver: the all-ones initial segment of length t_N of the
// first superblock, then `superblocks` planned superblocks with
// T_{i+1} = floor(T_i / lambda^N). Returns the emitted prefix and the plans.
struct Construction {
    PartialQuotients prefix;
    std::vector<SuperblockPlan> plans;
    std::vector<std::size_t> superblock_ends;  // 1-based end index per superblock
};

Construction construct_extremal(const ConstructionParams& params,
                                std::size_t superblocks);

}  // namespace minkq
