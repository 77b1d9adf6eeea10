#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "minkq/constants.hpp"
#include "minkq/continued_fraction.hpp"
#include "minkq/interval.hpp"

namespace minkq {

// Exact trichotomy of <A_t> / sqrt(2)^{S_x(t)} against a positive rational c,
// decided as the integer comparison <A_t>^2 c_den^2 vs c_num^2 2^{S}.
Ordering derivative_ratio_compare(std::span<const std::int64_t> prefix,
                                  const mpq_class& c);
inline Ordering derivative_ratio_compare(const PartialQuotients& prefix,
                                         const mpq_class& c) {
    return derivative_ratio_compare(std::span<const std::int64_t>(prefix), c);
}

// Per-index data of the deficiency series phi<sup>(1)</sup>_x(t) = S_x(t) - kappa1 t
// along a prefix, plus the element counts used by the lemma checks.
class DiagnosticSeries {
public:
    // `ratio_c`: threshold for the per-index exact ratio trichotomy, or
    // nullopt to skip it (it squares a continuant per index).
    DiagnosticSeries(PartialQuotients prefix, mpfr_prec_t precision,
                     std::optional<mpq_class> ratio_c = mpq_class(1, 2));

    const PartialQuotients& prefix() const { return prefix_; }
    std::size_t length() const { return prefix_.size(); }
    mpfr_prec_t precision() const { return precision_; }

    // 1-based t throughout, matching the paper's S_x(t).
    std::int64_t sum(std::size_t t) const { return sums_[t - 1]; }
    const Interval& phi1(std::size_t t) const { return phi1_[t - 1]; }
    std::int64_t w(std::size_t t) const { return w_[t - 1]; }
    const std::optional<mpq_class>& ratio_threshold() const { return ratio_c_; }
    std::optional<Ordering> ratio_class(std::size_t t) const {
        return ratio_class_.empty() ? std::nullopt
                                    : std::optional(ratio_class_[t - 1]);
    }

    // Recomputes phi1 at doubled precision; every interval narrows.
    DiagnosticSeries refined() const {
        return DiagnosticSeries(prefix_, precision_ * 2, ratio_c_);
    }

private:
    PartialQuotients prefix_;
    mpfr_prec_t precision_;
    std::optional<mpq_class> ratio_c_;
    std::vector<std::int64_t> sums_;
    std::vector<std::int64_t> w_;
    std::vector<Interval> phi1_;
    std::vector<Ordering> ratio_class_;
};

inline DiagnosticSeries phi1_series(PartialQuotients prefix,
                                    mpfr_prec_t precision_bits,
                                    std::optional<mpq_class> ratio_c = mpq_class(1, 2)) {
    return DiagnosticSeries(std::move(prefix), precision_bits, std::move(ratio_c));
}

// Enclosures of the increment-lemma bounds at index t (1-based, <A_0> = 1):
// lower <A_t><A_{t-1}>/2^{S+4}, upper <A_t>^2/2^{S-2}. Both are exact
// rationals, returned as point enclosures at the series precision.
std::pair<Interval, Interval> increment_bounds(std::span<const std::int64_t> prefix,
                                               std::size_t t,
                                               mpfr_prec_t precision_bits = 128);
inline std::pair<Interval, Interval> increment_bounds(const PartialQuotients& prefix,
                                                      std::size_t t,
                                                      mpfr_prec_t precision_bits = 128) {
    return increment_bounds(std::span<const std::int64_t>(prefix), t, precision_bits);
}

// One flagged index of a positivity-style scan. `decision` is `no` when the
// inequality certifiably fails and `undecided` when the current precision
// cannot tell.
struct FlaggedIndex {
    std::size_t t;
    Decision decision;
};

struct PositivityReport {
    std::vector<FlaggedIndex> flagged;
    bool all_positive() const { return flagged.empty(); }
};

// Flags every index >= from (1-based) where phi1(t) > 0 is not certified.
PositivityReport check_phi_positive(const DiagnosticSeries& series,
                                    std::size_t from = 1);

// Flags every index where phi1(t) > 3 w(A_t) is not certified. Requires every
// element to be 1 or >= min_large (the lemma hypothesis); throws
// std::invalid_argument otherwise.
PositivityReport check_phi_gt_3w(const DiagnosticSeries& series,
                                 std::int64_t min_large = 12);

}  // namespace minkq
