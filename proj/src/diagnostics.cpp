#include "minkq/diagnostics.hpp"

#include <stdexcept>

namespace minkq {

Ordering derivative_ratio_compare(std::span<const std::int64_t> prefix,
                                  const mpq_class& c) {
    if (sgn(c) <= 0) {
        throw std::invalid_argument("derivative_ratio_compare: c must be > 0");
    }
    validate_quotients(prefix);
    const mpz_class q = continuant(prefix);
    const std::int64_t s = quotient_sum(prefix);
    mpz_class lhs = q * q * c.get_den() * c.get_den();
    mpz_class rhs = c.get_num() * c.get_num();
    mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), static_cast<mp_bitcnt_t>(s));
    const int cmp = ::cmp(lhs, rhs);
    if (cmp < 0) return Ordering::less;
    if (cmp > 0) return Ordering::greater;
    return Ordering::equal;
}

DiagnosticSeries::DiagnosticSeries(PartialQuotients prefix, mpfr_prec_t precision,
                                   std::optional<mpq_class> ratio_c)
    : prefix_(std::move(prefix)), precision_(precision), ratio_c_(std::move(ratio_c)) {
    if (prefix_.empty()) {
        throw std::invalid_argument("phi1_series: empty prefix");
    }
    validate_quotients(prefix_);
    const std::size_t n = prefix_.size();
    sums_.reserve(n);
    w_.reserve(n);
    phi1_.reserve(n);
    const Interval kappa1 = kappa1_interval(precision_);
    std::int64_t sum = 0, w = 0;
    ContinuantAccumulator acc;
    const bool with_ratio = ratio_c_.has_value();
    mpz_class c_den2, c_num2;
    if (with_ratio) {
        if (sgn(*ratio_c_) <= 0) {
            throw std::invalid_argument("phi1_series: ratio threshold must be > 0");
        }
        c_den2 = ratio_c_->get_den() * ratio_c_->get_den();
        c_num2 = ratio_c_->get_num() * ratio_c_->get_num();
        ratio_class_.reserve(n);
    }
    for (std::size_t i = 0; i < n; ++i) {
        sum += prefix_[i];
        if (prefix_[i] > 1) ++w;
        sums_.push_back(sum);
        w_.push_back(w);
        phi1_.push_back(Interval::of(mpz_class(sum), precision_) -
                        kappa1 * Interval::of(static_cast<long>(i + 1), precision_));
        if (with_ratio) {
            acc.push(prefix_[i]);
            mpz_class lhs = acc.value() * acc.value() * c_den2;
            mpz_class rhs = c_num2;
            mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(),
                         static_cast<mp_bitcnt_t>(sum));
            const int cmp = ::cmp(lhs, rhs);
            ratio_class_.push_back(cmp < 0   ? Ordering::less
                                   : cmp > 0 ? Ordering::greater
                                             : Ordering::equal);
        }
    }
}

std::pair<Interval, Interval> increment_bounds(std::span<const std::int64_t> prefix,
                                               std::size_t t,
                                               mpfr_prec_t precision_bits) {
    if (t < 1 || t > prefix.size()) {
        throw std::out_of_range("increment_bounds: t out of range");
    }
    validate_quotients(prefix);
    ContinuantAccumulator acc;
    std::int64_t s = 0;
    for (std::size_t i = 0; i < t; ++i) {
        acc.push(prefix[i]);
        s += prefix[i];
    }
    // <A_t><A_{t-1}> / 2^{S+4} and <A_t>^2 / 2^{S-2}, exact rationals.
    mpq_class low(acc.value() * acc.previous());
    mpq_div_2exp(low.get_mpq_t(), low.get_mpq_t(), static_cast<mp_bitcnt_t>(s + 4));
    mpq_class up(acc.value() * acc.value());
    if (s >= 2) {
        mpq_div_2exp(up.get_mpq_t(), up.get_mpq_t(), static_cast<mp_bitcnt_t>(s - 2));
    } else {
        mpq_mul_2exp(up.get_mpq_t(), up.get_mpq_t(), static_cast<mp_bitcnt_t>(2 - s));
    }
    return {Interval::of(low, precision_bits), Interval::of(up, precision_bits)};
}

PositivityReport check_phi_positive(const DiagnosticSeries& series, std::size_t from) {
    if (from < 1) from = 1;
    PositivityReport report;
    for (std::size_t t = from; t <= series.length(); ++t) {
        const Decision d = series.phi1(t).positive();
        if (d != Decision::yes) report.flagged.push_back({t, d});
    }
    return report;
}

PositivityReport check_phi_gt_3w(const DiagnosticSeries& series,
                                 std::int64_t min_large) {
    for (std::int64_t a : series.prefix()) {
        if (a != 1 && a < min_large) {
            throw std::invalid_argument(
                "check_phi_gt_3w: hypothesis violated, element " + std::to_string(a) +
                " is neither 1 nor >= " + std::to_string(min_large));
        }
    }
    PositivityReport report;
    for (std::size_t t = 1; t <= series.length(); ++t) {
        const Interval rhs =
            Interval::of(mpz_class(3 * series.w(t)), series.precision());
        const Decision d = series.phi1(t).greater_than(rhs);
        if (d != Decision::yes) report.flagged.push_back({t, d});
    }
    return report;
}

}  // namespace minkq
