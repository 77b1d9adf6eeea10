#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

namespace minkq {

// Outcome of a certified (interval) comparison.
enum class Decision { yes, no, undecided };

// Outcome of an exact integer/rational comparison.
enum class Ordering { less, equal, greater };

// Precision escalation policy for decided comparisons: start at
// `initial_bits`, double until `max_bits`, report undecided past that.
struct PrecisionPolicy {
    mpfr_prec_t initial_bits = 128;
    mpfr_prec_t max_bits = 4096;
};

// Directed-rounded enclosure [lo, hi]: every operation rounds lo down and hi
// up, so the result interval always contains the exact real result.
class Interval {
public:
    explicit Interval(mpfr_prec_t prec = 128);
    Interval(const Interval& other);
    Interval(Interval&& other) noexcept;
    Interval& operator=(const Interval& other);
    Interval& operator=(Interval&& other) noexcept;
    ~Interval();

    static Interval of(long v, mpfr_prec_t prec);
    static Interval of(const mpz_class& v, mpfr_prec_t prec);
    static Interval of(const mpq_class& v, mpfr_prec_t prec);
    // [lo, hi] from exact rational endpoints.
    static Interval make(const mpq_class& lo, const mpq_class& hi, mpfr_prec_t prec);

    mpfr_prec_t precision() const { return prec_; }
    mpfr_srcptr lo() const { return lo_; }
    mpfr_srcptr hi() const { return hi_; }
    double lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
    double hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }
    double mid_d() const { return (lo_d() + hi_d()) / 2; }
    // Upper bound on hi - lo.
    double width_d() const;
    bool contains(const mpq_class& x) const;
    bool contains_zero() const;

    // Decimal rendering of the midpoint, deterministic for fixed digits.
    std::string to_string(std::size_t digits = 20) const;

    friend Interval operator+(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a, const Interval& b);
    friend Interval operator*(const Interval& a, const Interval& b);
    friend Interval operator/(const Interval& a, const Interval& b);
    Interval operator-() const;

    Interval& operator+=(const Interval& b) { return *this = *this + b; }
    Interval& operator-=(const Interval& b) { return *this = *this - b; }
    Interval& operator*=(const Interval& b) { return *this = *this * b; }
    Interval& operator/=(const Interval& b) { return *this = *this / b; }

    // Caller guarantees the true operand is >= 0; a lower endpoint pushed
    // below zero by outward rounding is clamped.
    Interval sqrt() const;
    // Natural log / base-2 log; requires lo > 0.
    Interval log() const;
    Interval log2() const;
    Interval exp() const;
    // Integer power; requires lo >= 0.
    Interval pow_ui(unsigned long e) const;
    // General power for base with lo > 0: exp(e * log(base)).
    static Interval pow(const Interval& base, const Interval& expo);
    Interval abs() const;

    // Certified strict comparisons.
    Decision less_than(const Interval& other) const;
    Decision greater_than(const Interval& other) const { return other.less_than(*this); }
    Decision positive() const;
    Decision negative() const;
    // Certified x < q / x > q against an exact rational.
    Decision less_than(const mpq_class& q) const;
    Decision greater_than(const mpq_class& q) const;

    // Smallest integer certainly >= hi / largest integer certainly <= lo.
    mpz_class ceil_upper() const;
    mpz_class floor_lower() const;

    static Interval hull(const Interval& a, const Interval& b);
    // Enclosure of max(x, y) for x in a, y in b: endpoint-wise max.
    static Interval max(const Interval& a, const Interval& b);

private:
    mpfr_t lo_, hi_;
    mpfr_prec_t prec_;
};

// Runs `probe` at doubling precision until it returns a decision.
template <typename Probe>
Decision decide(Probe&& probe, PrecisionPolicy policy = {}) {
    for (mpfr_prec_t p = policy.initial_bits;; p *= 2) {
        if (p > policy.max_bits) p = policy.max_bits;
        const Decision d = probe(p);
        if (d != Decision::undecided) return d;
        if (p == policy.max_bits) return Decision::undecided;
    }
}

}  // namespace minkq
