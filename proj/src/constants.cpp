#include "minkq/constants.hpp"

#include <stdexcept>

namespace minkq {

namespace {

// Certified bisection for the root of f(z) = 2 log(1+z) - z log 2 in [5, 6].
Interval solve_z(mpfr_prec_t prec) {
    const Interval ln2 = log2_interval(prec);
    auto f = [&](const mpq_class& zq) {
        const Interval z = Interval::of(zq, prec);
        return (Interval::of(zq + 1, prec)).log() * Interval::of(2L, prec) - z * ln2;
    };
    mpq_class lo(5), hi(6);
    // f(5) > 0 and f(6) < 0; verified once here rather than assumed.
    if (f(lo).positive() != Decision::yes || f(hi).negative() != Decision::yes) {
        throw std::logic_error("solve_z: bracket [5,6] failed certification");
    }
    for (int it = 0; it < static_cast<int>(prec) + 8; ++it) {
        const mpq_class mid = (lo + hi) / 2;
        const Decision sign = f(mid).positive();
        if (sign == Decision::undecided) break;  // width already ~2^-prec
        (sign == Decision::yes ? lo : hi) = mid;
    }
    return Interval::make(lo, hi, prec);
}

}  // namespace

Interval log2_interval(mpfr_prec_t prec) {
    return Interval::of(2L, prec).log();
}

Interval log_interval(const mpz_class& t, mpfr_prec_t prec) {
    return Interval::of(t, prec).log();
}

Interval Constants::lambda_n(unsigned long n, mpfr_prec_t prec) {
    const Interval nn = Interval::of(static_cast<long>(n), prec);
    return (nn + (nn * nn + Interval::of(4L, prec)).sqrt()) / Interval::of(2L, prec);
}

Interval phi_interval(mpfr_prec_t prec) {
    return (Interval::of(1L, prec) + Interval::of(5L, prec).sqrt()) /
           Interval::of(2L, prec);
}

Interval kappa1_interval(mpfr_prec_t prec) {
    return Interval::of(2L, prec) * phi_interval(prec).log() / log2_interval(prec);
}

Interval kappa4_interval(mpfr_prec_t prec) {
    return ((kappa1_interval(prec) - Interval::of(1L, prec)) / log2_interval(prec))
        .sqrt();
}

Constants constants(mpfr_prec_t precision_bits) {
    if (precision_bits < 32) {
        throw std::invalid_argument("constants: precision must be >= 32 bits");
    }
    const mpfr_prec_t p = precision_bits + 32;  // guard bits
    const Interval two = Interval::of(2L, p);
    const Interval ln2 = two.log();
    Constants c{
        .phi = (Interval::of(1L, p) + Interval::of(5L, p).sqrt()) / two,
        .kappa1 = Interval(p),
        .kappa2 = Interval(p),
        .kappa4 = Interval(p),
        .z = Interval(p),
        .precision = precision_bits,
    };
    c.kappa1 = two * c.phi.log() / ln2;
    const Interval l4 = Constants::lambda_n(4, p).log();
    const Interval l5 = Constants::lambda_n(5, p).log();
    c.kappa2 = (Interval::of(4L, p) * l5 - Interval::of(5L, p) * l4) /
               (l5 - l4 - two.sqrt().log());
    c.kappa4 = ((c.kappa1 - Interval::of(1L, p)) / ln2).sqrt();
    c.z = solve_z(p);
    return c;
}

}  // namespace minkq
