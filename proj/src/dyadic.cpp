#include "minkq/dyadic.hpp"

#include <stdexcept>

namespace minkq {

Dyadic::Dyadic(mpz_class numerator, unsigned long exponent)
    : num_(std::move(numerator)), exp_(exponent) {
    if (num_ == 0) {
        exp_ = 0;
        return;
    }
    const mp_bitcnt_t tz = mpz_scan1(num_.get_mpz_t(), 0);
    const mp_bitcnt_t drop = tz < exp_ ? tz : exp_;
    if (drop > 0) {
        mpz_fdiv_q_2exp(num_.get_mpz_t(), num_.get_mpz_t(), drop);
        exp_ -= drop;
    }
}

mpq_class Dyadic::to_rational() const {
    mpq_class r(num_);
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), exp_);
    return r;
}

std::string Dyadic::to_string() const {
    if (exp_ == 0) return num_.get_str();
    return num_.get_str() + "/2^" + std::to_string(exp_);
}

std::string Dyadic::to_decimal(std::size_t digits) const {
    // Long division of num by 2^exp in base 10.
    mpz_class n(num_);
    const bool neg = n < 0;
    if (neg) n = -n;
    mpz_class ipart = n >> exp_;
    mpz_class frac = n - (ipart << exp_);
    std::string out = (neg ? "-" : "") + ipart.get_str();
    if (frac == 0 || digits == 0) return out;
    out += '.';
    for (std::size_t i = 0; i < digits && frac != 0; ++i) {
        frac *= 10;
        mpz_class digit = frac >> exp_;
        out += static_cast<char>('0' + digit.get_si());
        frac -= digit << exp_;
    }
    if (frac != 0) out += "...";
    return out;
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    const unsigned long e = a.exp_ > b.exp_ ? a.exp_ : b.exp_;
    mpz_class n = (a.num_ << (e - a.exp_)) + (b.num_ << (e - b.exp_));
    return Dyadic(std::move(n), e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) {
    const unsigned long e = a.exp_ > b.exp_ ? a.exp_ : b.exp_;
    mpz_class n = (a.num_ << (e - a.exp_)) - (b.num_ << (e - b.exp_));
    return Dyadic(std::move(n), e);
}

bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exp_ == b.exp_ && a.num_ == b.num_;
}

int Dyadic::cmp(const Dyadic& a, const Dyadic& b) {
    const unsigned long e = a.exp_ > b.exp_ ? a.exp_ : b.exp_;
    mpz_class lhs = a.num_ << (e - a.exp_);
    mpz_class rhs = b.num_ << (e - b.exp_);
    return ::cmp(lhs, rhs);
}

}  // namespace minkq
