#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace minkq {

// Exact binary fraction num / 2^exp, canonical: num odd or zero, exp minimal.
// Values of ?(x) at rationals live here.
class Dyadic {
public:
    Dyadic() : num_(0), exp_(0) {}
    Dyadic(mpz_class numerator, unsigned long exponent);

    static Dyadic zero() { return Dyadic(); }
    static Dyadic one() { return Dyadic(mpz_class(1), 0); }

    const mpz_class& numerator() const { return num_; }
    unsigned long exponent() const { return exp_; }

    mpq_class to_rational() const;
    // "num/2^k" (or plain "num" when k = 0).
    std::string to_string() const;
    // Exact decimal when it terminates within `digits`, else truncated.
    std::string to_decimal(std::size_t digits = 20) const;

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
    friend bool operator==(const Dyadic& a, const Dyadic& b);
    friend bool operator!=(const Dyadic& a, const Dyadic& b) { return !(a == b); }
    friend bool operator<(const Dyadic& a, const Dyadic& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const Dyadic& a, const Dyadic& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) >= 0; }

    static int cmp(const Dyadic& a, const Dyadic& b);

private:
    mpz_class num_;
    unsigned long exp_;
};

// Closed interval of dyadics, lower <= upper.
struct Enclosure {
    Dyadic lower;
    Dyadic upper;

    Dyadic width() const { return upper - lower; }
    bool contains(const mpq_class& x) const {
        return lower.to_rational() <= x && x <= upper.to_rational();
    }
};

}  // namespace minkq
