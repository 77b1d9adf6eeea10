#pragma once

#include "minkq/interval.hpp"

namespace minkq {

// The named constants of the problem, each as a certified enclosure.
//   phi    = (1+sqrt 5)/2
//   kappa1 = 2 log(phi) / log 2          (critical mean partial quotient)
//   kappa2 = (4 log l5 - 5 log l4) / (log l5 - log l4 - log sqrt 2)
//   kappa4 = sqrt((kappa1 - 1) / log 2)
//   z      : root of 2 log(1+z) = z log 2, z in (5, 6)
// All logs natural. sqrt(2)^kappa1 = phi by construction.
struct Constants {
    Interval phi;
    Interval kappa1;
    Interval kappa2;
    Interval kappa4;
    Interval z;
    mpfr_prec_t precision;

    // lambda_n = (n + sqrt(n^2+4)) / 2.
    static Interval lambda_n(unsigned long n, mpfr_prec_t prec);
};

// Computes every enclosure at `precision_bits` working precision plus guard
// bits, so each result width is well below 2^{1-precision_bits} relative.
// Requires precision_bits >= 32.
Constants constants(mpfr_prec_t precision_bits);

// log 2 and log(t) helpers at a given precision.
Interval log2_interval(mpfr_prec_t prec);
Interval log_interval(const mpz_class& t, mpfr_prec_t prec);

// Individual constants, computed directly (no bisection for z involved);
// cheap enough for per-call use in hot paths.
Interval phi_interval(mpfr_prec_t prec);
Interval kappa1_interval(mpfr_prec_t prec);
Interval kappa4_interval(mpfr_prec_t prec);

}  // namespace minkq
