#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "minkq/interval.hpp"

namespace minkq {

// Parameters of the equalized min-max problem.
struct MinimaxInstance {
    std::size_t n = 1;        // number of terms N
    mpq_class lambda;         // in (0, 1)
    Interval eta;             // > 0
    mpfr_prec_t precision = 256;

    void validate() const;
};

// phi_i(c) = (1-lambda) sum_{k=i+1..N} sqrt(lambda)^{k-i} / c_k + eta c_i.
// Throws std::invalid_argument unless every c_i is certifiably positive.
std::vector<Interval> phi_values(std::span<const Interval> c, const mpq_class& lambda,
                                 const Interval& eta);

// phi'_i = sqrt(lambda)^i phi_i.
std::vector<Interval> phi_prime_values(std::span<const Interval> c,
                                       const mpq_class& lambda, const Interval& eta);

// The equalizing minimizer: d_1 = 0,
// d_{k+1} = (d_k + sqrt(d_k^2 + 4(1-lambda) lambda^{k+1} / eta)) / 2,
// y_min = eta d_N, and all functionals
// phi~'_k(D) = (1-lambda) sum_{j>k} lambda^j / d_j + eta d_k equal y_min.
struct MinimaxSolution {
    std::size_t n;
    mpq_class lambda;
    Interval eta;
    std::vector<Interval> d;
    Interval y_min;
    std::vector<Interval> functionals;  // phi~'_k(D), k = 1..N
    // Certified iff max_k hi - min_k lo <= 2 max interval width (all
    // functionals are the same real).
    Decision equalized;
};

MinimaxSolution solve_equalizing(const MinimaxInstance& inst);

// Lemma-dnconv style certificates for a solved instance, with
// e_k = sqrt(eta) d_k, delta_k = (1-lambda) lambda^k, X_n = sum_{k<=n} delta_k:
// e_n < sqrt(2 X_n) for every n, and e_{n+1} - e_n > sqrt(2 X_{n+2}) -
// sqrt(2 X_{n+1}) for n <= N-2.
struct ConvergenceReport {
    std::vector<std::size_t> flagged_upper;      // e_n < sqrt(2X_n) not certified
    std::vector<std::size_t> flagged_difference; // difference ordering not certified
    bool all_certified() const {
        return flagged_upper.empty() && flagged_difference.empty();
    }
};

ConvergenceReport bounds_check(const MinimaxSolution& solution);

// Brute-force min over d in R_+^N of max_k phi~'_k(D), N <= 4, nested
// one-dimensional search in double precision. `value` is an upper bound on
// y_min accurate to about `slack`; it also never drops below y_min.
struct MinmaxOracleResult {
    double value = 0;
    std::vector<double> argmin;
    double slack = 0;
};

MinmaxOracleResult brute_force_minmax(std::size_t n, const mpq_class& lambda,
                                      double eta, int iterations_per_level = 64);

// max_i phi_i and max_i phi'_i for a given c, reported against the sqrt(8 eta)
// and sqrt(2 eta) reference lines (reference only; no assertion). Also the
// first index with c_i >= 1/(2 sqrt(eta)) and, when epsilon is given, the
// greedy growth chain i_{m+1} <= i_m + M with c_{i_{m+1}} > (1+eps^2) c_{i_m},
// M = ceil(10 log eps / log lambda).
struct MaxPhiReport {
    Interval max_phi;
    Interval max_phi_prime;
    Interval ref_sqrt8eta;
    Interval ref_sqrt2eta;
    std::optional<std::size_t> threshold_witness;  // 1-based
    std::vector<std::size_t> growth_chain;         // 1-based indices
};

MaxPhiReport max_phi_lower_bounds(std::span<const Interval> c, const mpq_class& lambda,
                                  const Interval& eta,
                                  std::optional<mpq_class> epsilon = std::nullopt);

}  // namespace minkq
