#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <mpfr.h>

namespace minkq::verify {

struct SuiteOptions {
    std::uint64_t seed = 1;
    std::size_t trials = 1000;
    mpfr_prec_t precision = 128;
    // Prefix length for the elimination suite.
    std::size_t elimination_length = 10000;
    // Superblocks emitted by the construction suite.
    std::size_t superblocks = 1;
};

struct SuiteResult {
    std::string name;
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::size_t undecided = 0;
    // Minimal reproducing inputs for the first few failures.
    std::vector<std::string> failure_examples;

    bool passed() const { return failures == 0 && undecided == 0; }
};

// Split identity at every cut and mirror symmetry on random sequences
// (length <= 30, elements <= 1000).
SuiteResult continuant_identities(const SuiteOptions& opts);

// Both expansions round-trip through to_fraction and give identical ?(x)
// dyadics; denominators up to 10^6.
SuiteResult expansion_roundtrip(const SuiteOptions& opts);

// ?(x) < ?(y) for random ordered pairs with denominators up to 10^4.
SuiteResult question_mark_monotone(const SuiteOptions& opts);

// Enclosure soundness: ?(refinement) inside question_mark_enclosure(prefix).
SuiteResult enclosure_soundness(const SuiteOptions& opts);

// Lower bound of the product lemma vs the exact continuant on the alphabet
// {1} u [12, 200], lengths <= 50.
SuiteResult prodlem_lower_bound(const SuiteOptions& opts);

// Deterministic sweep of the min-product oracle against beta^[s/beta]:
// alpha in [3,5], beta in (alpha,8], s <= 40, all on the 1/4 lattice.
SuiteResult sumprodlem_sweep(const SuiteOptions& opts);

// <A,1,B,p+m-1,C> <= <A,m,B,p,C> on random symmetric-B instances.
SuiteResult unitvar_inequality(const SuiteOptions& opts);

// eliminate_small: output alphabet, prefix-sum and continuant domination,
// sum preservation away from flagged tails.
SuiteResult elimination_domination(const SuiteOptions& opts);

// Equalizer closed form at N=2, oracle agreement for N <= 4, convergence
// certificates across lambda, and the sqrt(2 eta) approach at lambda = 0.99.
SuiteResult minimax_equalization(const SuiteOptions& opts);

// Desk-scale construction: plan feasibility, exact pattern tests, ratio decay
// on the superblock body, phi bound at the superblock ends.
SuiteResult construction_certificates(const SuiteOptions& opts);

std::vector<SuiteResult> run_all(const SuiteOptions& opts);

}  // namespace minkq::verify
