#include "minkq/question_mark.hpp"

#include <algorithm>
#include <stdexcept>

#include "minkq/errors.hpp"

namespace minkq {

namespace {

// Numerator of the partial sum over the common denominator 2^{S-1}:
// N = sum_k (-1)^{k+1} 2^{S - sigma_k}.
mpz_class denjoy_numerator(std::span<const std::int64_t> seq, std::int64_t total) {
    mpz_class acc(0), term;
    std::int64_t sigma = 0;
    bool positive = true;
    for (std::int64_t a : seq) {
        sigma += a;
        mpz_set_ui(term.get_mpz_t(), 1);
        mpz_mul_2exp(term.get_mpz_t(), term.get_mpz_t(),
                     static_cast<mp_bitcnt_t>(total - sigma));
        if (positive) {
            acc += term;
        } else {
            acc -= term;
        }
        positive = !positive;
    }
    return acc;
}

}  // namespace

Dyadic question_mark(std::span<const std::int64_t> seq) {
    if (seq.empty()) {
        throw std::invalid_argument("question_mark: empty sequence");
    }
    validate_quotients(seq);
    const std::int64_t total = quotient_sum(seq);
    return Dyadic(denjoy_numerator(seq, total),
                  static_cast<unsigned long>(total - 1));
}

Dyadic question_mark(const mpq_class& x) {
    return question_mark(expand(x).canonical);
}

Enclosure question_mark_enclosure(std::span<const std::int64_t> prefix) {
    if (prefix.empty()) {
        throw std::invalid_argument("question_mark_enclosure: empty prefix");
    }
    validate_quotients(prefix);
    const std::int64_t total = quotient_sum(prefix);
    // Partial sum p/2^{S-1}; tail lies strictly between 0 and (-1)^{n} 2^{-S}.
    const mpz_class p2 = denjoy_numerator(prefix, total) * 2;  // over 2^S
    const Dyadic partial(p2, static_cast<unsigned long>(total));
    const Dyadic tail(mpz_class(1), static_cast<unsigned long>(total));
    if (prefix.size() % 2 == 0) {
        return Enclosure{partial, partial + tail};
    }
    return Enclosure{partial - tail, partial};
}

namespace {

// DFS over compositions of `remaining` appended to the current convergent
// state; visits only compositions whose last part is >= 2, each value of the
// level exactly once.
template <typename Fn>
void visit_level(std::int64_t remaining, std::int64_t p_prev, std::int64_t p,
                 std::int64_t q_prev, std::int64_t q, Fn&& fn) {
    for (std::int64_t a = 1; a <= remaining; ++a) {
        const std::int64_t np = a * p + p_prev;
        const std::int64_t nq = a * q + q_prev;
        if (a == remaining) {
            if (a >= 2) fn(np, nq);
        } else {
            visit_level(remaining - a, p, np, q, nq, fn);
        }
    }
}

void check_level_args(std::int64_t n, std::int64_t cap) {
    if (n < 1) throw std::invalid_argument("stern_brocot_level: n must be >= 1");
    // 40 is the int64 safety ceiling for the convergent pairs, above any
    // practical enumeration anyway (2^40 compositions).
    if (n > cap || n > 40) {
        throw resource_limit_error("stern_brocot_level: n = " + std::to_string(n) +
                                   " exceeds enumeration cap " + std::to_string(cap));
    }
}

}  // namespace

SternBrocotLevel stern_brocot_level(std::int64_t n, std::int64_t cap) {
    check_level_args(n, cap);
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    pairs.reserve(std::size_t{1} << (n - 1));
    visit_level(n + 1, 1, 0, 0, 1,
                [&](std::int64_t p, std::int64_t q) { pairs.emplace_back(p, q); });
    std::sort(pairs.begin(), pairs.end(),
              [](const auto& a, const auto& b) {
                  return a.first * b.second < b.first * a.second;
              });
    SternBrocotLevel level{n, {}};
    level.values.reserve(pairs.size());
    for (const auto& [p, q] : pairs) {
        level.values.emplace_back(p, q);  // coprime already
    }
    return level;
}

mpq_class empirical_distribution(std::int64_t n, const mpq_class& x,
                                 std::int64_t cap) {
    check_level_args(n, cap);
    if (sgn(x) < 0 || x > 1) {
        throw std::domain_error("empirical_distribution: x must be in [0, 1]");
    }
    std::int64_t total = 0, at_most = 0;
    visit_level(n + 1, 1, 0, 0, 1, [&](std::int64_t p, std::int64_t q) {
        ++total;
        if (mpq_class(p, q) <= x) ++at_most;
    });
    mpq_class r(at_most, total);
    r.canonicalize();
    return r;
}

}  // namespace minkq
