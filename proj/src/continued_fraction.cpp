#include "minkq/continued_fraction.hpp"

#include <stdexcept>
#include <utility>

namespace minkq {

void validate_quotients(std::span<const std::int64_t> seq) {
    for (std::int64_t a : seq) {
        if (a < 1) {
            throw std::invalid_argument("partial quotient must be >= 1, got " +
                                        std::to_string(a));
        }
    }
}

std::int64_t quotient_sum(std::span<const std::int64_t> seq) {
    std::int64_t s = 0;
    for (std::int64_t a : seq) s += a;
    return s;
}

void ContinuantAccumulator::push(std::int64_t a) {
    if (a < 1) {
        throw std::invalid_argument("partial quotient must be >= 1, got " +
                                    std::to_string(a));
    }
    if (len_ == 0) {
        prev_ = 1;
        cur_ = a;
    } else {
        // prev_ <- cur_, cur_ <- a*cur_ + prev_ without a temporary alloc
        if (a <= 0xffffffffll) {
            mpz_addmul_ui(prev_.get_mpz_t(), cur_.get_mpz_t(),
                          static_cast<unsigned long>(a));
        } else {
            mpz_class am(static_cast<long>(a));
            mpz_addmul(prev_.get_mpz_t(), cur_.get_mpz_t(), am.get_mpz_t());
        }
        mpz_swap(prev_.get_mpz_t(), cur_.get_mpz_t());
    }
    sum_ += a;
    ++len_;
}

mpz_class continuant(std::span<const std::int64_t> seq) {
    validate_quotients(seq);
    ContinuantAccumulator acc;
    for (std::int64_t a : seq) acc.push(a);
    return acc.value();
}

mpq_class to_fraction(std::span<const std::int64_t> seq) {
    if (seq.empty()) {
        throw std::invalid_argument("to_fraction: empty sequence");
    }
    validate_quotients(seq);
    // p/q via the convergent recurrence; coprime by construction.
    mpz_class p_prev(1), p(0), q_prev(0), q(1);
    for (std::int64_t a : seq) {
        mpz_addmul_ui(p_prev.get_mpz_t(), p.get_mpz_t(),
                      static_cast<unsigned long>(a));
        mpz_swap(p_prev.get_mpz_t(), p.get_mpz_t());
        mpz_addmul_ui(q_prev.get_mpz_t(), q.get_mpz_t(),
                      static_cast<unsigned long>(a));
        mpz_swap(q_prev.get_mpz_t(), q.get_mpz_t());
    }
    mpq_class r;
    mpq_set_num(r.get_mpq_t(), p.get_mpz_t());
    mpq_set_den(r.get_mpq_t(), q.get_mpz_t());
    return r;
}

TwoExpansions expand(const mpq_class& x) {
    if (sgn(x) <= 0 || x > 1) {
        throw std::domain_error("expand: argument must satisfy 0 < x <= 1");
    }
    TwoExpansions out;
    if (x == 1) {
        out.canonical = {1};
        out.alternate = {1};
        out.degenerate_one = true;
        return out;
    }
    // Euclid on (den, num); x < 1 so the first quotient is >= 1 and the last
    // one lands >= 2.
    mpz_class a = x.get_den(), b = x.get_num(), q, r;
    while (b != 0) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        out.canonical.push_back(static_cast<std::int64_t>(mpz_get_si(q.get_mpz_t())));
        a = b;
        b = r;
    }
    out.alternate = out.canonical;
    out.alternate.back() -= 1;
    out.alternate.push_back(1);
    return out;
}

mpz_class split_product(std::span<const std::int64_t> seq, std::size_t cut) {
    if (cut > seq.size()) {
        throw std::out_of_range("split_product: cut past end of sequence");
    }
    validate_quotients(seq);
    ContinuantAccumulator left;
    for (std::size_t i = 0; i < cut; ++i) left.push(seq[i]);
    const mpz_class right_full = continuant(seq.subspan(cut));
    mpz_class result = left.value() * right_full;
    // Second term vanishes at the ends: a sequence of negative length has
    // continuant 0.
    if (cut >= 1 && cut + 1 <= seq.size()) {
        result += left.previous() * continuant(seq.subspan(cut + 1));
    }
    return result;
}

}  // namespace minkq
