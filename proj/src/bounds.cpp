#include "minkq/bounds.hpp"

#include <stdexcept>

#include "minkq/constants.hpp"
#include "minkq/errors.hpp"

namespace minkq {

Interval continuant_lower_bound(std::span<const std::int64_t> seq,
                                mpfr_prec_t precision_bits) {
    if (seq.empty()) {
        throw std::invalid_argument("continuant_lower_bound: empty sequence");
    }
    validate_quotients(seq);
    const mpfr_prec_t p = precision_bits;
    // Product of d_i/4 collected exactly, then one interval multiply.
    mpq_class prod(1, 2);  // the leading 1/2
    for (std::int64_t a : seq) {
        if (a > 1) prod *= mpq_class(a, 4);
    }
    const Interval phi_pow =
        phi_interval(p).pow_ui(static_cast<unsigned long>(seq.size()));
    return phi_pow * Interval::of(prod, p);
}

void MinProductInstance::validate() const {
    if (alpha < 3) throw std::invalid_argument("min-product: alpha must be >= 3");
    if (beta <= alpha) throw std::invalid_argument("min-product: beta must exceed alpha");
    if (s < beta) throw std::invalid_argument("min-product: s must be >= beta");
}

mpq_class min_product_bound_exact(const MinProductInstance& inst) {
    inst.validate();
    mpz_class k;
    mpz_fdiv_q(k.get_mpz_t(), mpq_class(inst.s / inst.beta).get_num().get_mpz_t(),
               mpq_class(inst.s / inst.beta).get_den().get_mpz_t());
    mpq_class out;
    mpz_pow_ui(out.get_num().get_mpz_t(), inst.beta.get_num().get_mpz_t(),
               k.get_ui());
    mpz_pow_ui(out.get_den().get_mpz_t(), inst.beta.get_den().get_mpz_t(),
               k.get_ui());
    out.canonicalize();
    return out;
}

Interval min_product_bound(const MinProductInstance& inst, mpfr_prec_t precision_bits) {
    return Interval::of(min_product_bound_exact(inst), precision_bits);
}

MinProductOracleResult min_product_oracle(const MinProductInstance& inst,
                                          const mpq_class& grid_step,
                                          std::size_t state_cap) {
    inst.validate();
    if (sgn(grid_step) <= 0) {
        throw std::invalid_argument("min-product oracle: grid step must be > 0");
    }
    // Everything on the integer lattice of grid_step.
    auto lattice = [&](const mpq_class& x) {
        const mpq_class q = x / grid_step;
        if (q.get_den() != 1) {
            throw std::invalid_argument(
                "min-product oracle: grid step must divide alpha, beta and s");
        }
        return static_cast<std::int64_t>(q.get_num().get_si());
    };
    const std::int64_t a = lattice(inst.alpha);
    const std::int64_t b = lattice(inst.beta);
    const std::int64_t target = lattice(inst.s);

    const std::size_t states = static_cast<std::size_t>(target) + 1;
    if (states * static_cast<std::size_t>(b - a + 1) > state_cap) {
        throw resource_limit_error("min-product oracle: search space exceeds cap");
    }

    // f[u] = min product of grid sequences summing to u; parent for witness.
    const mpq_class unreachable(-1);
    std::vector<mpq_class> best(states, unreachable);
    std::vector<std::int64_t> parent(states, -1);
    best[0] = 1;
    std::size_t explored = 0;
    for (std::int64_t u = a; u <= target; ++u) {
        for (std::int64_t g = a; g <= b && g <= u; ++g) {
            const std::int64_t rest = u - g;
            if (best[static_cast<std::size_t>(rest)] == unreachable) continue;
            ++explored;
            const mpq_class candidate =
                best[static_cast<std::size_t>(rest)] * mpq_class(g) * grid_step;
            auto& slot = best[static_cast<std::size_t>(u)];
            if (slot == unreachable || candidate < slot) {
                slot = candidate;
                parent[static_cast<std::size_t>(u)] = g;
            }
        }
    }
    if (best[static_cast<std::size_t>(target)] == unreachable) {
        throw std::invalid_argument(
            "min-product oracle: s is not reachable on the grid");
    }

    MinProductOracleResult out;
    out.minimum = best[static_cast<std::size_t>(target)];
    out.states_explored = explored;
    for (std::int64_t u = target; u > 0; u -= parent[static_cast<std::size_t>(u)]) {
        out.argmin.push_back(mpq_class(parent[static_cast<std::size_t>(u)]) * grid_step);
    }
    // k step beta^{k-1} with k the longest possible sequence.
    mpz_class k;
    const mpq_class ratio = inst.s / inst.alpha;
    mpz_fdiv_q(k.get_mpz_t(), ratio.get_num().get_mpz_t(), ratio.get_den().get_mpz_t());
    mpq_class beta_pow(1);
    for (mpz_class i = 1; i < k; ++i) beta_pow *= inst.beta;
    out.slack = mpq_class(k) * grid_step * beta_pow;
    return out;
}

}  // namespace minkq
