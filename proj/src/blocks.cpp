#include "minkq/blocks.hpp"

#include <stdexcept>

#include "minkq/constants.hpp"

namespace minkq {

namespace {

// f sqrt(t_{i-1} log t0) = 2 log2<B> - S(B); this exact combination is what
// the sign-chain certificate needs, so it is computed once per block.
Interval f_scaled(const mpz_class& cont, std::int64_t block_sum, mpfr_prec_t prec) {
    return Interval::of(2L, prec) * Interval::of(cont, prec).log2() -
           Interval::of(mpz_class(block_sum), prec);
}

}  // namespace

BlockDecomposition block_decompose(std::span<const std::int64_t> prefix,
                                   std::int64_t t0, const mpq_class& lambda,
                                   std::int64_t num_blocks,
                                   const BlockAnalysisOptions& options) {
    const std::int64_t N = num_blocks;
    if (N < 1) throw std::invalid_argument("block_decompose: need at least one block");
    if (sgn(lambda) <= 0 || lambda >= 1) {
        throw std::invalid_argument("block_decompose: lambda must lie in (0,1)");
    }
    if (t0 < 1 || static_cast<std::size_t>(t0) > prefix.size()) {
        throw std::invalid_argument(
            "block_decompose: prefix shorter than t0 or t0 < 1");
    }
    validate_quotients(prefix.first(static_cast<std::size_t>(t0)));
    const mpfr_prec_t prec = options.precision;

    // Grid t_i = lambda^i t0; lambda^N t0 integral makes every t_i integral.
    BlockDecomposition out;
    out.grid.reserve(static_cast<std::size_t>(N) + 2);
    out.grid.push_back(t0);
    mpq_class ti(t0);
    for (std::int64_t i = 1; i <= N; ++i) {
        ti *= lambda;
        if (ti.get_den() != 1) {
            throw std::invalid_argument(
                "block_decompose: lambda^" + std::to_string(i) +
                " t0 is not an integer (grid infeasible)");
        }
        const std::int64_t t = static_cast<std::int64_t>(ti.get_num().get_si());
        if (t < 1) {
            throw std::invalid_argument("block_decompose: grid hits zero before t_N");
        }
        out.grid.push_back(t);
    }
    out.grid.push_back(0);  // t_{N+1}

    const Interval log_t0 = log_interval(mpz_class(t0), prec);
    struct { Interval kappa1; } cs{kappa1_interval(prec)};

    // Per-block statistics. blocks[i-1] = B_i spans (t_i, t_{i-1}].
    std::vector<Interval> f_scaled_blocks;  // 2 log2<B_k> - S(B_k)
    f_scaled_blocks.reserve(static_cast<std::size_t>(N) + 1);
    std::vector<Interval> fprime_scaled_blocks;
    fprime_scaled_blocks.reserve(static_cast<std::size_t>(N) + 1);
    for (std::int64_t i = 1; i <= N + 1; ++i) {
        const std::int64_t hi = out.grid[static_cast<std::size_t>(i - 1)];
        const std::int64_t lo = out.grid[static_cast<std::size_t>(i)];
        BlockDecomposition::Block blk;
        blk.length = hi - lo;
        std::int64_t max_elem = 0;
        std::size_t max_pos = 0;
        for (std::int64_t pos = lo + 1; pos <= hi; ++pos) {
            const std::int64_t a = prefix[static_cast<std::size_t>(pos - 1)];
            blk.sum += a;
            if (a >= max_elem) {
                max_elem = a;
                max_pos = static_cast<std::size_t>(pos);
            }
        }
        blk.max_element = max_elem;
        blk.max_index = max_pos;
        const auto block_span =
            prefix.subspan(static_cast<std::size_t>(lo), static_cast<std::size_t>(hi - lo));
        const mpz_class cont = continuant(block_span);
        const auto short_span = prefix.subspan(
            static_cast<std::size_t>(lo), max_pos - static_cast<std::size_t>(lo) - 1);
        const mpz_class cont_short = continuant(short_span);
        blk.short_sum = quotient_sum(short_span);

        const Interval scale =
            (Interval::of(mpz_class(hi), prec) * log_t0).sqrt();  // sqrt(t_{i-1} log t0)
        blk.c = Interval::of(mpz_class(max_elem), prec) / scale;
        f_scaled_blocks.push_back(f_scaled(cont, blk.sum, prec));
        fprime_scaled_blocks.push_back(f_scaled(cont_short, blk.short_sum, prec));
        blk.f = f_scaled_blocks.back() / scale;
        blk.f_prime = fprime_scaled_blocks.back() / scale;
        out.blocks.push_back(std::move(blk));
    }

    // (a) chain certificates: f'_i-part + suffix sums of the f_k-parts.
    std::vector<Interval> suffix(static_cast<std::size_t>(N) + 2, Interval(prec));
    for (std::int64_t k = N + 1; k >= 1; --k) {
        suffix[static_cast<std::size_t>(k - 1)] =
            suffix[static_cast<std::size_t>(k)] +
            f_scaled_blocks[static_cast<std::size_t>(k - 1)];
    }
    out.chain_negative.reserve(static_cast<std::size_t>(N));
    for (std::int64_t i = 1; i <= N; ++i) {
        const Interval chain = fprime_scaled_blocks[static_cast<std::size_t>(i - 1)] +
                               suffix[static_cast<std::size_t>(i)];
        out.chain_negative.push_back(chain.negative());
    }

    // (b) deviation |S(B_k) - kappa1 delta| vs kappa1 delta eps^5.
    const mpq_class eps5 = options.epsilon * options.epsilon * options.epsilon *
                           options.epsilon * options.epsilon;
    for (std::int64_t k = 1; k <= N + 1; ++k) {
        const auto& blk = out.blocks[static_cast<std::size_t>(k - 1)];
        const Interval delta = Interval::of(mpz_class(blk.length), prec);
        const Interval dev =
            (Interval::of(mpz_class(blk.sum), prec) - cs.kappa1 * delta).abs();
        const Interval threshold = cs.kappa1 * delta * Interval::of(eps5, prec);
        out.deviation_large.push_back(dev.greater_than(threshold));
    }

    // Prefix sums once for phi1 evaluations.
    std::vector<std::int64_t> psum(static_cast<std::size_t>(t0) + 1, 0);
    for (std::int64_t u = 1; u <= t0; ++u) {
        psum[static_cast<std::size_t>(u)] =
            psum[static_cast<std::size_t>(u - 1)] + prefix[static_cast<std::size_t>(u - 1)];
    }
    auto phi1_at = [&](std::size_t u) {
        return Interval::of(mpz_class(psum[u]), prec) -
               cs.kappa1 * Interval::of(mpz_class(static_cast<long>(u)), prec);
    };

    // max phi1 over [t_N, t_0] vs t0^{0.9}. The max only moves at indices with
    // a_u > 1 (phi decreases on unit steps), plus the window start.
    const std::int64_t tN = out.grid[static_cast<std::size_t>(N)];
    Interval max_phi = phi1_at(static_cast<std::size_t>(tN));
    for (std::int64_t u = tN + 1; u <= t0; ++u) {
        if (prefix[static_cast<std::size_t>(u - 1)] > 1) {
            max_phi = Interval::max(max_phi, phi1_at(static_cast<std::size_t>(u)));
        }
    }
    out.max_phi_window = max_phi;
    const Interval t09 = Interval::pow(Interval::of(mpz_class(t0), prec),
                                       Interval::of(mpq_class(9, 10), prec));
    out.max_phi_ge_t09 = max_phi.greater_than(t09);

    // (c) main estimate per i = 1..N.
    const Interval sqrt_lambda = Interval::of(lambda, prec).sqrt();
    const Interval one_minus_lambda = Interval::of(mpq_class(1) - lambda, prec);
    const Interval coeff = (cs.kappa1 - Interval::of(1L, prec)) * one_minus_lambda /
                           log2_interval(prec);
    for (std::int64_t i = 1; i <= N; ++i) {
        BlockDecomposition::MainEstimate est;
        const auto& blk = out.blocks[static_cast<std::size_t>(i - 1)];
        est.at_index = blk.max_index;
        est.lhs = phi1_at(blk.max_index);
        Interval sum(prec);
        Interval lam_pow = Interval::of(1L, prec);
        for (std::int64_t k = i + 1; k <= N; ++k) {
            lam_pow = lam_pow * sqrt_lambda;
            sum += lam_pow / out.blocks[static_cast<std::size_t>(k - 1)].c;
        }
        const Interval scale =
            (Interval::of(mpz_class(out.grid[static_cast<std::size_t>(i - 1)]), prec) *
             log_t0)
                .sqrt();
        est.rhs = (coeff * sum + blk.c) * scale;
        est.ratio = est.lhs / est.rhs;
        out.main_estimates.push_back(std::move(est));
    }
    return out;
}

}  // namespace minkq
