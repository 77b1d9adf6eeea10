#include "minkq/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "minkq/constants.hpp"
#include "minkq/errors.hpp"

namespace minkq {

namespace {

// ceil of the real enclosed by gen(p), escalating precision until the
// endpoints agree on it.
mpz_class certified_ceil(const std::function<Interval(mpfr_prec_t)>& gen,
                         mpfr_prec_t initial, mpfr_prec_t max_bits = 1 << 16) {
    for (mpfr_prec_t p = initial;; p *= 2) {
        const Interval iv = gen(p);
        mpz_class lo, hi;
        mpfr_get_z(lo.get_mpz_t(), iv.lo(), MPFR_RNDU);  // ceil(lo)
        mpfr_get_z(hi.get_mpz_t(), iv.hi(), MPFR_RNDU);  // ceil(hi)
        if (lo == hi) return lo;
        if (p >= max_bits) {
            throw undecided_error("ceil undecided at maximum precision");
        }
    }
}

mpz_class certified_floor(const std::function<Interval(mpfr_prec_t)>& gen,
                          mpfr_prec_t initial, mpfr_prec_t max_bits = 1 << 16) {
    for (mpfr_prec_t p = initial;; p *= 2) {
        const Interval iv = gen(p);
        mpz_class lo, hi;
        mpfr_get_z(lo.get_mpz_t(), iv.lo(), MPFR_RNDD);
        mpfr_get_z(hi.get_mpz_t(), iv.hi(), MPFR_RNDD);
        if (lo == hi) return lo;
        if (p >= max_bits) {
            throw undecided_error("floor undecided at maximum precision");
        }
    }
}

}  // namespace

ConstructionParams derive_constants(const mpq_class& epsilon, const mpq_class& lambda,
                                    mpfr_prec_t precision) {
    if (sgn(epsilon) <= 0 || epsilon >= 1) {
        throw std::invalid_argument("derive_constants: epsilon must be in (0,1)");
    }
    mpq_class eps6 = epsilon;
    for (int i = 0; i < 5; ++i) eps6 *= epsilon;
    if (lambda >= 1 || lambda <= 1 - eps6) {
        throw std::invalid_argument(
            "derive_constants: lambda must satisfy 1 - eps^6 < lambda < 1");
    }
    ConstructionParams params;
    params.epsilon = epsilon;
    params.lambda = lambda;
    params.precision = precision;
    params.paper_mode = true;
    params.rounding_note = "M = ceil(10 log eps / log lambda), P = floor(log 6 / "
                           "log(1+eps^2)) + 1";
    const mpz_class m = certified_ceil(
        [&](mpfr_prec_t p) {
            return Interval::of(10L, p) * Interval::of(epsilon, p).log() /
                   Interval::of(lambda, p).log();
        },
        precision);
    const mpz_class pfloor = certified_floor(
        [&](mpfr_prec_t p) {
            return Interval::of(6L, p).log() /
                   Interval::of(mpq_class(1) + epsilon * epsilon, p).log();
        },
        precision);
    params.m = m.get_ui();
    params.p = pfloor.get_ui() + 1;
    params.n = 2 * params.m * (params.p + 2);
    return params;
}

DSequence modified_d_sequence(const ConstructionParams& params,
                              std::optional<Interval> eta_opt) {
    if (params.n < 2) {
        throw std::invalid_argument("modified_d_sequence: need N >= 2");
    }
    const mpfr_prec_t p = params.precision;
    Interval eta(p);
    if (!eta_opt && params.eta) eta_opt = Interval::of(*params.eta, p);
    if (eta_opt) {
        eta = *eta_opt;
    } else {
        // alpha = (kappa1 - 1)(1 + eps/8)/log 2, eta = 1/alpha.
        struct { Interval kappa1; } cs{kappa1_interval(p)};
        const Interval alpha = (cs.kappa1 - Interval::of(1L, p)) *
                               Interval::of(mpq_class(1) + params.epsilon / 8, p) /
                               log2_interval(p);
        eta = Interval::of(1L, p) / alpha;
    }
    if (eta.positive() != Decision::yes) {
        throw std::invalid_argument("modified_d_sequence: eta must be > 0");
    }

    DSequence seq;
    seq.eta = eta;
    seq.d.reserve(params.n);
    const Interval lambda = Interval::of(params.lambda, p);
    const Interval one_minus = Interval::of(mpq_class(1) - params.lambda, p);
    const Interval four = Interval::of(4L, p);
    const Interval two = Interval::of(2L, p);
    const Interval d12 = (one_minus * lambda / eta).sqrt();
    seq.d.push_back(d12);
    seq.d.push_back(d12);
    Interval lam_pow = lambda * lambda;  // lambda^{k+1} for k = 2
    for (std::size_t k = 2; k < params.n; ++k) {
        lam_pow = lam_pow * lambda;
        const Interval& dk = seq.d.back();
        const Interval term = four * one_minus * lam_pow / eta;
        seq.d.push_back((dk + (dk * dk + term).sqrt()) / two);
    }
    return seq;
}

namespace {

struct IntRange {
    mpz_class lo, hi;
    bool empty() const { return lo > hi; }
};

// Certified inner integer range of [lo_expr, hi_expr]: integers m with
// m >= lo_expr and m <= hi_expr guaranteed.
IntRange inner_range(const Interval& lo_expr, const Interval& hi_expr) {
    return IntRange{lo_expr.ceil_upper(), hi_expr.floor_lower()};
}

}  // namespace

SuperblockPlan plan_superblock(std::int64_t t_top, const DSequence& dseq,
                               const ConstructionParams& params) {
    if (t_top < 3) throw std::invalid_argument("plan_superblock: T too small");
    const std::size_t n_blocks = params.n;
    if (dseq.d.size() < n_blocks) {
        throw std::invalid_argument("plan_superblock: d sequence shorter than N");
    }
    const mpfr_prec_t p = params.precision;
    struct { Interval kappa1; } cs{kappa1_interval(p)};
    const mpq_class& eps = params.epsilon;
    mpq_class eps3 = eps * eps * eps;
    mpq_class eps4 = eps3 * eps;

    const Interval big_t = Interval::of(mpz_class(t_top), p);
    const Interval scale = (big_t * big_t.log()).sqrt();  // sqrt(T log T)
    const Interval lg_t = big_t.log() / log2_interval(p);  // log T / log 2
    const Interval w3_lo = lg_t * Interval::of(mpq_class(1) + eps / 8 - eps3, p);
    const Interval w3_hi = lg_t * Interval::of(mpq_class(1) + eps / 8 + eps3, p);
    const Interval one_plus_eps4 = Interval::of(mpq_class(1) + eps4, p);
    const Interval k1m1 = cs.kappa1 - Interval::of(1L, p);

    SuperblockPlan plan;
    plan.t_top = t_top;
    plan.m.assign(n_blocks, 0);
    plan.n.assign(n_blocks, 0);
    plan.r.assign(n_blocks, 0);
    plan.t.assign(n_blocks + 1, 0);
    plan.t[0] = t_top;

    mpq_class lambda_pow(1);
    std::int64_t t_prev = t_top;
    for (std::size_t k = 1; k <= n_blocks; ++k) {
        const Interval& dk = dseq.d[k - 1];
        const Interval m_anchor = dk * scale;
        const Interval n_anchor = dk / k1m1 * scale;
        const IntRange m_window = inner_range(m_anchor, m_anchor * one_plus_eps4);
        const IntRange n_window = inner_range(n_anchor, n_anchor * one_plus_eps4);
        if (m_window.empty() || n_window.empty()) {
            throw infeasible_error(
                "plan_superblock: size window for block " + std::to_string(k) +
                    " contains no integer",
                m_window.empty() ? "m-window (eps^4 width)" : "n-window (eps^4 width)",
                4 * t_top);
        }
        bool window_hit = false;
        bool found = false;
        for (mpz_class nv = n_window.lo; nv <= n_window.hi && !found; ++nv) {
            // window3 solved for m: m in [w3_lo, w3_hi] + kappa1(n+1) - n.
            const Interval shift =
                cs.kappa1 * Interval::of(mpz_class(nv + 1), p) - Interval::of(nv, p);
            IntRange joint = inner_range(w3_lo + shift, w3_hi + shift);
            if (joint.lo < m_window.lo) joint.lo = m_window.lo;
            if (joint.hi > m_window.hi) joint.hi = m_window.hi;
            if (joint.empty()) continue;
            window_hit = true;
            // The windows guarantee the pattern ratio test only in the limit;
            // at finite scale require it exactly, smallest passing m first.
            for (mpz_class mv = joint.lo; mv <= joint.hi; ++mv) {
                const std::int64_t m_cand = static_cast<std::int64_t>(mv.get_si());
                const std::int64_t n_cand = static_cast<std::int64_t>(nv.get_si());
                if (verify_pattern(m_cand, n_cand) == PatternCheck::pass) {
                    plan.m[k - 1] = m_cand;
                    plan.n[k - 1] = n_cand;
                    found = true;
                    break;
                }
            }
        }
        if (!found) {
            throw infeasible_error(
                window_hit
                    ? "plan_superblock: no (m,n) in the windows for block " +
                          std::to_string(k) + " passes the pattern ratio test"
                    : "plan_superblock: joint (m,n) window for block " +
                          std::to_string(k) + " is empty",
                window_hit ? "pattern ratio test 16<m,1xn>^2 < 2^{m+n}"
                           : "m-window with kappa1-offset window (eps^3 band)",
                4 * t_top);
        }

        // t_k: nearest integer to lambda^k T in the residue class of t_{k-1}
        // modulo n_k + 1.
        lambda_pow *= params.lambda;
        const mpq_class target = lambda_pow * t_top;
        const std::int64_t modulus = plan.n[k - 1] + 1;
        mpz_class residue_z = mpz_class(t_prev) % modulus;
        // round((target - residue)/modulus) as floor((2 num + den)/(2 den)),
        // ties rounding up; deterministic.
        mpq_class q = (target - mpq_class(residue_z)) / modulus;
        mpz_class quot;
        const mpz_class num2 = q.get_num() * 2 + q.get_den();
        const mpz_class den2 = q.get_den() * 2;
        mpz_fdiv_q(quot.get_mpz_t(), num2.get_mpz_t(), den2.get_mpz_t());
        const std::int64_t tk =
            static_cast<std::int64_t>(mpz_class(residue_z + quot * modulus).get_si());
        if (tk >= t_prev || tk < 0) {
            throw infeasible_error(
                "plan_superblock: grid point t_" + std::to_string(k) +
                    " not below t_" + std::to_string(k - 1),
                "t-grid ordering", 4 * t_top);
        }
        plan.t[k] = tk;
        plan.r[k - 1] = (t_prev - tk) / modulus;
        if (plan.r[k - 1] < 1) {
            throw infeasible_error(
                "plan_superblock: block " + std::to_string(k) + " has no room for a "
                    "single pattern repetition",
                "repeat count", 4 * t_top);
        }
        t_prev = tk;
    }
    return plan;
}

PartialQuotients emit_blocks(const SuperblockPlan& plan) {
    PartialQuotients out;
    const std::size_t n_blocks = plan.m.size();
    out.reserve(static_cast<std::size_t>(plan.t[0] - plan.t[n_blocks]));
    for (std::size_t k = n_blocks; k >= 1; --k) {
        for (std::int64_t rep = 0; rep < plan.r[k - 1]; ++rep) {
            out.push_back(plan.m[k - 1]);
            out.insert(out.end(), static_cast<std::size_t>(plan.n[k - 1]), 1);
        }
    }
    return out;
}

PatternCheck verify_pattern(std::int64_t m, std::int64_t n) {
    if (m < 1 || n < 0) {
        throw std::invalid_argument("verify_pattern: need m >= 1, n >= 0");
    }
    PartialQuotients pattern;
    pattern.reserve(static_cast<std::size_t>(n) + 1);
    pattern.push_back(m);
    pattern.insert(pattern.end(), static_cast<std::size_t>(n), 1);
    const mpz_class q = continuant(pattern);
    mpz_class lhs = 16 * q * q;
    mpz_class rhs(1);
    mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(),
                 static_cast<mp_bitcnt_t>(m + n));
    return lhs < rhs ? PatternCheck::pass : PatternCheck::fail;
}

PhiBoundReport verify_phi_bound(std::span<const std::int64_t> prefix,
                                std::span<const std::int64_t> checkpoints,
                                const mpq_class& epsilon, mpfr_prec_t precision) {
    validate_quotients(prefix);
    const mpfr_prec_t p = precision;
    struct { Interval kappa1; Interval kappa4; } cs{kappa1_interval(p), kappa4_interval(p)};
    const Interval sqrt2_plus_eps =
        Interval::of(2L, p).sqrt() + Interval::of(epsilon, p);

    std::vector<std::int64_t> psum(prefix.size() + 1, 0);
    for (std::size_t i = 0; i < prefix.size(); ++i) psum[i + 1] = psum[i] + prefix[i];
    auto phi1_at = [&](std::size_t u) {
        return Interval::of(mpz_class(psum[u]), p) -
               cs.kappa1 * Interval::of(mpz_class(static_cast<long>(u)), p);
    };

    PhiBoundReport report;
    for (std::int64_t t : checkpoints) {
        if (t < 1 || static_cast<std::size_t>(t) > prefix.size()) {
            throw std::out_of_range("verify_phi_bound: checkpoint past prefix end");
        }
        PhiBoundCheckpoint cp;
        cp.t = t;
        const Interval big_t = Interval::of(mpz_class(t), p);
        const Interval denom = cs.kappa4 * (big_t * big_t.log()).sqrt();
        const Interval bound = sqrt2_plus_eps * denom;

        // phi1 rises only where a_nu > 1, so nu = 1 and those indices carry
        // the maximum.
        Decision all = Decision::yes;
        Interval max_phi = phi1_at(1);
        cp.argmax = 1;
        double best_mid = max_phi.mid_d();
        for (std::int64_t nu = 1; nu <= t; ++nu) {
            if (nu > 1 && prefix[static_cast<std::size_t>(nu - 1)] <= 1) continue;
            const Interval phi = phi1_at(static_cast<std::size_t>(nu));
            const Decision ok = bound.greater_than(phi);  // phi < bound certified
            if (ok == Decision::no) {
                all = Decision::no;
            } else if (ok == Decision::undecided) {
                if (all == Decision::yes) all = Decision::undecided;
                cp.undecided_indices.push_back(static_cast<std::size_t>(nu));
            }
            max_phi = Interval::max(max_phi, phi);
            if (phi.mid_d() > best_mid) {
                best_mid = phi.mid_d();
                cp.argmax = static_cast<std::size_t>(nu);
            }
        }
        cp.all_below = all;
        cp.max_ratio = max_phi / denom;
        report.checkpoints.push_back(std::move(cp));
    }
    return report;
}

RatioDecayReport verify_ratio_decay(std::span<const std::int64_t> prefix,
                                    std::span<const std::size_t> sample_points,
                                    const mpq_class& threshold) {
    validate_quotients(prefix);
    if (sgn(threshold) <= 0) {
        throw std::invalid_argument("verify_ratio_decay: threshold must be > 0");
    }
    for (std::size_t j = 0; j < sample_points.size(); ++j) {
        if (sample_points[j] < 1 || sample_points[j] > prefix.size()) {
            throw std::out_of_range("verify_ratio_decay: sample out of range");
        }
        if (j > 0 && sample_points[j] <= sample_points[j - 1]) {
            throw std::invalid_argument("verify_ratio_decay: samples must increase");
        }
    }
    const mpz_class thr_num2 = threshold.get_num() * threshold.get_num();
    const mpz_class thr_den2 = threshold.get_den() * threshold.get_den();

    RatioDecayReport report;
    ContinuantAccumulator acc;
    std::size_t next = 0;
    std::vector<mpz_class> conts;
    std::vector<std::int64_t> sums;
    for (std::size_t i = 0; i < prefix.size() && next < sample_points.size(); ++i) {
        acc.push(prefix[i]);
        if (i + 1 == sample_points[next]) {
            conts.push_back(acc.value());
            sums.push_back(acc.sum());
            ++next;
        }
    }
    for (std::size_t j = 0; j < sample_points.size(); ++j) {
        RatioDecaySample s;
        s.t = sample_points[j];
        mpz_class lhs = conts[j] * conts[j] * thr_den2;
        mpz_class rhs = thr_num2;
        mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(),
                     static_cast<mp_bitcnt_t>(sums[j]));
        const int cmp = ::cmp(lhs, rhs);
        s.versus_threshold = cmp < 0   ? Ordering::less
                             : cmp > 0 ? Ordering::greater
                                       : Ordering::equal;
        s.worst_case_point =
            prefix[s.t - 1] == 1 &&
            (s.t == prefix.size() || prefix[s.t] > 1);
        report.samples.push_back(std::move(s));
    }
    for (std::size_t j = 0; j + 1 < sample_points.size(); ++j) {
        // ratio_{j+1} <= ratio_j  <=>  <A_{j+1}>^2 2^{S_j} <= <A_j>^2 2^{S_{j+1}}
        mpz_class lhs = conts[j + 1] * conts[j + 1];
        mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(),
                     static_cast<mp_bitcnt_t>(sums[j]));
        mpz_class rhs = conts[j] * conts[j];
        mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(),
                     static_cast<mp_bitcnt_t>(sums[j + 1]));
        report.non_increasing.push_back(lhs <= rhs);
    }
    return report;
}

Construction construct_extremal(const ConstructionParams& params,
                                std::size_t superblocks) {
    if (superblocks < 1) {
        throw std::invalid_argument("construct_extremal: need at least one superblock");
    }
    if (params.t1 < 3) throw std::invalid_argument("construct_extremal: T1 too small");
    const mpfr_prec_t p = params.precision;

    // lambda^N T1 must be a positive integer (first grid) and exceed
    // T1 / log T1.
    mpq_class lamN(1);
    for (std::size_t i = 0; i < params.n; ++i) lamN *= params.lambda;
    const mpq_class first_grid = lamN * params.t1;
    if (first_grid.get_den() != 1) {
        throw std::invalid_argument(
            "construct_extremal: lambda^N T1 must be an integer");
    }
    const Interval lhs = Interval::of(first_grid, p);
    const Interval rhs = Interval::of(mpz_class(params.t1), p) /
                         Interval::of(mpz_class(params.t1), p).log();
    if (lhs.greater_than(rhs) != Decision::yes) {
        throw std::invalid_argument(
            "construct_extremal: lambda^N T1 > T1/log T1 not certified");
    }

    const DSequence dseq = modified_d_sequence(params);
    Construction out;
    std::int64_t t_cur = params.t1;
    for (std::size_t i = 0; i < superblocks; ++i) {
        SuperblockPlan plan = plan_superblock(t_cur, dseq, params);
        if (i == 0) {
            // Initial all-ones segment; defaults to t_N of the first grid.
            const std::int64_t head =
                params.head_length ? *params.head_length : plan.t[params.n];
            if (head < 0) {
                throw std::invalid_argument("construct_extremal: negative head length");
            }
            out.prefix.assign(static_cast<std::size_t>(head), 1);
        }
        const PartialQuotients body = emit_blocks(plan);
        out.prefix.insert(out.prefix.end(), body.begin(), body.end());
        out.superblock_ends.push_back(out.prefix.size());
        out.plans.push_back(std::move(plan));
        // T_{i+1} = floor(T_i / lambda^N).
        mpq_class next = mpq_class(t_cur) / lamN;
        mpz_class nf;
        mpz_fdiv_q(nf.get_mpz_t(), next.get_num().get_mpz_t(),
                   next.get_den().get_mpz_t());
        t_cur = static_cast<std::int64_t>(nf.get_si());
    }
    return out;
}

}  // namespace minkq
