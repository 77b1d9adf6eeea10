#include "minkq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "minkq/blocks.hpp"
#include "minkq/bounds.hpp"
#include "minkq/constants.hpp"
#include "minkq/continued_fraction.hpp"
#include "minkq/diagnostics.hpp"
#include "minkq/extremal.hpp"
#include "minkq/minimax.hpp"
#include "minkq/question_mark.hpp"
#include "minkq/rng.hpp"
#include "minkq/transforms.hpp"

namespace minkq::verify {

namespace {

constexpr std::size_t kMaxExamples = 5;

void record_failure(SuiteResult& r, const std::string& example) {
    ++r.failures;
    if (r.failure_examples.size() < kMaxExamples) {
        r.failure_examples.push_back(example);
    }
}

std::string seq_to_string(const PartialQuotients& seq, std::size_t limit = 40) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < seq.size() && i < limit; ++i) {
        if (i) os << ",";
        os << seq[i];
    }
    if (seq.size() > limit) os << ",...";
    os << ")";
    return os.str();
}

PartialQuotients random_sequence(Rng& rng, std::size_t maxlen, std::int64_t maxelem,
                                 std::size_t minlen = 1) {
    PartialQuotients s;
    const std::size_t len =
        minlen + static_cast<std::size_t>(rng.below(maxlen - minlen + 1));
    s.reserve(len);
    for (std::size_t i = 0; i < len; ++i) s.push_back(rng.range(1, maxelem));
    return s;
}

}  // namespace

SuiteResult continuant_identities(const SuiteOptions& opts) {
    SuiteResult r{"continuant-identities"};
    Rng rng(opts.seed ^ 0x636f6e74);
    for (std::size_t trial = 0; trial < opts.trials; ++trial) {
        const PartialQuotients seq = random_sequence(rng, 30, 1000, 0);
        const mpz_class whole = continuant(seq);
        const std::size_t cut = static_cast<std::size_t>(rng.below(seq.size() + 1));
        ++r.checks;
        if (split_product(seq, cut) != whole) {
            record_failure(r, "split " + seq_to_string(seq) + " cut=" + std::to_string(cut));
        }
        PartialQuotients rev(seq.rbegin(), seq.rend());
        ++r.checks;
        if (continuant(rev) != whole) {
            record_failure(r, "mirror " + seq_to_string(seq));
        }
    }
    return r;
}

SuiteResult expansion_roundtrip(const SuiteOptions& opts) {
    SuiteResult r{"expansion-roundtrip"};
    Rng rng(opts.seed ^ 0x65787061);
    for (std::size_t trial = 0; trial < opts.trials; ++trial) {
        const std::int64_t den = rng.range(2, 1000000);
        const std::int64_t num = rng.range(1, den);
        mpq_class x(num, den);
        x.canonicalize();
        const auto e = expand(x);
        ++r.checks;
        if (to_fraction(e.canonical) != x || to_fraction(e.alternate) != x) {
            record_failure(r, x.get_str() + " round-trip");
            continue;
        }
        ++r.checks;
        if (question_mark(e.canonical) != question_mark(e.alternate)) {
            record_failure(r, x.get_str() + " representation mismatch");
        }
    }
    return r;
}

SuiteResult question_mark_monotone(const SuiteOptions& opts) {
    SuiteResult r{"question-mark-monotone"};
    Rng rng(opts.seed ^ 0x6d6f6e6f);
    for (std::size_t trial = 0; trial < opts.trials; ++trial) {
        const std::int64_t d1 = rng.range(2, 10000), d2 = rng.range(2, 10000);
        mpq_class x(rng.range(1, d1), d1), y(rng.range(1, d2), d2);
        x.canonicalize();
        y.canonicalize();
        if (x == y) continue;
        if (x > y) swap(x, y);
        ++r.checks;
        if (!(question_mark(x) < question_mark(y))) {
            record_failure(r, x.get_str() + " vs " + y.get_str());
        }
    }
    return r;
}

SuiteResult enclosure_soundness(const SuiteOptions& opts) {
    SuiteResult r{"enclosure-soundness"};
    Rng rng(opts.seed ^ 0x656e636c);
    for (std::size_t trial = 0; trial < opts.trials; ++trial) {
        const PartialQuotients prefix = random_sequence(rng, 10, 8);
        PartialQuotients refined = prefix;
        const std::size_t extra = 1 + rng.below(6);
        for (std::size_t i = 0; i < extra; ++i) refined.push_back(rng.range(1, 8));
        const auto enc = question_mark_enclosure(prefix);
        const Dyadic q = question_mark(refined);
        ++r.checks;
        if (!(enc.lower <= q && q <= enc.upper)) {
            record_failure(r, seq_to_string(prefix) + " + " + seq_to_string(refined));
        }
    }
    return r;
}

SuiteResult prodlem_lower_bound(const SuiteOptions& opts) {
    SuiteResult r{"prodlem-lower-bound"};
    Rng rng(opts.seed ^ 0x70726f64);
    for (std::size_t trial = 0; trial < opts.trials; ++trial) {
        PartialQuotients seq;
        const std::size_t len = 1 + rng.below(50);
        for (std::size_t i = 0; i < len; ++i) {
            seq.push_back(rng.below(3) == 0 ? rng.range(12, 200) : 1);
        }
        const mpz_class exact = continuant(seq);
        const Interval bound = continuant_lower_bound(seq, opts.precision);
        ++r.checks;
        if (mpfr_cmp_z(bound.hi(), exact.get_mpz_t()) > 0) {
            record_failure(r, seq_to_string(seq));
        }
    }
    return r;
}

SuiteResult sumprodlem_sweep(const SuiteOptions& opts) {
    SuiteResult r{"sumprodlem-sweep"};
    const mpq_class step(1, 4);
    auto reachable = [](const mpq_class& s, const mpq_class& a, const mpq_class& b) {
        for (int k = 1; mpq_class(k) * a <= s; ++k) {
            if (s <= mpq_class(k) * b) return true;
        }
        return false;
    };
    for (mpq_class alpha(3); alpha <= 5; alpha += step) {
        for (mpq_class beta = alpha + step; beta <= 8; beta += step) {
            for (mpq_class s = beta; s <= 40; s += 1) {
                if (!reachable(s, alpha, beta)) continue;
                const MinProductInstance inst{s, alpha, beta};
                const auto oracle = min_product_oracle(inst, step);
                const mpq_class bound = min_product_bound_exact(inst);
                ++r.checks;
                if (oracle.minimum < bound - oracle.slack) {
                    record_failure(r, "s=" + s.get_str() + " a=" + alpha.get_str() +
                                          " b=" + beta.get_str());
                }
            }
        }
    }
    (void)opts;
    return r;
}

SuiteResult unitvar_inequality(const SuiteOptions& opts) {
    SuiteResult r{"unitvar-inequality"};
    Rng rng(opts.seed ^ 0x756e6974);
    for (std::size_t trial = 0; trial < opts.trials; ++trial) {
        const PartialQuotients a = random_sequence(rng, 6, 30, 0);
        const PartialQuotients c = random_sequence(rng, 6, 30, 0);
        PartialQuotients half = random_sequence(rng, 4, 30, 0);
        PartialQuotients b(half);
        const bool odd = rng.below(2) == 0;
        for (std::size_t i = half.size(); i-- > (odd ? 1 : 0);) {
            b.push_back(half[odd ? i - 1 : i]);
        }
        const std::int64_t m = rng.range(1, 12);
        const std::int64_t p = rng.range(m, 15);
        const auto [lhs, rhs] = unit_shift_compare(a, b, c, m, p);
        ++r.checks;
        if (lhs > rhs) {
            record_failure(r, seq_to_string(a) + "|" + seq_to_string(b) + "|" +
                                  seq_to_string(c) + " m=" + std::to_string(m) +
                                  " p=" + std::to_string(p));
        }
    }
    return r;
}

SuiteResult elimination_domination(const SuiteOptions& opts) {
    SuiteResult r{"elimination-domination"};
    Rng rng(opts.seed ^ 0x656c696d);
    for (std::size_t trial = 0; trial < opts.trials; ++trial) {
        PartialQuotients seq;
        seq.reserve(opts.elimination_length);
        for (std::size_t i = 0; i < opts.elimination_length; ++i) {
            seq.push_back(rng.below(4) == 0 ? rng.range(2, 20) : 1);
        }
        const auto [out, trace] = eliminate_small(seq);
        std::size_t tail_start = out.size() + 1;
        for (const auto& pass : trace.passes) {
            if (pass.unmatched_s) tail_start = std::min(tail_start, *pass.unmatched_s);
        }
        bool alphabet_ok = out.size() == seq.size();
        for (std::size_t i = 0; i + 1 < tail_start && i < out.size(); ++i) {
            if (out[i] != 1 && out[i] < 12) {
                alphabet_ok = false;
                break;
            }
        }
        ++r.checks;
        if (!alphabet_ok) record_failure(r, "alphabet trial " + std::to_string(trial));

        bool dominated = true;
        std::int64_t sin = 0, sout = 0;
        ContinuantAccumulator ain, aout;
        for (std::size_t i = 0; i < seq.size(); ++i) {
            sin += seq[i];
            sout += out[i];
            if (sout > sin) {
                dominated = false;
                break;
            }
            ain.push(seq[i]);
            aout.push(out[i]);
            if (aout.value() > ain.value()) {
                dominated = false;
                break;
            }
        }
        ++r.checks;
        if (!dominated) record_failure(r, "domination trial " + std::to_string(trial));
        ++r.checks;
        if (!trace.has_unmatched_tail() && sin != sout) {
            record_failure(r, "sum preservation trial " + std::to_string(trial));
        }
    }
    return r;
}

SuiteResult minimax_equalization(const SuiteOptions& opts) {
    SuiteResult r{"minimax-equalization"};
    const mpfr_prec_t p = std::max<mpfr_prec_t>(opts.precision, 256);

    // Closed form at N = 2, lambda = 1/4: y = sqrt(3)/8 to 1e-12.
    {
        MinimaxInstance inst{2, mpq_class(1, 4), Interval::of(1L, p), p};
        const auto sol = solve_equalizing(inst);
        const Interval target = Interval::of(3L, p).sqrt() / Interval::of(8L, p);
        const Interval diff = (sol.y_min - target).abs();
        ++r.checks;
        if (diff.less_than(mpq_class(1, 1000000000000L)) != Decision::yes) {
            record_failure(r, "closed form N=2");
        }
        ++r.checks;
        if (sol.equalized != Decision::yes) record_failure(r, "equalization N=2");
    }

    // Oracle agreement for N <= 4.
    {
        const std::vector<std::tuple<std::size_t, mpq_class>> cases = {
            {1, mpq_class(1, 2)}, {2, mpq_class(1, 4)}, {3, mpq_class(1, 2)},
            {4, mpq_class(3, 5)}};
        for (const auto& [n, lambda] : cases) {
            MinimaxInstance inst{n, lambda, Interval::of(1L, p), p};
            const auto sol = solve_equalizing(inst);
            const auto oracle = brute_force_minmax(n, lambda, 1.0, 48);
            ++r.checks;
            if (std::abs(oracle.value - sol.y_min.mid_d()) > oracle.slack ||
                oracle.value < sol.y_min.lo_d() - 1e-9) {
                record_failure(r, "oracle N=" + std::to_string(n));
            }
        }
    }

    // Convergence certificates for lambda in {0.5, 0.9, 0.99}, N up to 10^4.
    for (const auto& [num, den] : {std::pair{1, 2}, {9, 10}, {99, 100}}) {
        MinimaxInstance inst{10000, mpq_class(num, den), Interval::of(1L, p), p};
        const auto sol = solve_equalizing(inst);
        const auto rep = bounds_check(sol);
        ++r.checks;
        if (!rep.all_certified()) {
            record_failure(r, "dnconv lambda=" + std::to_string(num) + "/" +
                                  std::to_string(den));
        }
        ++r.checks;
        if (sol.equalized != Decision::yes) {
            record_failure(r, "equalization lambda=" + std::to_string(num) + "/" +
                                  std::to_string(den));
        }
    }

    // lambda = 0.99, N = 2000: y within 5% of sqrt(2), from below.
    {
        MinimaxInstance inst{2000, mpq_class(99, 100), Interval::of(1L, p), p};
        const auto sol = solve_equalizing(inst);
        const Interval sqrt2 = Interval::of(2L, p).sqrt();
        const Interval rel = (sol.y_min - sqrt2).abs() / sqrt2;
        ++r.checks;
        if (rel.less_than(mpq_class(5, 100)) != Decision::yes ||
            sol.y_min.less_than(sqrt2) != Decision::yes) {
            record_failure(r, "sqrt(2 eta) approach");
        }
    }
    return r;
}

SuiteResult construction_certificates(const SuiteOptions& opts) {
    SuiteResult r{"construction-certificates"};
    ConstructionParams params;
    params.epsilon = mpq_class(1, 2);
    params.lambda = mpq_class(3, 4);
    params.n = 6;
    params.precision = 256;
    params.t1 = 327680;
    params.eta = mpq_class(3);

    const auto c = construct_extremal(params, std::max<std::size_t>(1, opts.superblocks));

    // Every planned pair passes the exact pattern test.
    for (const auto& plan : c.plans) {
        for (std::size_t k = 0; k < plan.m.size(); ++k) {
            ++r.checks;
            if (verify_pattern(plan.m[k], plan.n[k]) != PatternCheck::pass) {
                record_failure(r, "pattern m=" + std::to_string(plan.m[k]) +
                                      " n=" + std::to_string(plan.n[k]));
            }
        }
    }

    // Ratio decay on the headless body: every end-of-pattern ratio < 1/2 and
    // non-increasing, superblock ends included.
    const std::size_t head = static_cast<std::size_t>(c.plans[0].t[params.n]);
    PartialQuotients body(c.prefix.begin() + head, c.prefix.end());
    std::vector<std::size_t> samples;
    for (std::size_t t = 1; t < body.size(); ++t) {
        if (body[t - 1] == 1 && body[t] > 1) samples.push_back(t);
    }
    samples.push_back(body.size());
    const auto decay = verify_ratio_decay(body, samples);
    for (const auto& s : decay.samples) {
        ++r.checks;
        if (s.versus_threshold != Ordering::less) {
            record_failure(r, "ratio at body index " + std::to_string(s.t));
        }
    }
    for (std::size_t j = 0; j < decay.non_increasing.size(); ++j) {
        ++r.checks;
        if (!decay.non_increasing[j]) {
            record_failure(r, "ratio increase after sample " + std::to_string(j));
        }
    }

    // Phi bound at every superblock end; reported max ratio below
    // sqrt(2) + 2 eps/3.
    std::vector<std::int64_t> checkpoints;
    for (std::size_t e : c.superblock_ends) {
        checkpoints.push_back(static_cast<std::int64_t>(e));
    }
    const auto rep = verify_phi_bound(c.prefix, checkpoints, params.epsilon, 256);
    const mpq_class budget = mpq_class(17475, 10000);  // just under sqrt2 + 1/3
    for (const auto& cp : rep.checkpoints) {
        ++r.checks;
        if (cp.all_below == Decision::undecided) {
            ++r.undecided;
        } else if (cp.all_below == Decision::no) {
            record_failure(r, "phi bound at " + std::to_string(cp.t));
        }
        ++r.checks;
        if (cp.max_ratio.less_than(budget) != Decision::yes) {
            record_failure(r, "phi max ratio at " + std::to_string(cp.t));
        }
    }
    return r;
}

std::vector<SuiteResult> run_all(const SuiteOptions& opts) {
    return {
        continuant_identities(opts),
        expansion_roundtrip(opts),
        question_mark_monotone(opts),
        enclosure_soundness(opts),
        prodlem_lower_bound(opts),
        sumprodlem_sweep(opts),
        unitvar_inequality(opts),
        elimination_domination(SuiteOptions{opts.seed, std::max<std::size_t>(1, opts.trials / 50),
                                            opts.precision,
                                            std::min<std::size_t>(opts.elimination_length, 2000),
                                            opts.superblocks}),
        minimax_equalization(opts),
        construction_certificates(opts),
    };
}

}  // namespace minkq::verify
