#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minkq/blocks.hpp"
#include "minkq/diagnostics.hpp"
#include "minkq/errors.hpp"
#include "minkq/extremal.hpp"

using namespace minkq;

namespace {

ConstructionParams desk_params(std::int64_t t1 = 262144) {
    ConstructionParams p;
    p.epsilon = mpq_class(1, 2);
    p.lambda = mpq_class(3, 4);
    p.n = 6;
    p.precision = 256;
    p.t1 = t1;
    p.eta = mpq_class(3);
    return p;
}

}  // namespace

TEST_CASE("paper-formula constants") {
    const auto params = derive_constants(mpq_class(1, 2), mpq_class(99, 100));
    CHECK(params.m == 690);    // ceil(10 log(1/2)/log(99/100)) = ceil(689.66)
    CHECK(params.p == 9);      // floor(log 6/log 1.25) + 1 = 8 + 1
    CHECK(params.n == 15180);  // 2 * 690 * (9 + 2)
    CHECK(params.paper_mode);

    CHECK_THROWS_AS(derive_constants(mpq_class(1, 2), mpq_class(1, 2)),
                    std::invalid_argument);  // lambda <= 1 - eps^6
    CHECK_THROWS_AS(derive_constants(mpq_class(3, 2), mpq_class(99, 100)),
                    std::invalid_argument);
    CHECK_THROWS_AS(derive_constants(mpq_class(1, 2), mpq_class(1)),
                    std::invalid_argument);
}

TEST_CASE("modified d sequence starts flat and then follows the recurrence") {
    const auto params = desk_params();
    const auto seq = modified_d_sequence(params);
    REQUIRE(seq.d.size() == 6);
    // d_1 = d_2 = sqrt((1-lambda) lambda / eta) = sqrt(1/16) = 1/4 at eta = 3.
    CHECK(seq.d[0].contains(mpq_class(1, 4)));
    CHECK(seq.d[1].contains(mpq_class(1, 4)));
    for (std::size_t k = 2; k < seq.d.size(); ++k) {
        CHECK(seq.d[k].greater_than(seq.d[k - 1]) == Decision::yes);
    }
}

TEST_CASE("pattern test small cases") {
    CHECK(verify_pattern(1, 0) == PatternCheck::fail);   // 16 >= 2
    CHECK(verify_pattern(20, 4) == PatternCheck::pass);  // 16*103^2 < 2^24
    CHECK(verify_pattern(1, 10) == PatternCheck::fail);  // Fibonacci beats sqrt2
    CHECK_THROWS_AS(verify_pattern(0, 3), std::invalid_argument);
}

TEST_CASE("pattern test crossover is monotone in m") {
    for (std::int64_t n = 0; n <= 12; ++n) {
        std::int64_t crossover = -1;
        for (std::int64_t m = 1; m <= 80; ++m) {
            if (verify_pattern(m, n) == PatternCheck::pass) {
                crossover = m;
                break;
            }
        }
        REQUIRE(crossover > 0);
        for (std::int64_t m = 1; m < crossover; ++m) {
            CHECK(verify_pattern(m, n) == PatternCheck::fail);
        }
        for (std::int64_t m = crossover; m <= crossover + 40; ++m) {
            CHECK(verify_pattern(m, n) == PatternCheck::pass);
        }
    }
}

TEST_CASE("emit_blocks pattern layout") {
    SuperblockPlan plan;
    plan.t_top = 24;
    plan.m = {13};
    plan.n = {5};
    plan.r = {2};
    plan.t = {24, 12};
    const auto seq = emit_blocks(plan);
    CHECK(seq == PartialQuotients{13, 1, 1, 1, 1, 1, 13, 1, 1, 1, 1, 1});
}

TEST_CASE("desk-scale plan satisfies every window and the divisibility") {
    const auto params = desk_params();
    const auto d = modified_d_sequence(params);
    const auto plan = plan_superblock(params.t1, d, params);
    const Constants cs = constants(256);
    const Interval big_t = Interval::of(mpz_class(params.t1), 256);
    const Interval scale = (big_t * big_t.log()).sqrt();
    const Interval lg_t = big_t.log() / log2_interval(256);
    const mpq_class eps = params.epsilon;
    const mpq_class eps3 = eps * eps * eps, eps4 = eps3 * eps;

    std::int64_t emitted = 0;
    for (std::size_t k = 1; k <= params.n; ++k) {
        const Interval m_iv = Interval::of(mpz_class(plan.m[k - 1]), 256);
        const Interval n_iv = Interval::of(mpz_class(plan.n[k - 1]), 256);
        const Interval anchor_m = d.d[k - 1] * scale;
        const Interval anchor_n = d.d[k - 1] / (cs.kappa1 - Interval::of(1L, 256)) * scale;
        CHECK(m_iv.greater_than(anchor_m) == Decision::yes);
        CHECK(m_iv.less_than(anchor_m * Interval::of(mpq_class(1) + eps4, 256)) ==
              Decision::yes);
        CHECK(n_iv.greater_than(anchor_n) == Decision::yes);
        CHECK(n_iv.less_than(anchor_n * Interval::of(mpq_class(1) + eps4, 256)) ==
              Decision::yes);
        const Interval excess =
            m_iv + n_iv - cs.kappa1 * (n_iv + Interval::of(1L, 256));
        CHECK(excess.greater_than(lg_t * Interval::of(mpq_class(1) + eps / 8 - eps3, 256)) ==
              Decision::yes);
        CHECK(excess.less_than(lg_t * Interval::of(mpq_class(1) + eps / 8 + eps3, 256)) ==
              Decision::yes);
        // (n_k + 1) | (t_{k-1} - t_k), and t_k within half a modulus of
        // lambda^k t_0.
        const std::int64_t delta = plan.t[k - 1] - plan.t[k];
        CHECK(delta % (plan.n[k - 1] + 1) == 0);
        CHECK(delta / (plan.n[k - 1] + 1) == plan.r[k - 1]);
        mpq_class target(params.t1);
        for (std::size_t i = 0; i < k; ++i) target *= params.lambda;
        const mpq_class dev = abs(mpq_class(plan.t[k]) - target);
        CHECK(dev <= mpq_class(plan.n[k - 1] + 1, 2));
        // pattern soundness built into the planner
        CHECK(verify_pattern(plan.m[k - 1], plan.n[k - 1]) == PatternCheck::pass);
        emitted += plan.r[k - 1] * (plan.n[k - 1] + 1);
    }
    CHECK(emitted == plan.t[0] - plan.t[params.n]);
    const auto body = emit_blocks(plan);
    CHECK(body.size() == static_cast<std::size_t>(emitted));
}

TEST_CASE("plan feeds back through the block analyzer") {
    const auto params = desk_params();
    const auto d = modified_d_sequence(params);
    const auto plan = plan_superblock(params.t1, d, params);
    const auto body = emit_blocks(plan);
    // Analyze the emitted body on the plan's own grid: blocks B_k run from
    // t_k to t_{k-1} relative to the body start at t_N.
    const std::int64_t t_n = plan.t[params.n];
    PartialQuotients padded(static_cast<std::size_t>(t_n), 1);
    padded.insert(padded.end(), body.begin(), body.end());
    const auto dec =
        block_decompose(padded, params.t1, params.lambda, static_cast<std::int64_t>(params.n));
    for (std::size_t k = 1; k <= params.n; ++k) {
        // The analyzer's exact lambda-grid differs from the plan's
        // residue-corrected t_k by less than one pattern, so the block maxima
        // coincide; the sums are exact on the plan's own grid.
        CHECK(dec.blocks[k - 1].max_element == plan.m[k - 1]);
        std::int64_t sum = 0;
        for (std::int64_t pos = plan.t[k] + 1; pos <= plan.t[k - 1]; ++pos) {
            sum += padded[static_cast<std::size_t>(pos - 1)];
        }
        CHECK(sum == plan.r[k - 1] * (plan.m[k - 1] + plan.n[k - 1]));
    }
}

TEST_CASE("infeasible scale reports the violated constraint") {
    auto params = desk_params(65536);
    const auto d = modified_d_sequence(params);
    try {
        plan_superblock(params.t1, d, params);
        FAIL("expected infeasibility");
    } catch (const infeasible_error& e) {
        CHECK(!e.constraint().empty());
        CHECK(e.suggested_scale() > params.t1);
    }
}

TEST_CASE("construction end-to-end with ratio decay on the body") {
    auto params = desk_params();
    const auto c = construct_extremal(params, 1);
    REQUIRE(c.superblock_ends.size() == 1);
    CHECK(c.superblock_ends[0] == static_cast<std::size_t>(params.t1));
    CHECK(c.prefix.size() == static_cast<std::size_t>(params.t1));

    // Ratio decay on the headless body (the x' of the zero-derivative
    // argument): every end-of-pattern ratio below 1/2 and non-increasing.
    const std::size_t head = static_cast<std::size_t>(c.plans[0].t[params.n]);
    PartialQuotients body(c.prefix.begin() + head, c.prefix.end());
    std::vector<std::size_t> samples;
    for (std::size_t t = 1; t < body.size(); ++t) {
        if (body[t - 1] == 1 && body[t] > 1) samples.push_back(t);
    }
    samples.push_back(body.size());
    const auto decay = verify_ratio_decay(body, samples);
    CHECK(decay.all_below_threshold());
    for (bool b : decay.non_increasing) CHECK(b);
    for (const auto& s : decay.samples) CHECK(s.worst_case_point);

    // Full prefix with the paper's head: the phi bound certifies at T1.
    std::vector<std::int64_t> cps{static_cast<std::int64_t>(c.superblock_ends[0])};
    const auto rep = verify_phi_bound(c.prefix, cps, params.epsilon, 256);
    REQUIRE(rep.checkpoints.size() == 1);
    CHECK(rep.checkpoints[0].all_below == Decision::yes);
    // (sqrt2 + 2 eps/3) reference: ratio far below it here.
    CHECK(rep.checkpoints[0].max_ratio.less_than(mpq_class(17475, 10000)) ==
          Decision::yes);
}

TEST_CASE("medium head length drives the phi ratio positive but bounded") {
    auto params = desk_params();
    params.head_length = 6000;
    const auto c = construct_extremal(params, 1);
    std::vector<std::int64_t> cps{static_cast<std::int64_t>(c.superblock_ends[0])};
    const auto rep = verify_phi_bound(c.prefix, cps, params.epsilon, 256);
    CHECK(rep.checkpoints[0].all_below == Decision::yes);
    CHECK(rep.checkpoints[0].max_ratio.positive() == Decision::yes);
    CHECK(rep.checkpoints[0].max_ratio.less_than(mpq_class(17475, 10000)) ==
          Decision::yes);
}

TEST_CASE("phi bound on trivial and adversarial prefixes") {
    PartialQuotients ones(500, 1);
    const auto rep_ones =
        verify_phi_bound(ones, std::vector<std::int64_t>{500}, mpq_class(1, 2));
    CHECK(rep_ones.checkpoints[0].all_below == Decision::yes);
    CHECK(rep_ones.checkpoints[0].max_ratio.negative() == Decision::yes);

    PartialQuotients big(500, 100);
    const auto rep_big =
        verify_phi_bound(big, std::vector<std::int64_t>{500}, mpq_class(1, 2));
    CHECK(rep_big.checkpoints[0].all_below == Decision::no);

    CHECK_THROWS_AS(
        verify_phi_bound(ones, std::vector<std::int64_t>{501}, mpq_class(1, 2)),
        std::out_of_range);
}

TEST_CASE("ratio decay flags growth on the all-ones prefix") {
    PartialQuotients ones(64, 1);
    std::vector<std::size_t> samples{16, 32, 48, 64};
    const auto rep = verify_ratio_decay(ones, samples);
    // Fibonacci beats sqrt2-powers: ratio above 1/2 from early on and growing.
    CHECK(rep.samples.back().versus_threshold == Ordering::greater);
    CHECK_FALSE(rep.non_increasing.back());

    // Single passing pattern: end-of-pattern ratio < 1/2 by the same test.
    PartialQuotients pattern{20, 1, 1, 1, 1};
    const auto rep2 =
        verify_ratio_decay(pattern, std::vector<std::size_t>{pattern.size()});
    CHECK(rep2.samples[0].versus_threshold == Ordering::less);
    CHECK(rep2.samples[0].worst_case_point);

    CHECK_THROWS_AS(verify_ratio_decay(ones, std::vector<std::size_t>{32, 16}),
                    std::invalid_argument);
    CHECK_THROWS_AS(verify_ratio_decay(ones, std::vector<std::size_t>{65}),
                    std::out_of_range);
}

TEST_CASE("t1 validation in construct_extremal") {
    auto params = desk_params();
    params.t1 = 262145;  // not divisible by 4^6
    CHECK_THROWS_AS(construct_extremal(params, 1), std::invalid_argument);
    params.t1 = 4096;  // divisible but lambda^N T1 = 729 < T1/log T1 = 492? no:
    // 729 > 492, so this one passes the growth test; use a tiny T1 instead.
    params.t1 = 0;
    CHECK_THROWS_AS(construct_extremal(params, 1), std::invalid_argument);
}
