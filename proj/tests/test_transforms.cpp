#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minkq/rng.hpp"
#include "minkq/transforms.hpp"

using namespace minkq;

TEST_CASE("unit shift comparison examples") {
    auto [l, r] = unit_shift_compare({}, {}, {}, 2, 3);
    CHECK(l == 5);   // <1,4>
    CHECK(r == 7);   // <2,3>

    std::tie(l, r) = unit_shift_compare({}, {1}, {}, 2, 2);
    CHECK(l == 7);   // <1,1,3>
    CHECK(r == 8);   // <2,1,2>

    std::tie(l, r) = unit_shift_compare({3, 1}, {2, 5, 2}, {4}, 1, 6);
    CHECK(l == r);  // m = 1 makes the two patterns identical

    CHECK_THROWS_AS(unit_shift_compare({}, {1, 2}, {}, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(unit_shift_compare({}, {}, {}, 3, 2), std::invalid_argument);
    CHECK_THROWS_AS(unit_shift_compare({}, {}, {}, 0, 2), std::invalid_argument);
}

TEST_CASE("unit shift inequality on random instances") {
    Rng rng(29);
    for (int trial = 0; trial < 5000; ++trial) {
        auto random_seq = [&](std::size_t maxlen) {
            PartialQuotients s;
            const std::size_t len = static_cast<std::size_t>(
                rng.below(maxlen + 1));
            for (std::size_t i = 0; i < len; ++i) s.push_back(rng.range(1, 30));
            return s;
        };
        const PartialQuotients a = random_seq(6), c = random_seq(6);
        PartialQuotients half = random_seq(4), b(half);
        if (rng.below(2) == 0) {
            // palindrome of odd length
            for (std::size_t i = half.size(); i-- > 1;) b.push_back(half[i - 1]);
        } else {
            for (std::size_t i = half.size(); i-- > 0;) b.push_back(half[i]);
        }
        const std::int64_t m = rng.range(1, 12);
        const std::int64_t p = rng.range(m, 15);
        const auto [lhs, rhs] = unit_shift_compare(a, b, c, m, p);
        CHECK(lhs <= rhs);
    }
}

TEST_CASE("eliminate_small worked examples") {
    {
        auto [out, trace] = eliminate_small({2, 1, 1, 3});
        CHECK(out == PartialQuotients{1, 1, 1, 4});
        REQUIRE(trace.passes.size() == 2);
        CHECK(trace.passes[0].value == 2);
        CHECK(trace.passes[0].replacements ==
              std::vector<std::pair<std::size_t, std::size_t>>{{1, 4}});
        CHECK(trace.passes[1].value == 4);
        CHECK(trace.passes[1].unmatched_s == 4);
        CHECK(trace.has_unmatched_tail());
    }
    {
        auto [out, trace] = eliminate_small({1, 1, 1, 1});
        CHECK(out == PartialQuotients{1, 1, 1, 1});
        CHECK(trace.passes.empty());
    }
    {
        auto [out, trace] = eliminate_small({2, 1, 5});
        CHECK(out == PartialQuotients{1, 1, 6});
        REQUIRE(trace.passes.size() == 2);
        CHECK(trace.passes[0].value == 2);
        CHECK(trace.passes[1].value == 6);
        CHECK(trace.passes[1].unmatched_s == 3);
    }
    CHECK_THROWS_AS(eliminate_small({1, 2}, 1), std::invalid_argument);
}

TEST_CASE("eliminate_small output alphabet and domination") {
    Rng rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        PartialQuotients seq;
        const std::size_t len = 400;
        for (std::size_t i = 0; i < len; ++i) {
            seq.push_back(rng.below(3) == 0 ? rng.range(2, 20) : 1);
        }
        const auto [out, trace] = eliminate_small(seq);
        REQUIRE(out.size() == seq.size());

        // Alphabet {1} u [12, inf) away from the flagged tail.
        std::size_t tail_start = out.size() + 1;
        for (const auto& pass : trace.passes) {
            if (pass.unmatched_s) tail_start = std::min(tail_start, *pass.unmatched_s);
        }
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (i + 1 >= tail_start) continue;
            CHECK((out[i] == 1 || out[i] >= 12));
        }

        // Pointwise prefix sums never increase; equal at the end unless a
        // tail was flagged.
        std::int64_t sin = 0, sout = 0;
        for (std::size_t i = 0; i < len; ++i) {
            sin += seq[i];
            sout += out[i];
            CHECK(sout <= sin);
        }
        if (!trace.has_unmatched_tail()) CHECK(sin == sout);

        // Pointwise continuant domination, exact.
        ContinuantAccumulator ain, aout;
        for (std::size_t i = 0; i < len; ++i) {
            ain.push(seq[i]);
            aout.push(out[i]);
            CHECK(aout.value() <= ain.value());
        }
    }
}

TEST_CASE("eliminate_small with a custom threshold") {
    auto [out, trace] = eliminate_small({3, 1, 4, 1, 5}, 6);
    for (std::size_t i = 0; i + 1 < out.size(); ++i) {
        bool in_tail = false;
        for (const auto& pass : trace.passes) {
            if (pass.unmatched_s && i + 1 >= *pass.unmatched_s) in_tail = true;
        }
        if (!in_tail) CHECK((out[i] == 1 || out[i] >= 6));
    }
}
