#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minkq/continued_fraction.hpp"
#include "minkq/rng.hpp"

using namespace minkq;

TEST_CASE("continuant base cases and recurrence") {
    CHECK(continuant(PartialQuotients{}) == 1);
    CHECK(continuant(PartialQuotients{7}) == 7);
    CHECK(continuant(PartialQuotients{1, 1, 1, 1}) == 5);  // Fibonacci F_5
    CHECK(continuant(PartialQuotients{1, 2, 3}) == 10);
    // <a_1..a_t> = a_t <a_1..a_{t-1}> + <a_1..a_{t-2}> for a longer prefix
    PartialQuotients seq{3, 1, 4, 1, 5, 9, 2, 6};
    for (std::size_t t = 2; t <= seq.size(); ++t) {
        PartialQuotients a(seq.begin(), seq.begin() + t);
        PartialQuotients b(seq.begin(), seq.begin() + t - 1);
        PartialQuotients c(seq.begin(), seq.begin() + t - 2);
        CHECK(continuant(a) == seq[t - 1] * continuant(b) + continuant(c));
    }
    CHECK_THROWS_AS(continuant(PartialQuotients{1, 0, 2}), std::invalid_argument);
}

TEST_CASE("continuant accumulator tracks prefix state") {
    ContinuantAccumulator acc;
    CHECK(acc.value() == 1);
    acc.push(1);
    CHECK(acc.value() == 1);
    CHECK(acc.previous() == 1);
    acc.push(2);
    CHECK(acc.value() == 3);
    CHECK(acc.previous() == 1);
    acc.push(3);
    CHECK(acc.value() == 10);
    CHECK(acc.previous() == 3);
    CHECK(acc.sum() == 6);
}

TEST_CASE("to_fraction") {
    CHECK(to_fraction(PartialQuotients{2}) == mpq_class(1, 2));
    CHECK(to_fraction(PartialQuotients{1, 2, 3}) == mpq_class(7, 10));
    CHECK(to_fraction(PartialQuotients{1, 1, 1}) == mpq_class(2, 3));
    CHECK(to_fraction(PartialQuotients{1}) == 1);
    CHECK_THROWS_AS(to_fraction(PartialQuotients{}), std::invalid_argument);
}

TEST_CASE("expand produces both representations") {
    auto e = expand(mpq_class(1, 2));
    CHECK(e.canonical == PartialQuotients{2});
    CHECK(e.alternate == PartialQuotients{1, 1});
    CHECK_FALSE(e.degenerate_one);

    e = expand(mpq_class(7, 10));
    CHECK(e.canonical == PartialQuotients{1, 2, 3});
    CHECK(e.alternate == PartialQuotients{1, 2, 2, 1});

    e = expand(mpq_class(2, 3));
    CHECK(e.canonical == PartialQuotients{1, 2});
    CHECK(e.alternate == PartialQuotients{1, 1, 1});

    e = expand(mpq_class(1));
    CHECK(e.canonical == PartialQuotients{1});
    CHECK(e.alternate == PartialQuotients{1});
    CHECK(e.degenerate_one);

    CHECK_THROWS_AS(expand(mpq_class(0)), std::domain_error);
    CHECK_THROWS_AS(expand(mpq_class(3, 2)), std::domain_error);
    CHECK_THROWS_AS(expand(mpq_class(-1, 2)), std::domain_error);
}

TEST_CASE("expand round-trips through to_fraction") {
    Rng rng(11);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::int64_t den = rng.range(2, 1000000);
        const std::int64_t num = rng.range(1, den);
        mpq_class x(num, den);
        x.canonicalize();
        auto e = expand(x);
        CHECK(to_fraction(e.canonical) == x);
        CHECK(to_fraction(e.alternate) == x);
        if (!e.degenerate_one) {
            CHECK(e.canonical.back() >= 2);
            CHECK(e.alternate.back() == 1);
        }
    }
}

TEST_CASE("split identity at every cut") {
    PartialQuotients seq{1, 2, 3};
    CHECK(split_product(seq, 1) == 10);
    CHECK(split_product(PartialQuotients{2}, 0) == 2);
    CHECK(split_product(PartialQuotients{1, 1, 1, 1}, 2) == 5);
    CHECK_THROWS_AS(split_product(seq, 4), std::out_of_range);

    Rng rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t len = static_cast<std::size_t>(rng.range(0, 30));
        PartialQuotients s;
        for (std::size_t i = 0; i < len; ++i) s.push_back(rng.range(1, 1000));
        const mpz_class whole = continuant(s);
        for (std::size_t cut = 0; cut <= s.size(); ++cut) {
            CHECK(split_product(s, cut) == whole);
        }
    }
}

TEST_CASE("mirror symmetry and concatenation bound") {
    Rng rng(13);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t len = static_cast<std::size_t>(rng.range(1, 30));
        PartialQuotients s;
        for (std::size_t i = 0; i < len; ++i) s.push_back(rng.range(1, 50));
        PartialQuotients rev(s.rbegin(), s.rend());
        CHECK(continuant(s) == continuant(rev));

        // <A,B> <= 2 <A> <B>
        const std::size_t cut = static_cast<std::size_t>(rng.range(0, static_cast<std::int64_t>(len)));
        PartialQuotients a(s.begin(), s.begin() + cut), b(s.begin() + cut, s.end());
        CHECK(continuant(s) <= 2 * continuant(a) * continuant(b));
    }
}
