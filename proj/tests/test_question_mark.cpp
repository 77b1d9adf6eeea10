#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minkq/errors.hpp"
#include "minkq/question_mark.hpp"
#include "minkq/rng.hpp"

using namespace minkq;

TEST_CASE("question mark exact values") {
    CHECK(question_mark(PartialQuotients{2}) == Dyadic(mpz_class(1), 1));
    CHECK(question_mark(PartialQuotients{1, 2, 3}) == Dyadic(mpz_class(25), 5));
    CHECK(question_mark(PartialQuotients{1, 2, 2, 1}) == Dyadic(mpz_class(25), 5));
    CHECK(question_mark(mpq_class(7, 10)).to_string() == "25/2^5");
    CHECK(question_mark(PartialQuotients{1}) == Dyadic::one());
    CHECK(question_mark(mpq_class(1, 2)).to_rational() == mpq_class(1, 2));
    CHECK_THROWS_AS(question_mark(PartialQuotients{}), std::invalid_argument);
}

TEST_CASE("representation independence") {
    Rng rng(101);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::int64_t den = rng.range(2, 1000000);
        const std::int64_t num = rng.range(1, den);
        mpq_class x(num, den);
        x.canonicalize();
        const auto e = expand(x);
        CHECK(question_mark(e.canonical) == question_mark(e.alternate));
    }
}

TEST_CASE("strict monotonicity on rationals") {
    Rng rng(102);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::int64_t d1 = rng.range(2, 10000), d2 = rng.range(2, 10000);
        mpq_class x(rng.range(1, d1), d1), y(rng.range(1, d2), d2);
        x.canonicalize();
        y.canonicalize();
        if (x == y) continue;
        if (x > y) swap(x, y);
        CHECK(question_mark(x) < question_mark(y));
    }
}

TEST_CASE("enclosure brackets the tail") {
    const auto e1 = question_mark_enclosure(PartialQuotients{1});
    CHECK(e1.lower.to_rational() == mpq_class(1, 2));
    CHECK(e1.upper.to_rational() == 1);

    const auto e2 = question_mark_enclosure(PartialQuotients{1, 1});
    CHECK(e2.contains(mpq_class(2, 3)));
    CHECK(e2.width().to_rational() <= mpq_class(1, 2));

    PartialQuotients ones(30, 1);
    const auto e30 = question_mark_enclosure(ones);
    CHECK(e30.contains(mpq_class(2, 3)));
    mpq_class w = e30.width().to_rational();
    mpq_class limit(1);
    limit /= mpz_class(1) << 29;
    CHECK(w <= limit);
}

TEST_CASE("enclosure soundness on refinements") {
    Rng rng(103);
    for (int trial = 0; trial < 500; ++trial) {
        PartialQuotients prefix;
        const std::size_t len = static_cast<std::size_t>(rng.range(1, 8));
        for (std::size_t i = 0; i < len; ++i) prefix.push_back(rng.range(1, 6));
        const auto enc = question_mark_enclosure(prefix);
        PartialQuotients refined = prefix;
        for (int extra = 0; extra < 4; ++extra) refined.push_back(rng.range(1, 6));
        // A refinement beginning with `prefix` behaves like the irrationals
        // that extend it once it is longer than the prefix.
        const Dyadic q = question_mark(refined);
        CHECK(enc.lower <= q);
        CHECK(q <= enc.upper);
    }
}

TEST_CASE("stern-brocot levels") {
    const auto l1 = stern_brocot_level(1);
    REQUIRE(l1.values.size() == 1);
    CHECK(l1.values[0] == mpq_class(1, 2));

    const auto l2 = stern_brocot_level(2);
    REQUIRE(l2.values.size() == 2);
    CHECK(l2.values[0] == mpq_class(1, 3));
    CHECK(l2.values[1] == mpq_class(2, 3));

    const auto l3 = stern_brocot_level(3);
    REQUIRE(l3.values.size() == 4);
    CHECK(l3.values[0] == mpq_class(1, 4));
    CHECK(l3.values[1] == mpq_class(2, 5));
    CHECK(l3.values[2] == mpq_class(3, 5));
    CHECK(l3.values[3] == mpq_class(3, 4));

    for (std::int64_t n = 1; n <= 12; ++n) {
        CHECK(stern_brocot_level(n).values.size() == (std::size_t{1} << (n - 1)));
    }
    CHECK_THROWS_AS(stern_brocot_level(25), resource_limit_error);
    CHECK_THROWS_AS(stern_brocot_level(30, 28), resource_limit_error);
}

TEST_CASE("empirical distribution") {
    CHECK(empirical_distribution(2, mpq_class(1, 2)) == mpq_class(1, 2));
    CHECK(empirical_distribution(1, mpq_class(1)) == 1);
    CHECK(empirical_distribution(3, mpq_class(1, 4)) == mpq_class(1, 4));
    CHECK_THROWS_AS(empirical_distribution(2, mpq_class(3, 2)), std::domain_error);
}

TEST_CASE("distribution converges to the question mark") {
    for (const auto& [num, den] : {std::pair{1, 3}, {1, 2}, {7, 10}}) {
        const mpq_class x(num, den);
        const mpq_class target = question_mark(x).to_rational();
        mpq_class prev_err;
        bool first = true;
        for (std::int64_t n = 6; n <= 18; n += 6) {
            const mpq_class err = abs(empirical_distribution(n, x) - target);
            if (!first) CHECK(err <= prev_err);
            prev_err = err;
            first = false;
        }
    }
}
