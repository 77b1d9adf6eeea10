#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minkq/constants.hpp"
#include "minkq/interval.hpp"

using namespace minkq;

TEST_CASE("interval arithmetic encloses exact rational results") {
    const mpq_class a(1, 3), b(2, 7);
    const auto ia = Interval::of(a, 128), ib = Interval::of(b, 128);
    CHECK((ia + ib).contains(a + b));
    CHECK((ia - ib).contains(a - b));
    CHECK((ia * ib).contains(a * b));
    CHECK((ia / ib).contains(mpq_class(a / b)));
    CHECK((-ia).contains(mpq_class(-a)));
    CHECK(ia.pow_ui(5).contains(mpq_class(1, 243)));
}

TEST_CASE("interval comparisons are tri-state") {
    const auto one = Interval::of(1L, 64);
    const auto two = Interval::of(2L, 64);
    CHECK(one.less_than(two) == Decision::yes);
    CHECK(two.less_than(one) == Decision::no);
    const auto wide = Interval::make(mpq_class(0), mpq_class(3), 64);
    CHECK(wide.less_than(two) == Decision::undecided);
    CHECK(one.positive() == Decision::yes);
    CHECK((-one).positive() == Decision::no);
    CHECK((one - one).positive() == Decision::no);  // exact [0,0]
    const auto s = two.sqrt();
    CHECK((s * s - two).positive() == Decision::undecided);
}

TEST_CASE("sqrt and log stay outward") {
    const auto two = Interval::of(2L, 256);
    const auto r = two.sqrt();
    CHECK((r * r).contains(mpq_class(2)));
    const auto l = two.log();
    CHECK(l.exp().contains(mpq_class(2)));
    CHECK(two.log2().contains(mpq_class(1)));
    CHECK_THROWS_AS(Interval::of(0L, 64).log(), std::domain_error);
}

TEST_CASE("division by zero-straddling interval is rejected") {
    const auto z = Interval::make(mpq_class(-1), mpq_class(1), 64);
    CHECK_THROWS_AS(Interval::of(1L, 64) / z, std::domain_error);
}

TEST_CASE("decide escalates precision") {
    // sqrt(2)^2 - 2 straddles zero at any precision: stays undecided.
    const Decision d = decide(
        [&](mpfr_prec_t p) {
            const auto s = Interval::of(2L, p).sqrt();
            return (s * s - Interval::of(2L, p)).positive();
        },
        PrecisionPolicy{64, 512});
    CHECK(d == Decision::undecided);
    // A genuinely tiny but nonzero difference gets decided once precision
    // suffices.
    const Decision d2 = decide(
        [&](mpfr_prec_t p) {
            const mpq_class tiny = mpq_class(1) / (mpz_class(1) << 200);
            const auto s = Interval::of(2L, p).sqrt();
            return (s * s - Interval::of(mpq_class(2) - tiny, p)).positive();
        },
        PrecisionPolicy{64, 512});
    CHECK(d2 == Decision::yes);
}

TEST_CASE("paper constants at 128 bits") {
    const Constants c = constants(128);
    CHECK(c.phi.contains(mpq_class(0)) == false);
    // Digit anchors.
    CHECK(c.kappa1.greater_than(mpq_class(13884, 10000)) == Decision::yes);
    CHECK(c.kappa1.less_than(mpq_class(13885, 10000)) == Decision::yes);
    CHECK(c.kappa2.greater_than(mpq_class(4401, 1000)) == Decision::yes);
    CHECK(c.kappa2.less_than(mpq_class(4402, 1000)) == Decision::yes);
    CHECK(c.kappa4.greater_than(mpq_class(7486, 10000)) == Decision::yes);
    CHECK(c.kappa4.less_than(mpq_class(7487, 10000)) == Decision::yes);
    CHECK(c.z.greater_than(mpq_class(5318, 1000)) == Decision::yes);
    CHECK(c.z.less_than(mpq_class(5320, 1000)) == Decision::yes);

    const mpq_class width_cap(1, 1000000);
    for (const Interval* iv : {&c.kappa1, &c.kappa2, &c.kappa4, &c.z, &c.phi}) {
        CHECK(iv->width_d() < 1e-6);
        (void)width_cap;
    }
}

TEST_CASE("sqrt(2)^kappa1 equals phi") {
    for (mpfr_prec_t prec : {64, 128, 256, 512}) {
        const Constants c = constants(prec);
        const auto half_kappa = c.kappa1 / Interval::of(2L, prec);
        const auto lhs = Interval::pow(Interval::of(2L, prec), half_kappa);
        // Intervals for the same real must intersect at every precision.
        CHECK(lhs.less_than(c.phi) != Decision::yes);
        CHECK(c.phi.less_than(lhs) != Decision::yes);
        CHECK(lhs.width_d() <= Interval::pow(Interval::of(2L, 64),
                                             constants(64).kappa1 / Interval::of(2L, 64))
                                   .width_d());
    }
}

TEST_CASE("lambda_n closed form") {
    const auto l1 = Constants::lambda_n(1, 128);
    // lambda_1 = golden ratio
    const Constants c = constants(128);
    CHECK(l1.less_than(c.phi) != Decision::yes);
    CHECK(c.phi.less_than(l1) != Decision::yes);
    // lambda_n solves x^2 - n x - 1 = 0
    for (unsigned long n : {2ul, 3ul, 4ul, 5ul}) {
        const auto ln = Constants::lambda_n(n, 128);
        const auto residual = ln * ln - Interval::of(static_cast<long>(n), 128) * ln -
                              Interval::of(1L, 128);
        CHECK(residual.contains(mpq_class(0)));
    }
}

TEST_CASE("higher precision narrows every constant") {
    const Constants c128 = constants(128);
    const Constants c256 = constants(256);
    CHECK(c256.kappa1.width_d() < c128.kappa1.width_d());
    CHECK(c256.kappa2.width_d() < c128.kappa2.width_d());
    CHECK(c256.z.width_d() < c128.z.width_d());
}
