#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "minkq/minimax.hpp"

using namespace minkq;

namespace {

Interval iv(long v, mpfr_prec_t p = 256) { return Interval::of(v, p); }

}  // namespace

TEST_CASE("phi values by direct substitution") {
    const Interval eta = iv(1);
    {
        // N = 1: phi_1 = eta c_1 (empty sum).
        std::vector<Interval> c{Interval::of(mpq_class(7, 3), 256)};
        const auto phis = phi_values(c, mpq_class(1, 4), eta);
        REQUIRE(phis.size() == 1);
        CHECK(phis[0].contains(mpq_class(7, 3)));
    }
    {
        // N = 2, c = (1,1), lambda = 1/4: phi_1 = (3/4)(1/2) + 1 = 11/8.
        std::vector<Interval> c{iv(1), iv(1)};
        const auto phis = phi_values(c, mpq_class(1, 4), eta);
        REQUIRE(phis.size() == 2);
        CHECK(phis[0].contains(mpq_class(11, 8)));
        CHECK(phis[1].contains(mpq_class(1)));
        // phi'_1 = sqrt(1/4) * 11/8 = 11/16, phi'_2 = (1/4)*1.
        const auto primes = phi_prime_values(c, mpq_class(1, 4), eta);
        CHECK(primes[0].contains(mpq_class(11, 16)));
        CHECK(primes[1].contains(mpq_class(1, 4)));
    }
    {
        // N = 2, c = (2,1): phi_1 = 3/8 + 2 = 19/8.
        std::vector<Interval> c{iv(2), iv(1)};
        const auto phis = phi_values(c, mpq_class(1, 4), eta);
        CHECK(phis[0].contains(mpq_class(19, 8)));
    }
    {
        std::vector<Interval> c{iv(1), Interval(256)};  // c_2 = 0
        CHECK_THROWS_AS(phi_values(c, mpq_class(1, 4), eta), std::invalid_argument);
    }
}

TEST_CASE("substitution d_j = sqrt(lambda)^j c_j links phi' to the d-functional") {
    // phi'_i(C) evaluated directly must match
    // (1-l) sum_{k>i} l^k/d_k + eta d_i after the substitution.
    const mpq_class lambda(9, 16);  // sqrt(lambda) = 3/4 rational, exact check
    const mpq_class sl(3, 4);
    const Interval eta = Interval::of(mpq_class(5, 7), 256);
    std::vector<mpq_class> c{mpq_class(2), mpq_class(3, 2), mpq_class(1, 3)};
    std::vector<Interval> civ;
    for (const auto& q : c) civ.push_back(Interval::of(q, 256));
    const auto primes = phi_prime_values(civ, lambda, eta);

    mpq_class slp(1);
    std::vector<mpq_class> d;
    for (std::size_t j = 0; j < c.size(); ++j) {
        slp *= sl;
        d.push_back(slp * c[j]);
    }
    for (std::size_t i = 1; i <= c.size(); ++i) {
        mpq_class expect(0);
        mpq_class lp(1);
        for (std::size_t k = 1; k <= c.size(); ++k) {
            lp *= lambda;
            if (k > i) expect += (mpq_class(1) - lambda) * lp / d[k - 1];
        }
        // eta d_i term stays an interval (eta is one).
        const Interval total =
            Interval::of(expect, 256) + eta * Interval::of(d[i - 1], 256);
        CHECK(primes[i - 1].less_than(total) != Decision::yes);
        CHECK(total.less_than(primes[i - 1]) != Decision::yes);
    }
}

TEST_CASE("equalizing solution closed form at N = 2") {
    MinimaxInstance inst{2, mpq_class(1, 4), Interval::of(1L, 256), 256};
    const auto sol = solve_equalizing(inst);
    REQUIRE(sol.d.size() == 2);
    CHECK(sol.d[0].contains(mpq_class(0)));
    // d_2 = lambda sqrt((1-lambda)/eta) = (1/4) sqrt(3)/2 = sqrt(3)/8.
    // y_min = eta d_2 = sqrt(3)/8; (8 y)^2 = 3 exactly.
    const Interval eight_y = iv(8) * sol.y_min;
    CHECK((eight_y * eight_y).contains(mpq_class(3)));
    CHECK(sol.equalized == Decision::yes);
    // y_min = 0.21650635094610966...
    CHECK(sol.y_min.greater_than(mpq_class(21650, 100000)) == Decision::yes);
    CHECK(sol.y_min.less_than(mpq_class(21651, 100000)) == Decision::yes);
}

TEST_CASE("single-term instance is degenerate") {
    MinimaxInstance inst{1, mpq_class(1, 2), Interval::of(1L, 256), 256};
    const auto sol = solve_equalizing(inst);
    CHECK(sol.d[0].contains(mpq_class(0)));
    CHECK(sol.y_min.contains(mpq_class(0)));
    const auto rep = bounds_check(sol);
    CHECK(rep.all_certified());  // e_1 = 0 < sqrt(2 X_1)
}

TEST_CASE("quadratic consistency of the recurrence") {
    MinimaxInstance inst{40, mpq_class(7, 10), Interval::of(mpq_class(3, 2), 256), 256};
    const auto sol = solve_equalizing(inst);
    const Interval one_minus = Interval::of(mpq_class(3, 10), 256);
    Interval lam_pow = Interval::of(mpq_class(7, 10), 256);
    for (std::size_t k = 1; k + 1 <= sol.d.size(); ++k) {
        lam_pow = lam_pow * Interval::of(mpq_class(7, 10), 256);  // lambda^{k+1}
        // eta (d_{k+1} - d_k) = (1-lambda) lambda^{k+1} / d_{k+1}
        const Interval lhs = sol.eta * (sol.d[k] - sol.d[k - 1]);
        const Interval rhs = one_minus * lam_pow / sol.d[k];
        CHECK(lhs.less_than(rhs) != Decision::yes);
        CHECK(rhs.less_than(lhs) != Decision::yes);
    }
    CHECK(sol.equalized == Decision::yes);
}

TEST_CASE("equalization spread shrinks within interval widths") {
    MinimaxInstance inst{100, mpq_class(99, 100), Interval::of(1L, 256), 256};
    const auto sol = solve_equalizing(inst);
    CHECK(sol.equalized == Decision::yes);
    // max_k hi - min_k lo <= 2 max width, evaluated in mpfr (doubles would
    // drown these widths in their own rounding).
    mpfr_t max_hi, min_lo, w, wmax, spread;
    mpfr_inits2(256, max_hi, min_lo, w, wmax, spread, nullptr);
    mpfr_set(max_hi, sol.functionals.front().hi(), MPFR_RNDU);
    mpfr_set(min_lo, sol.functionals.front().lo(), MPFR_RNDD);
    mpfr_set_zero(wmax, 1);
    for (const auto& f : sol.functionals) {
        mpfr_max(max_hi, max_hi, f.hi(), MPFR_RNDU);
        mpfr_min(min_lo, min_lo, f.lo(), MPFR_RNDD);
        mpfr_sub(w, f.hi(), f.lo(), MPFR_RNDU);
        mpfr_max(wmax, wmax, w, MPFR_RNDU);
    }
    mpfr_sub(spread, max_hi, min_lo, MPFR_RNDU);
    mpfr_mul_2ui(wmax, wmax, 1, MPFR_RNDU);
    CHECK(mpfr_cmp(spread, wmax) <= 0);
    mpfr_clears(max_hi, min_lo, w, wmax, spread, nullptr);
}

TEST_CASE("convergence certificates across lambda") {
    for (const auto& [num, den] : {std::pair{1, 2}, {9, 10}, {99, 100}}) {
        MinimaxInstance inst{500, mpq_class(num, den), Interval::of(1L, 256), 256};
        const auto sol = solve_equalizing(inst);
        const auto rep = bounds_check(sol);
        CHECK(rep.flagged_upper.empty());
        CHECK(rep.flagged_difference.empty());
    }
}

TEST_CASE("y_min approaches sqrt(2 eta) for lambda near 1") {
    MinimaxInstance inst{2000, mpq_class(99, 100), Interval::of(1L, 256), 256};
    const auto sol = solve_equalizing(inst);
    const double y = sol.y_min.mid_d();
    const double target = std::sqrt(2.0);
    CHECK(std::abs(y - target) / target <= 0.05);
    CHECK(y < target);  // from below
}

TEST_CASE("brute-force oracle agrees with the recurrence") {
    {
        const auto r = brute_force_minmax(1, mpq_class(1, 2), 1.0);
        CHECK(r.value <= 1e-6);  // minimum 0 at the boundary d_1 = 0
    }
    {
        MinimaxInstance inst{2, mpq_class(1, 4), Interval::of(1L, 256), 256};
        const auto sol = solve_equalizing(inst);
        const auto r = brute_force_minmax(2, mpq_class(1, 4), 1.0);
        CHECK(std::abs(r.value - sol.y_min.mid_d()) <= r.slack);
        CHECK(r.value >= sol.y_min.lo_d() - 1e-9);
    }
    {
        MinimaxInstance inst{3, mpq_class(1, 2), Interval::of(1L, 256), 256};
        const auto sol = solve_equalizing(inst);
        const auto r = brute_force_minmax(3, mpq_class(1, 2), 1.0);
        CHECK(std::abs(r.value - sol.y_min.mid_d()) <= r.slack);
    }
    {
        MinimaxInstance inst{4, mpq_class(3, 5), Interval::of(1L, 256), 256};
        const auto sol = solve_equalizing(inst);
        const auto r = brute_force_minmax(4, mpq_class(3, 5), 1.0, 48);
        CHECK(std::abs(r.value - sol.y_min.mid_d()) <= r.slack);
    }
    CHECK_THROWS_AS(brute_force_minmax(5, mpq_class(1, 2), 1.0),
                    std::invalid_argument);
}

TEST_CASE("max-phi report with reference lines and witnesses") {
    // Equalizing solution mapped back via c_j = d_j / sqrt(lambda)^j: max
    // phi'_i should sit near sqrt(2 eta).
    MinimaxInstance inst{400, mpq_class(99, 100), Interval::of(1L, 256), 256};
    const auto sol = solve_equalizing(inst);
    const Interval sqrt_l = Interval::of(mpq_class(99, 100), 256).sqrt();
    std::vector<Interval> c;
    Interval pw = Interval::of(1L, 256);
    for (std::size_t j = 0; j < sol.d.size(); ++j) {
        pw = pw * sqrt_l;
        c.push_back(sol.d[j] / pw);
    }
    // d_1 = 0 gives c_1 = 0; nudge it to keep every c positive.
    c[0] = Interval::of(mpq_class(1, 1000), 256);
    const auto report =
        max_phi_lower_bounds(c, mpq_class(99, 100), Interval::of(1L, 256),
                             mpq_class(1, 2));
    const double ref2 = report.ref_sqrt2eta.mid_d();
    CHECK(std::abs(report.max_phi_prime.mid_d() - ref2) / ref2 < 0.10);
    CHECK(report.ref_sqrt8eta.contains(mpq_class(0)) == false);
    CHECK(report.threshold_witness.has_value());
    if (report.threshold_witness) {
        CHECK(!report.growth_chain.empty());
        CHECK(report.growth_chain.front() == *report.threshold_witness);
    }
}
