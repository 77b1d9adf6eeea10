#include "minkq/minimax.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace minkq {

void MinimaxInstance::validate() const {
    if (n < 1) throw std::invalid_argument("minimax: N must be >= 1");
    if (sgn(lambda) <= 0 || lambda >= 1) {
        throw std::invalid_argument("minimax: lambda must lie in (0,1)");
    }
    if (eta.positive() != Decision::yes) {
        throw std::invalid_argument("minimax: eta must be certifiably positive");
    }
}

namespace {

void check_positive(std::span<const Interval> c) {
    for (const Interval& ci : c) {
        if (ci.positive() != Decision::yes) {
            throw std::invalid_argument("minimax: c values must be > 0");
        }
    }
}

mpfr_prec_t common_precision(std::span<const Interval> c, const Interval& eta) {
    mpfr_prec_t p = eta.precision();
    for (const Interval& ci : c) p = std::max(p, ci.precision());
    return p;
}

}  // namespace

std::vector<Interval> phi_values(std::span<const Interval> c, const mpq_class& lambda,
                                 const Interval& eta) {
    check_positive(c);
    const std::size_t n = c.size();
    const mpfr_prec_t p = common_precision(c, eta);
    const Interval sqrt_lambda = Interval::of(lambda, p).sqrt();
    const Interval one_minus = Interval::of(mpq_class(1) - lambda, p);

    std::vector<Interval> out(n, Interval(p));
    // phi_i = (1-l) sum_{k>i} sqrt(l)^{k-i}/c_k + eta c_i, via the backward
    // recursion T_i = sqrt(l) (1/c_{i+1} + T_{i+1}).
    Interval tail(p);  // T_N = 0
    for (std::size_t i = n; i-- > 0;) {
        out[i] = one_minus * tail + eta * c[i];
        if (i > 0) {
            tail = sqrt_lambda * (Interval::of(1L, p) / c[i] + tail);
        }
    }
    return out;
}

std::vector<Interval> phi_prime_values(std::span<const Interval> c,
                                       const mpq_class& lambda, const Interval& eta) {
    auto out = phi_values(c, lambda, eta);
    const mpfr_prec_t p = out.empty() ? 128 : out.front().precision();
    const Interval sqrt_lambda = Interval::of(lambda, p).sqrt();
    Interval pow = Interval::of(1L, p);
    for (std::size_t i = 0; i < out.size(); ++i) {
        pow = pow * sqrt_lambda;
        out[i] = pow * out[i];
    }
    return out;
}

MinimaxSolution solve_equalizing(const MinimaxInstance& inst) {
    inst.validate();
    const std::size_t n = inst.n;
    const mpfr_prec_t p = std::max(inst.precision, inst.eta.precision());
    const Interval lambda = Interval::of(inst.lambda, p);
    const Interval one_minus = Interval::of(mpq_class(1) - inst.lambda, p);
    const Interval four = Interval::of(4L, p);
    const Interval two = Interval::of(2L, p);

    // lambda^k, k = 1..N.
    std::vector<Interval> lam_pow;
    lam_pow.reserve(n + 1);
    lam_pow.push_back(lambda);
    for (std::size_t k = 2; k <= n; ++k) lam_pow.push_back(lam_pow.back() * lambda);

    MinimaxSolution sol{n, inst.lambda, inst.eta, {}, Interval(p), {}, Decision::yes};
    sol.d.reserve(n);
    sol.d.push_back(Interval(p));  // d_1 = 0, exact
    for (std::size_t k = 1; k < n; ++k) {
        const Interval& dk = sol.d.back();
        const Interval term = four * one_minus * lam_pow[k] / inst.eta;  // lambda^{k+1}
        sol.d.push_back((dk + (dk * dk + term).sqrt()) / two);
    }
    sol.y_min = inst.eta * sol.d.back();

    // Functionals via suffix sums G_k = sum_{j>k} lambda^j / d_j.
    sol.functionals.assign(n, Interval(p));
    Interval suffix(p);
    for (std::size_t k = n; k-- > 0;) {
        sol.functionals[k] = one_minus * suffix + inst.eta * sol.d[k];
        if (k > 0) suffix += lam_pow[k] / sol.d[k];
    }

    // Consistency certificate: one real value must fit in every interval.
    bool consistent = true;
    mpfr_t max_lo, min_hi;
    mpfr_init2(max_lo, p);
    mpfr_init2(min_hi, p);
    mpfr_set(max_lo, sol.functionals.front().lo(), MPFR_RNDD);
    mpfr_set(min_hi, sol.functionals.front().hi(), MPFR_RNDU);
    for (const Interval& f : sol.functionals) {
        if (mpfr_cmp(f.lo(), max_lo) > 0) mpfr_set(max_lo, f.lo(), MPFR_RNDD);
        if (mpfr_cmp(f.hi(), min_hi) < 0) mpfr_set(min_hi, f.hi(), MPFR_RNDU);
    }
    if (mpfr_cmp(sol.y_min.lo(), max_lo) > 0) mpfr_set(max_lo, sol.y_min.lo(), MPFR_RNDD);
    if (mpfr_cmp(sol.y_min.hi(), min_hi) < 0) mpfr_set(min_hi, sol.y_min.hi(), MPFR_RNDU);
    consistent = mpfr_cmp(max_lo, min_hi) <= 0;
    mpfr_clear(max_lo);
    mpfr_clear(min_hi);
    sol.equalized = consistent ? Decision::yes : Decision::no;
    return sol;
}

ConvergenceReport bounds_check(const MinimaxSolution& solution) {
    const std::size_t n = solution.n;
    const mpfr_prec_t p = solution.y_min.precision();
    const Interval lambda = Interval::of(solution.lambda, p);
    const Interval one_minus = Interval::of(mpq_class(1) - solution.lambda, p);
    const Interval sqrt_eta = solution.eta.sqrt();
    const Interval two = Interval::of(2L, p);

    // delta_k = (1-l) l^k and X_k accumulated forward; sqrt(2 X_k) cached.
    std::vector<Interval> e;
    e.reserve(n);
    for (const Interval& dk : solution.d) e.push_back(sqrt_eta * dk);

    std::vector<Interval> delta, sqrt2x;
    delta.reserve(n + 3);
    sqrt2x.reserve(n + 3);
    Interval lam_pow = lambda;
    Interval x(p);
    for (std::size_t k = 1; k <= n + 2; ++k) {
        delta.push_back(one_minus * lam_pow);
        x += delta.back();
        sqrt2x.push_back((two * x).sqrt());
        lam_pow = lam_pow * lambda;
    }

    ConvergenceReport report;
    for (std::size_t k = 1; k <= n; ++k) {
        if (e[k - 1].less_than(sqrt2x[k - 1]) != Decision::yes) {
            report.flagged_upper.push_back(k);
        }
    }
    // e_{n+1} - e_n = delta_{n+1}/e_{n+1} (recurrence identity), and
    // sqrt(2X_{n+2}) - sqrt(2X_{n+1}) = 2 delta_{n+2}/(sqrt(2X_{n+2}) +
    // sqrt(2X_{n+1})): both forms avoid cancellation.
    for (std::size_t k = 1; k + 2 <= n; ++k) {
        const Interval lhs = delta[k] / e[k];  // delta_{k+1} / e_{k+1}
        const Interval rhs = two * delta[k + 1] / (sqrt2x[k + 1] + sqrt2x[k]);
        if (rhs.less_than(lhs) != Decision::yes) {
            report.flagged_difference.push_back(k);
        }
    }
    return report;
}

namespace {

struct OracleProblem {
    std::size_t n;
    double lambda;
    double eta;
    int iterations;
    double hi;
};

double oracle_eval(const OracleProblem& prob, const double* d) {
    double best = -1e300;
    double suffix = 0;  // sum_{j>k} lambda^j / d_j
    for (std::size_t k = prob.n; k-- > 0;) {
        const double phi = (1 - prob.lambda) * suffix + prob.eta * d[k];
        best = std::max(best, phi);
        if (k > 0) {
            suffix += std::pow(prob.lambda, static_cast<double>(k + 1)) / d[k];
        }
    }
    return best;
}

// Minimizes over coordinate `level` with the earlier coordinates fixed;
// the max of convex functions is convex, so every slice is unimodal.
double oracle_min_level(const OracleProblem& prob, double* d, std::size_t level);

double oracle_value_at(const OracleProblem& prob, double* d, std::size_t level,
                       double x) {
    d[level] = x;
    if (level + 1 == prob.n) return oracle_eval(prob, d);
    return oracle_min_level(prob, d, level + 1);
}

double oracle_min_level(const OracleProblem& prob, double* d, std::size_t level) {
    double lo = level == 0 ? 0.0 : prob.hi * 1e-9;
    double hi = prob.hi;
    for (int it = 0; it < prob.iterations; ++it) {
        const double m1 = lo + (hi - lo) / 3;
        const double m2 = hi - (hi - lo) / 3;
        if (oracle_value_at(prob, d, level, m1) <= oracle_value_at(prob, d, level, m2)) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    return oracle_value_at(prob, d, level, (lo + hi) / 2);
}

}  // namespace

MinmaxOracleResult brute_force_minmax(std::size_t n, const mpq_class& lambda,
                                      double eta, int iterations_per_level) {
    if (n < 1 || n > 4) {
        throw std::invalid_argument("brute_force_minmax: N must be in 1..4");
    }
    if (sgn(lambda) <= 0 || lambda >= 1 || eta <= 0) {
        throw std::invalid_argument("brute_force_minmax: bad lambda or eta");
    }
    OracleProblem prob;
    prob.n = n;
    prob.lambda = lambda.get_d();
    prob.eta = eta;
    prob.iterations = iterations_per_level;
    prob.hi = 2 * std::sqrt(2 * prob.lambda / eta) + 1e-6;

    double d[4] = {0, 0, 0, 0};
    MinmaxOracleResult out;
    out.value = oracle_min_level(prob, d, 0);
    out.argmin.assign(d, d + n);

    // Granularity: final bracket per level times a local Lipschitz estimate.
    const double bracket = prob.hi * std::pow(2.0 / 3.0, iterations_per_level);
    double lipschitz = eta;
    for (std::size_t j = 1; j < n; ++j) {
        const double dj = std::max(d[j], prob.hi * 1e-9);
        lipschitz += (1 - prob.lambda) * std::pow(prob.lambda, double(j + 1)) / (dj * dj);
    }
    out.slack = std::max(1e-12, double(n) * bracket * lipschitz) + 1e-9 * (1 + out.value);
    return out;
}

MaxPhiReport max_phi_lower_bounds(std::span<const Interval> c, const mpq_class& lambda,
                                  const Interval& eta,
                                  std::optional<mpq_class> epsilon) {
    if (c.empty()) throw std::invalid_argument("max_phi_lower_bounds: empty c");
    const mpfr_prec_t p = common_precision(c, eta);
    const auto phis = phi_values(c, lambda, eta);
    const auto phi_primes = phi_prime_values(c, lambda, eta);

    MaxPhiReport report{Interval(p), Interval(p), Interval(p), Interval(p),
                        std::nullopt, {}};
    report.max_phi = phis.front();
    report.max_phi_prime = phi_primes.front();
    for (std::size_t i = 1; i < phis.size(); ++i) {
        report.max_phi = Interval::max(report.max_phi, phis[i]);
        report.max_phi_prime = Interval::max(report.max_phi_prime, phi_primes[i]);
    }
    const Interval two = Interval::of(2L, p);
    report.ref_sqrt8eta = (Interval::of(8L, p) * eta).sqrt();
    report.ref_sqrt2eta = (two * eta).sqrt();

    // First index with c_i >= 1/(2 sqrt(eta)).
    const Interval threshold = Interval::of(1L, p) / (two * eta.sqrt());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i].greater_than(threshold) == Decision::yes) {
            report.threshold_witness = i + 1;
            break;
        }
    }

    if (epsilon && report.threshold_witness) {
        const mpq_class& eps = *epsilon;
        if (sgn(eps) <= 0 || eps >= 1) {
            throw std::invalid_argument("max_phi_lower_bounds: epsilon must be in (0,1)");
        }
        // M = ceil(10 log eps / log lambda), both logs negative.
        const Interval m_iv = Interval::of(10L, p) * Interval::of(eps, p).log() /
                              Interval::of(lambda, p).log();
        const std::size_t m_window =
            static_cast<std::size_t>(m_iv.ceil_upper().get_ui());
        const Interval growth = Interval::of(mpq_class(1) + eps * eps, p);
        std::size_t cur = *report.threshold_witness;  // 1-based
        report.growth_chain.push_back(cur);
        while (true) {
            std::size_t next = 0;
            const std::size_t limit = std::min(c.size(), cur + m_window);
            for (std::size_t j = cur + 1; j <= limit; ++j) {
                if (c[j - 1].greater_than(growth * c[cur - 1]) == Decision::yes) {
                    next = j;
                    break;
                }
            }
            if (next == 0) break;
            report.growth_chain.push_back(next);
            cur = next;
        }
    }
    return report;
}

}  // namespace minkq
