#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "minkq/bounds.hpp"
#include "minkq/errors.hpp"
#include "minkq/json_io.hpp"
#include "minkq/question_mark.hpp"
#include "minkq/verify.hpp"

namespace {

using namespace minkq;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 2;
constexpr int kExitUndecided = 3;
constexpr int kExitUsage = 64;

struct GlobalOptions {
    long precision = 128;
    std::uint64_t seed = 1;
    std::size_t trials = 1000;
    std::string format = "json";
    std::size_t digits = 20;
};

mpq_class parse_rational(const std::string& text) {
    mpq_class q;
    if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0 || q.get_den() == 0) {
        throw std::invalid_argument("cannot parse rational '" + text + "'");
    }
    q.canonicalize();
    return q;
}

PartialQuotients read_quotients_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open '" + path + "'");
    }
    PartialQuotients seq;
    std::int64_t a;
    while (in >> a) seq.push_back(a);
    return seq;
}

PartialQuotients gather_sequence(const std::vector<std::int64_t>& inline_seq,
                                 const std::string& file) {
    if (!file.empty()) return read_quotients_file(file);
    return inline_seq;
}

void emit_scalar_rows(const json& doc, const std::string& sep) {
    std::function<void(const json&, const std::string&)> walk =
        [&](const json& node, const std::string& prefix) {
            if (node.is_object()) {
                for (const auto& [k, v] : node.items()) {
                    walk(v, prefix.empty() ? k : prefix + "." + k);
                }
            } else if (node.is_array()) {
                std::size_t i = 0;
                for (const auto& v : node) {
                    walk(v, prefix + "[" + std::to_string(i++) + "]");
                }
            } else {
                std::cout << prefix << sep
                          << (node.is_string() ? node.get<std::string>() : node.dump())
                          << "\n";
            }
        };
    walk(doc, "");
}

void emit(const GlobalOptions& g, const json& doc) {
    if (g.format == "text") {
        emit_scalar_rows(doc, ": ");
    } else if (g.format == "csv") {
        emit_scalar_rows(doc, ",");
    } else {
        std::cout << doc.dump(2) << "\n";
    }
}

int run_qm(const GlobalOptions& g, const std::string& x_text) {
    const mpq_class x = parse_rational(x_text);
    if (sgn(x) <= 0 || x > 1) {
        throw std::domain_error("qm: x must satisfy 0 < x <= 1");
    }
    const Dyadic v = question_mark(x);
    emit(g, json{{"x", x.get_str()}, {"question_mark", to_json(v, g.digits)}});
    return kExitOk;
}

int run_expand(const GlobalOptions& g, const std::string& x_text) {
    const auto e = expand(parse_rational(x_text));
    emit(g, json{{"x", x_text},
                 {"canonical", e.canonical},
                 {"alternate", e.alternate},
                 {"degenerate_one", e.degenerate_one}});
    return kExitOk;
}

int run_continuant(const GlobalOptions& g, const PartialQuotients& seq,
                   std::optional<std::size_t> cut) {
    const mpz_class value = continuant(seq);
    json doc{{"length", seq.size()},
             {"sum", quotient_sum(seq)},
             {"continuant", value.get_str()}};
    if (cut) {
        const mpz_class split = split_product(seq, *cut);
        doc["cut"] = *cut;
        doc["split_product"] = split.get_str();
        doc["split_identity_holds"] = (split == value);
    }
    emit(g, doc);
    return kExitOk;
}

int run_level(const GlobalOptions& g, std::int64_t n, std::int64_t cap,
              const std::string& at) {
    const auto level = stern_brocot_level(n, cap);
    json values = json::array();
    for (const auto& v : level.values) values.push_back(v.get_str());
    json doc{{"n", n}, {"size", level.values.size()}, {"values", std::move(values)}};
    if (!at.empty()) {
        const mpq_class x = parse_rational(at);
        doc["at"] = x.get_str();
        doc["empirical_distribution"] = empirical_distribution(n, x, cap).get_str();
        doc["question_mark_at"] = question_mark(x).to_string();
    }
    emit(g, doc);
    return kExitOk;
}

int run_diagnose(const GlobalOptions& g, const PartialQuotients& seq,
                 const std::string& ratio_c, std::size_t from,
                 std::int64_t hypothesis_threshold,
                 std::optional<std::size_t> increment_at) {
    std::optional<mpq_class> rc;
    if (ratio_c != "none") rc = parse_rational(ratio_c);
    const auto series = phi1_series(seq, g.precision, rc);
    json doc{{"series", to_json(series, g.digits)}};
    doc["phi_positive"] = to_json(check_phi_positive(series, from));
    bool hypothesis_ok = true;
    for (std::int64_t a : seq) {
        if (a != 1 && a < hypothesis_threshold) hypothesis_ok = false;
    }
    if (hypothesis_ok) {
        doc["phi_gt_3w"] = to_json(check_phi_gt_3w(series, hypothesis_threshold));
    } else {
        doc["phi_gt_3w"] = "skipped: alphabet violates the 1-or-large hypothesis";
    }
    if (increment_at) {
        const auto [lo, hi] = increment_bounds(seq, *increment_at, g.precision);
        doc["increment_bounds"] = {{"t", *increment_at},
                                   {"lower", to_json(lo, g.digits)},
                                   {"upper", to_json(hi, g.digits)}};
    }
    emit(g, doc);
    return kExitOk;
}

int run_blocks(const GlobalOptions& g, const PartialQuotients& seq, std::int64_t t0,
               const std::string& lambda, std::int64_t count,
               const std::string& epsilon) {
    BlockAnalysisOptions opts;
    opts.epsilon = parse_rational(epsilon);
    opts.precision = std::max<long>(g.precision, 256);
    const auto dec = block_decompose(seq, t0, parse_rational(lambda), count, opts);
    emit(g, json{{"t0", t0},
                 {"lambda", lambda},
                 {"blocks", count},
                 {"decomposition", to_json(dec, g.digits)}});
    return kExitOk;
}

int run_eliminate(const GlobalOptions& g, const PartialQuotients& seq,
                  std::int64_t threshold, const std::string& out_path) {
    const auto [out, trace] = eliminate_small(seq, threshold);
    json doc{{"threshold", threshold},
             {"input_length", seq.size()},
             {"trace", to_json(trace)}};
    if (out_path.empty()) {
        doc["before"] = seq;
        doc["after"] = out;
    } else {
        std::ofstream os(out_path);
        for (std::int64_t a : out) os << a << "\n";
        doc["written"] = out_path;
    }
    emit(g, doc);
    return kExitOk;
}

int suite_exit(const std::vector<verify::SuiteResult>& results) {
    bool fail = false, undecided = false;
    for (const auto& r : results) {
        if (r.failures > 0) fail = true;
        if (r.undecided > 0) undecided = true;
    }
    if (fail) return kExitVerifyFail;
    if (undecided) return kExitUndecided;
    return kExitOk;
}

int run_bounds_verify(const GlobalOptions& g, const std::string& s,
                      const std::string& alpha, const std::string& beta,
                      const std::string& step) {
    verify::SuiteOptions opts{g.seed, g.trials, g.precision};
    if (!s.empty()) {
        const MinProductInstance inst{parse_rational(s), parse_rational(alpha),
                                      parse_rational(beta)};
        const auto oracle = min_product_oracle(inst, parse_rational(step));
        const mpq_class bound = min_product_bound_exact(inst);
        json argmin = json::array();
        for (const auto& v : oracle.argmin) argmin.push_back(v.get_str());
        const bool ok = oracle.minimum >= bound - oracle.slack;
        emit(g, json{{"s", inst.s.get_str()},
                     {"alpha", inst.alpha.get_str()},
                     {"beta", inst.beta.get_str()},
                     {"grid_step", step},
                     {"oracle_minimum", oracle.minimum.get_str()},
                     {"argmin", std::move(argmin)},
                     {"bound", bound.get_str()},
                     {"slack", oracle.slack.get_str()},
                     {"holds", ok}});
        return ok ? kExitOk : kExitVerifyFail;
    }
    const std::vector<verify::SuiteResult> results{
        verify::prodlem_lower_bound(opts), verify::sumprodlem_sweep(opts)};
    json docs = json::array();
    for (const auto& r : results) docs.push_back(to_json(r));
    emit(g, json{{"suites", std::move(docs)}});
    return suite_exit(results);
}

int run_minimax(const GlobalOptions& g, const std::string& mode, std::size_t n,
                const std::string& lambda, const std::string& eta) {
    const mpq_class lam = parse_rational(lambda);
    const mpq_class eta_q = parse_rational(eta);
    if (mode == "oracle") {
        const auto r = brute_force_minmax(n, lam, eta_q.get_d());
        emit(g, json{{"n", n},
                     {"lambda", lam.get_str()},
                     {"eta", eta_q.get_str()},
                     {"value", r.value},
                     {"argmin", r.argmin},
                     {"slack", r.slack}});
        return kExitOk;
    }
    const long prec = std::max<long>(g.precision, 256);
    MinimaxInstance inst{n, lam, Interval::of(eta_q, prec), prec};
    const auto sol = solve_equalizing(inst);
    if (mode == "solve") {
        emit(g, to_json(sol, g.digits));
        return sol.equalized == Decision::yes ? kExitOk : kExitUndecided;
    }
    const auto rep = bounds_check(sol);
    emit(g, json{{"solution", to_json(sol, g.digits)}, {"convergence", to_json(rep)}});
    return rep.all_certified() ? kExitOk : kExitVerifyFail;
}

int run_construct(const GlobalOptions& g, const std::string& epsilon,
                  const std::string& lambda, std::size_t n, bool paper,
                  std::int64_t t1, const std::string& eta,
                  std::optional<std::int64_t> head, std::size_t superblocks,
                  const std::string& out_path) {
    ConstructionParams params;
    params.epsilon = parse_rational(epsilon);
    params.lambda = parse_rational(lambda);
    params.precision = std::max<long>(g.precision, 256);
    if (paper) {
        params = derive_constants(params.epsilon, params.lambda, params.precision);
    } else {
        params.n = n;
    }
    params.t1 = t1;
    if (!eta.empty()) params.eta = parse_rational(eta);
    params.head_length = head;
    const auto c = construct_extremal(params, superblocks);

    json plans = json::array();
    for (const auto& p : c.plans) plans.push_back(to_json(p));
    json doc{{"epsilon", params.epsilon.get_str()},
             {"lambda", params.lambda.get_str()},
             {"n", params.n},
             {"t1", params.t1},
             {"superblocks", superblocks},
             {"length", c.prefix.size()},
             {"head_length",
              params.head_length ? *params.head_length : c.plans[0].t[params.n]},
             {"superblock_ends", c.superblock_ends},
             {"plans", std::move(plans)}};
    if (!out_path.empty()) {
        std::ofstream os(out_path);
        for (std::int64_t a : c.prefix) os << a << "\n";
        doc["written"] = out_path;
    } else {
        doc["prefix"] = c.prefix;
    }
    emit(g, doc);
    return kExitOk;
}

int run_verify_construction(const GlobalOptions& g, const std::string& file,
                            std::vector<std::int64_t> checkpoints,
                            const std::string& epsilon, const std::string& threshold,
                            std::size_t body_start, std::vector<std::size_t> samples) {
    const PartialQuotients prefix = read_quotients_file(file);
    const mpq_class eps = parse_rational(epsilon);
    if (checkpoints.empty() && !prefix.empty()) {
        checkpoints.push_back(static_cast<std::int64_t>(prefix.size()));
    }
    const auto phi = verify_phi_bound(prefix, checkpoints, eps,
                                      std::max<long>(g.precision, 256));

    PartialQuotients body(prefix.begin() + static_cast<std::ptrdiff_t>(body_start),
                          prefix.end());
    if (samples.empty()) {
        for (std::size_t t = 1; t < body.size(); ++t) {
            if (body[t - 1] == 1 && body[t] > 1) samples.push_back(t);
        }
        if (!body.empty() && body.back() == 1) samples.push_back(body.size());
    }
    const auto decay = verify_ratio_decay(body, samples, parse_rational(threshold));

    emit(g, json{{"file", file},
                 {"body_start", body_start},
                 {"phi_bound", to_json(phi, g.digits)},
                 {"ratio_decay", to_json(decay)}});

    bool undecided = false;
    for (const auto& cp : phi.checkpoints) {
        if (cp.all_below == Decision::no) return kExitVerifyFail;
        if (cp.all_below == Decision::undecided) undecided = true;
    }
    if (!decay.all_below_threshold()) return kExitVerifyFail;
    for (bool b : decay.non_increasing) {
        if (!b) return kExitVerifyFail;
    }
    return undecided ? kExitUndecided : kExitOk;
}

int run_verify_all(const GlobalOptions& g) {
    verify::SuiteOptions opts{g.seed, g.trials, g.precision};
    const auto results = verify::run_all(opts);
    json docs = json::array();
    std::size_t checks = 0, failures = 0, undecided = 0;
    for (const auto& r : results) {
        docs.push_back(to_json(r));
        checks += r.checks;
        failures += r.failures;
        undecided += r.undecided;
    }
    emit(g, json{{"seed", g.seed},
                 {"trials", g.trials},
                 {"suites", std::move(docs)},
                 {"total_checks", checks},
                 {"total_failures", failures},
                 {"total_undecided", undecided}});
    return suite_exit(results);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arithmetic for the Minkowski question-mark function, "
                 "continuants and the equalized min-max construction"};
    app.require_subcommand(1);
    app.fallthrough();  // global options accepted after the subcommand
    app.set_config("--config");

    GlobalOptions g;
    app.add_option("--precision", g.precision, "working precision in bits")
        ->capture_default_str();
    app.add_option("--seed", g.seed, "seed for randomized trial sets")
        ->capture_default_str();
    app.add_option("--trials", g.trials, "trial count for randomized suites")
        ->capture_default_str();
    app.add_option("--format", g.format, "output format: json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    app.add_option("--digits", g.digits, "decimal digits in approximations")
        ->capture_default_str();

    std::string qm_x;
    auto* qm = app.add_subcommand("qm", "evaluate ?(x) exactly for a rational x");
    qm->add_option("x", qm_x, "rational in (0,1], e.g. 7/10")->required();

    std::string expand_x;
    auto* expand_cmd =
        app.add_subcommand("expand", "both continued-fraction representations");
    expand_cmd->add_option("x", expand_x, "rational in (0,1]")->required();

    std::vector<std::int64_t> cont_seq;
    std::string cont_file;
    std::size_t cont_cut = 0;
    auto* cont = app.add_subcommand("continuant", "continuant of a prefix");
    cont->add_option("seq", cont_seq, "partial quotients");
    cont->add_option("--file", cont_file, "newline-separated quotients file");
    auto* cont_cut_opt =
        cont->add_option("--cut", cont_cut, "also evaluate the split identity here");

    std::int64_t level_n = 1, level_cap = kDefaultLevelCap;
    std::string level_at;
    auto* level = app.add_subcommand("level", "Stern-Brocot level enumeration");
    level->add_option("n", level_n, "level index")->required();
    level->add_option("--cap", level_cap, "enumeration cap")->capture_default_str();
    level->add_option("--at", level_at, "also report the empirical distribution at x");

    std::vector<std::int64_t> diag_seq;
    std::string diag_file, diag_ratio = "1/2";
    std::size_t diag_from = 1;
    std::int64_t diag_threshold = 12;
    std::size_t diag_increment = 0;
    auto* diag = app.add_subcommand("diagnose", "phi1 series and lemma scans");
    diag->add_option("seq", diag_seq, "partial quotients");
    diag->add_option("--file", diag_file, "quotients file");
    diag->add_option("--ratio-c", diag_ratio,
                     "threshold for the exact ratio trichotomy, or 'none'")
        ->capture_default_str();
    diag->add_option("--from", diag_from, "first index of the positivity scan")
        ->capture_default_str();
    diag->add_option("--large-threshold", diag_threshold,
                     "alphabet threshold of the 3w scan")
        ->capture_default_str();
    auto* diag_inc_opt = diag->add_option(
        "--increment-at", diag_increment, "report the increment bounds at this index");

    std::vector<std::int64_t> blk_seq;
    std::string blk_file, blk_lambda = "1/2", blk_eps = "1/2";
    std::int64_t blk_t0 = 0, blk_count = 1;
    auto* blk = app.add_subcommand("blocks", "block decomposition diagnostics");
    blk->add_option("seq", blk_seq, "partial quotients");
    blk->add_option("--file", blk_file, "quotients file");
    blk->add_option("--t0", blk_t0, "prefix length t0")->required();
    blk->add_option("--lambda", blk_lambda, "grid ratio in (0,1)")
        ->capture_default_str();
    blk->add_option("--count", blk_count, "number of blocks N")->required();
    blk->add_option("--epsilon", blk_eps, "epsilon of the deviation threshold")
        ->capture_default_str();

    std::vector<std::int64_t> elim_seq;
    std::string elim_file, elim_out;
    std::int64_t elim_threshold = 12;
    auto* elim = app.add_subcommand("eliminate", "small-element elimination");
    elim->add_option("seq", elim_seq, "partial quotients");
    elim->add_option("--file", elim_file, "quotients file");
    elim->add_option("--threshold", elim_threshold, "target alphabet threshold")
        ->capture_default_str();
    elim->add_option("--out", elim_out, "write the rewritten prefix here");

    std::string bv_s, bv_alpha = "3", bv_beta = "4", bv_step = "1/4";
    auto* bv = app.add_subcommand("bounds-verify",
                                  "continuant lower bound and min-product checks");
    bv->add_option("--s", bv_s, "single-instance sum (enables instance mode)");
    bv->add_option("--alpha", bv_alpha, "instance alpha")->capture_default_str();
    bv->add_option("--beta", bv_beta, "instance beta")->capture_default_str();
    bv->add_option("--step", bv_step, "grid step")->capture_default_str();

    std::size_t mm_n = 2;
    std::string mm_lambda = "1/4", mm_eta = "1";
    auto* mm = app.add_subcommand("minimax", "equalized min-max solver");
    mm->require_subcommand(1);
    auto* mm_solve = mm->add_subcommand("solve", "equalizing recurrence");
    auto* mm_oracle = mm->add_subcommand("oracle", "brute-force search, N <= 4");
    auto* mm_bounds = mm->add_subcommand("bounds", "convergence certificates");
    for (auto* sub : {mm_solve, mm_oracle, mm_bounds}) {
        sub->add_option("--n", mm_n, "number of terms N")->capture_default_str();
        sub->add_option("--lambda", mm_lambda, "ratio in (0,1)")->capture_default_str();
        sub->add_option("--eta", mm_eta, "eta > 0")->capture_default_str();
    }

    std::string con_eps = "1/2", con_lambda = "3/4", con_eta, con_out;
    std::size_t con_n = 6, con_superblocks = 1;
    bool con_paper = false;
    std::int64_t con_t1 = 327680;
    std::int64_t con_head = -1;
    auto* con = app.add_subcommand("construct", "emit the extremal prefix");
    con->add_option("--epsilon", con_eps, "epsilon in (0,1)")->capture_default_str();
    con->add_option("--lambda", con_lambda, "rational lambda in (0,1)")
        ->capture_default_str();
    con->add_option("--n", con_n, "blocks per superblock (override mode)")
        ->capture_default_str();
    con->add_flag("--paper", con_paper, "derive M, P, N from the paper formulas");
    con->add_option("--t1", con_t1, "first superblock scale T1")->capture_default_str();
    con->add_option("--eta", con_eta, "d-sequence normalizer (default 1/alpha)");
    auto* con_head_opt = con->add_option(
        "--head", con_head, "all-ones head length (default: t_N of the first grid)");
    con->add_option("--superblocks", con_superblocks, "how many superblocks")
        ->capture_default_str();
    con->add_option("--out", con_out, "write quotients here, one per line");

    std::string vc_file, vc_eps = "1/2", vc_threshold = "1/2";
    std::vector<std::int64_t> vc_checkpoints;
    std::vector<std::size_t> vc_samples;
    std::size_t vc_body = 0;
    auto* vc = app.add_subcommand("verify-construction",
                                  "certificate report for an emitted prefix");
    vc->add_option("--file", vc_file, "quotients file")->required();
    vc->add_option("--checkpoints", vc_checkpoints,
                   "phi-bound checkpoints (default: prefix end)");
    vc->add_option("--epsilon", vc_eps, "epsilon of the phi budget")
        ->capture_default_str();
    vc->add_option("--threshold", vc_threshold, "ratio decay threshold")
        ->capture_default_str();
    vc->add_option("--body-start", vc_body, "head length to skip for the decay check")
        ->capture_default_str();
    vc->add_option("--samples", vc_samples,
                   "decay sample indices (default: pattern ends)");

    auto* va = app.add_subcommand("verify-all", "run every lemma suite");
    (void)va;

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (*qm) return run_qm(g, qm_x);
        if (*expand_cmd) return run_expand(g, expand_x);
        if (*cont) {
            return run_continuant(g, gather_sequence(cont_seq, cont_file),
                                  cont_cut_opt->count()
                                      ? std::optional<std::size_t>(cont_cut)
                                      : std::nullopt);
        }
        if (*level) return run_level(g, level_n, level_cap, level_at);
        if (*diag) {
            return run_diagnose(g, gather_sequence(diag_seq, diag_file), diag_ratio,
                                diag_from, diag_threshold,
                                diag_inc_opt->count()
                                    ? std::optional<std::size_t>(diag_increment)
                                    : std::nullopt);
        }
        if (*blk) {
            return run_blocks(g, gather_sequence(blk_seq, blk_file), blk_t0,
                              blk_lambda, blk_count, blk_eps);
        }
        if (*elim) {
            return run_eliminate(g, gather_sequence(elim_seq, elim_file),
                                 elim_threshold, elim_out);
        }
        if (*bv) return run_bounds_verify(g, bv_s, bv_alpha, bv_beta, bv_step);
        if (*mm) {
            const std::string mode = *mm_solve    ? "solve"
                                     : *mm_oracle ? "oracle"
                                                  : "bounds";
            return run_minimax(g, mode, mm_n, mm_lambda, mm_eta);
        }
        if (*con) {
            return run_construct(g, con_eps, con_lambda, con_n, con_paper, con_t1,
                                 con_eta,
                                 con_head_opt->count()
                                     ? std::optional<std::int64_t>(con_head)
                                     : std::nullopt,
                                 con_superblocks, con_out);
        }
        if (*vc) {
            return run_verify_construction(g, vc_file, vc_checkpoints, vc_eps,
                                           vc_threshold, vc_body, vc_samples);
        }
        return run_verify_all(g);
    } catch (const undecided_error& e) {
        std::cerr << "undecided: " << e.what() << "\n";
        return kExitUndecided;
    } catch (const infeasible_error& e) {
        std::cerr << "infeasible: " << e.what() << " (constraint: " << e.constraint()
                  << ", try T >= " << e.suggested_scale() << ")\n";
        return kExitVerifyFail;
    } catch (const resource_limit_error& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "out of range: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitUsage;
    }
}
