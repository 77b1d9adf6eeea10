#pragma once

#include <json.hpp>

#include "minkq/blocks.hpp"
#include "minkq/diagnostics.hpp"
#include "minkq/dyadic.hpp"
#include "minkq/extremal.hpp"
#include "minkq/interval.hpp"
#include "minkq/minimax.hpp"
#include "minkq/transforms.hpp"
#include "minkq/verify.hpp"

namespace minkq {

inline const char* to_string(Decision d) {
    switch (d) {
        case Decision::yes: return "yes";
        case Decision::no: return "no";
        default: return "undecided";
    }
}

inline const char* to_string(Ordering o) {
    switch (o) {
        case Ordering::less: return "less";
        case Ordering::equal: return "equal";
        default: return "greater";
    }
}

// Exact values are emitted as strings; `dec` fields are labeled decimal
// approximations.
inline nlohmann::json to_json(const Interval& iv, std::size_t digits = 20) {
    return {{"dec", iv.to_string(digits)},
            {"width", iv.width_d()}};
}

inline nlohmann::json to_json(const Dyadic& d, std::size_t digits = 20) {
    return {{"exact", d.to_string()}, {"dec", d.to_decimal(digits)}};
}

inline nlohmann::json to_json(const mpq_class& q) { return q.get_str(); }

inline nlohmann::json to_json(const DiagnosticSeries& s, std::size_t digits = 12) {
    nlohmann::json records = nlohmann::json::array();
    for (std::size_t t = 1; t <= s.length(); ++t) {
        nlohmann::json rec{{"t", t},
                           {"a", s.prefix()[t - 1]},
                           {"sum", s.sum(t)},
                           {"w", s.w(t)},
                           {"phi1", to_json(s.phi1(t), digits)}};
        if (const auto rc = s.ratio_class(t)) rec["ratio_class"] = to_string(*rc);
        records.push_back(std::move(rec));
    }
    nlohmann::json out{{"length", s.length()},
                       {"precision_bits", static_cast<long>(s.precision())},
                       {"records", std::move(records)}};
    if (s.ratio_threshold()) out["ratio_threshold"] = s.ratio_threshold()->get_str();
    return out;
}

inline nlohmann::json to_json(const PositivityReport& r) {
    nlohmann::json flagged = nlohmann::json::array();
    for (const auto& f : r.flagged) {
        flagged.push_back({{"t", f.t}, {"decision", to_string(f.decision)}});
    }
    return {{"all_positive", r.flagged.empty()}, {"flagged", std::move(flagged)}};
}

inline nlohmann::json to_json(const BlockDecomposition& d, std::size_t digits = 12) {
    nlohmann::json blocks = nlohmann::json::array();
    for (std::size_t i = 0; i < d.blocks.size(); ++i) {
        const auto& b = d.blocks[i];
        blocks.push_back({{"index", i + 1},
                          {"sum", b.sum},
                          {"length", b.length},
                          {"max_element", b.max_element},
                          {"max_index", b.max_index},
                          {"short_sum", b.short_sum},
                          {"c", to_json(b.c, digits)},
                          {"f", to_json(b.f, digits)},
                          {"f_prime", to_json(b.f_prime, digits)}});
    }
    nlohmann::json chain = nlohmann::json::array();
    for (const auto& c : d.chain_negative) chain.push_back(to_string(c));
    nlohmann::json dev = nlohmann::json::array();
    for (const auto& c : d.deviation_large) dev.push_back(to_string(c));
    nlohmann::json main = nlohmann::json::array();
    for (const auto& e : d.main_estimates) {
        main.push_back({{"at_index", e.at_index},
                        {"lhs", to_json(e.lhs, digits)},
                        {"rhs", to_json(e.rhs, digits)},
                        {"ratio", to_json(e.ratio, digits)}});
    }
    return {{"grid", d.grid},
            {"blocks", std::move(blocks)},
            {"chain_negative", std::move(chain)},
            {"deviation_large", std::move(dev)},
            {"max_phi_window", to_json(d.max_phi_window, digits)},
            {"max_phi_ge_t09", to_string(d.max_phi_ge_t09)},
            {"main_estimates", std::move(main)}};
}

inline nlohmann::json to_json(const EliminationTrace& t) {
    nlohmann::json passes = nlohmann::json::array();
    for (const auto& p : t.passes) {
        nlohmann::json reps = nlohmann::json::array();
        for (const auto& [s, tt] : p.replacements) reps.push_back({{"s", s}, {"t", tt}});
        nlohmann::json pass{{"value", p.value}, {"replacements", std::move(reps)}};
        if (p.unmatched_s) pass["unmatched_s"] = *p.unmatched_s;
        passes.push_back(std::move(pass));
    }
    return {{"passes", std::move(passes)},
            {"has_unmatched_tail", t.has_unmatched_tail()}};
}

inline nlohmann::json to_json(const MinimaxSolution& s, std::size_t digits = 20) {
    nlohmann::json d = nlohmann::json::array();
    for (const auto& dk : s.d) d.push_back(to_json(dk, digits));
    nlohmann::json f = nlohmann::json::array();
    for (const auto& fk : s.functionals) f.push_back(to_json(fk, digits));
    return {{"n", s.n},
            {"lambda", s.lambda.get_str()},
            {"eta", to_json(s.eta, digits)},
            {"d", std::move(d)},
            {"y_min", to_json(s.y_min, digits)},
            {"functionals", std::move(f)},
            {"equalized", to_string(s.equalized)}};
}

inline nlohmann::json to_json(const ConvergenceReport& r) {
    return {{"all_certified", r.all_certified()},
            {"flagged_upper", r.flagged_upper},
            {"flagged_difference", r.flagged_difference}};
}

inline nlohmann::json to_json(const PhiBoundReport& r, std::size_t digits = 12) {
    nlohmann::json cps = nlohmann::json::array();
    for (const auto& c : r.checkpoints) {
        cps.push_back({{"t", c.t},
                       {"all_below", to_string(c.all_below)},
                       {"max_ratio", to_json(c.max_ratio, digits)},
                       {"argmax", c.argmax},
                       {"undecided_indices", c.undecided_indices}});
    }
    return {{"checkpoints", std::move(cps)}, {"all_pass", r.all_pass()}};
}

inline nlohmann::json to_json(const RatioDecayReport& r) {
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& s : r.samples) {
        samples.push_back({{"t", s.t},
                           {"versus_threshold", to_string(s.versus_threshold)},
                           {"worst_case_point", s.worst_case_point}});
    }
    return {{"samples", std::move(samples)},
            {"non_increasing", r.non_increasing},
            {"all_below_threshold", r.all_below_threshold()}};
}

inline nlohmann::json to_json(const SuperblockPlan& p) {
    return {{"t_top", p.t_top}, {"m", p.m}, {"n", p.n}, {"t", p.t}, {"r", p.r}};
}

inline nlohmann::json to_json(const verify::SuiteResult& r) {
    return {{"suite", r.name},
            {"checks", r.checks},
            {"failures", r.failures},
            {"undecided", r.undecided},
            {"failure_examples", r.failure_examples},
            {"passed", r.passed()}};
}

}  // namespace minkq
