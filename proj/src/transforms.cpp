#include "minkq/transforms.hpp"

#include <stdexcept>

namespace minkq {

std::pair<mpz_class, mpz_class> unit_shift_compare(const PartialQuotients& a,
                                                   const PartialQuotients& b,
                                                   const PartialQuotients& c,
                                                   std::int64_t m, std::int64_t p) {
    if (m < 1 || p < m) {
        throw std::invalid_argument("unit_shift_compare: need p >= m >= 1");
    }
    validate_quotients(a);
    validate_quotients(b);
    validate_quotients(c);
    for (std::size_t i = 0, j = b.size(); i < j; ++i) {
        if (b[i] != b[b.size() - 1 - i]) {
            throw std::invalid_argument("unit_shift_compare: B must be symmetric");
        }
    }
    auto build = [&](std::int64_t left, std::int64_t right) {
        PartialQuotients seq;
        seq.reserve(a.size() + b.size() + c.size() + 2);
        seq.insert(seq.end(), a.begin(), a.end());
        seq.push_back(left);
        seq.insert(seq.end(), b.begin(), b.end());
        seq.push_back(right);
        seq.insert(seq.end(), c.begin(), c.end());
        return continuant(seq);
    };
    return {build(1, p + m - 1), build(m, p)};
}

std::pair<PartialQuotients, EliminationTrace> eliminate_small(
    PartialQuotients prefix, std::int64_t threshold) {
    if (threshold < 2) {
        throw std::invalid_argument("eliminate_small: threshold must be >= 2");
    }
    validate_quotients(prefix);
    EliminationTrace trace;
    for (std::int64_t v = 2; v < threshold; ++v) {
        EliminationTrace::Pass pass;
        pass.value = v;
        std::size_t i = 0;
        while (i < prefix.size()) {
            if (prefix[i] != v) {
                ++i;
                continue;
            }
            // s found; look for the next element > 1.
            std::size_t j = i + 1;
            while (j < prefix.size() && prefix[j] == 1) ++j;
            if (j == prefix.size()) {
                pass.unmatched_s = i + 1;
                break;
            }
            prefix[i] = 1;
            prefix[j] += v - 1;
            pass.replacements.emplace_back(i + 1, j + 1);
            i = j + 1;
        }
        if (!pass.replacements.empty() || pass.unmatched_s) {
            trace.passes.push_back(std::move(pass));
        }
    }
    return {std::move(prefix), std::move(trace)};
}

}  // namespace minkq
