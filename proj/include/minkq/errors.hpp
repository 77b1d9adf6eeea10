#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace minkq {

// Enumeration caps, oracle search budgets and similar limits raise this
// instead of exhausting memory.
class resource_limit_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A planner window contains no integer point. Carries the violated
// constraint and a rough smallest feasible scale when one is known.
class infeasible_error : public std::runtime_error {
public:
    infeasible_error(const std::string& what, std::string constraint,
                     std::int64_t suggested_scale = 0)
        : std::runtime_error(what),
          constraint_(std::move(constraint)),
          suggested_scale_(suggested_scale) {}

    const std::string& constraint() const noexcept { return constraint_; }
    std::int64_t suggested_scale() const noexcept { return suggested_scale_; }

private:
    std::string constraint_;
    std::int64_t suggested_scale_;
};

// An interval comparison stayed undecided at the maximum allowed precision
// in a context where a hard answer was required (integer window extraction).
class undecided_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace minkq
