#pragma once

#include <functional>
#include <string>
#include <vector>

#include "apnlab/gf2m.hpp"

namespace apnlab {

// One verification check per acceptance criterion; each check carries the
// m-range its criterion is stated for and clamps the plan's range to it.
struct CheckInfo {
    std::string id;    // stable identifier C1..C11
    std::string name;  // plan-facing name
    unsigned m_lo;
    unsigned m_hi;
};

const std::vector<CheckInfo>& check_catalog();

struct VerifyPlan {
    unsigned m_lo = 3;
    unsigned m_hi = 5;
    std::vector<std::string> checks;  // empty means every check
    unsigned jobs = 0;
    // Test hook: flips one entry in every table built by table-based checks,
    // so a run with this set must fail.
    bool corrupt_tables = false;
    // Defaults to Field(m) with the smallest reduction polynomial.
    std::function<Field(unsigned)> field_factory;
};

struct CheckResult {
    std::string id;
    std::string name;
    bool ran = false;  // false when the plan range misses the criterion range
    bool pass = false;
    std::string details;
};

// Throws std::invalid_argument if the plan names an unknown check or its
// m-range intersects no requested check.
std::vector<CheckResult> run_verification(const VerifyPlan& plan);

}  // namespace apnlab
