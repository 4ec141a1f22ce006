#pragma once

#include "berkpatch/json_io.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace berk {

struct CriterionOutcome {
    std::string name;
    bool pass{false};
    std::string detail; // empty on pass, first failure otherwise
    long millis{0};
};

struct SuiteReport {
    std::vector<CriterionOutcome> criteria;
    bool pass{false};
};

// Runs one command and returns (exit code, parsed response body). The golden-formula
// criterion goes through this hook so the acceptance binary can route it through the
// real executable while the in-process `suite` command stays self-contained.
using CommandRunner = std::function<std::pair<int, Json>(const std::string& command, const Json& request)>;

// The eight release criteria, executed in order. Each runs to its first violation;
// a throw inside a criterion is recorded as its failure, never propagated.
SuiteReport run_acceptance_suite(std::uint64_t seed, long membership_samples, const CommandRunner& runner);

// Timing is left out of the JSON form so the `suite` command output stays
// deterministic for a fixed seed.
Json suite_report_to_json(const SuiteReport& rep);

} // namespace berk
