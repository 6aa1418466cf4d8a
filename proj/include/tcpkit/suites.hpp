#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tcpkit/io.hpp"

namespace tcpkit {

// Property batteries exercising the equivalence theorems end to end on
// generated instances. Each battery emits one record per trial (with the
// generator spec and seed needed to replay it in isolation) plus a summary.
struct SuiteOptions {
    int trials = 200;
    std::uint64_t seed = 42;
    long long budget = 2'000'000;
};

struct SuiteOutcome {
    std::string name;
    bool passed = false;
    Json summary;
    std::vector<std::string> lines; // one JSON record per line, trial order
};

// thm31, thm32, thm33, cor35, prop21, prop22, m2oracle, kernels
std::vector<std::string> suite_names();

SuiteOutcome run_suite(const std::string& name, const SuiteOptions& opt);

// Runs every battery once, in order; prop21 aggregates over the others.
std::vector<SuiteOutcome> run_all_suites(const SuiteOptions& opt);

} // namespace tcpkit
