// Acceptance battery: one line per criterion, nonzero exit if any fails.
// Each battery record embeds the generator spec and seed needed to replay a
// failing trial through the CLI.

#include <chrono>
#include <cstdio>
#include <string>

#include "tcpkit/parallel.hpp"
#include "tcpkit/suites.hpp"

using namespace tcpkit;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool passed, const std::string& detail) {
    std::printf("[%s] criterion %d: %-10s %s\n", passed ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str());
    if (!passed) ++failures;
}

std::string brief(const Json& s, std::initializer_list<const char*> keys) {
    std::string out;
    for (const char* k : keys) {
        if (!s.contains(k)) continue;
        if (!out.empty()) out += ", ";
        out += std::string(k) + "=" + s.at(k).dump();
    }
    return out;
}

} // namespace

int main() {
    init_threads_from_env();
    const auto t0 = std::chrono::steady_clock::now();

    SuiteOptions opt; // 200 trials, seed 42, 2e6 evals per classify call

    const SuiteOutcome thm31 = run_suite("thm31", opt);
    report(1, "thm31", thm31.passed,
           brief(thm31.summary, {"trials", "failures", "fails_verdicts", "holds_verdicts",
                                 "unknown_verdicts"}));

    const SuiteOutcome thm32 = run_suite("thm32", opt);
    report(2, "thm32", thm32.passed,
           brief(thm32.summary, {"trials", "failures", "fails_verdicts", "holds_verdicts",
                                 "unknown_verdicts"}));

    const SuiteOutcome thm33 = run_suite("thm33", opt);
    report(3, "thm33/34", thm33.passed,
           brief(thm33.summary, {"trials", "disagreements", "unknown_rate"}));

    const SuiteOutcome cor35 = run_suite("cor35", opt);
    report(4, "cor35", cor35.passed,
           brief(cor35.summary, {"tensors", "attempts", "solved", "discarded_draws"}));

    const int p21 = thm31.summary.at("prop21_violations").get<int>() +
                    thm32.summary.at("prop21_violations").get<int>() +
                    thm33.summary.at("prop21_violations").get<int>();
    report(5, "prop21", p21 == 0, "violations=" + std::to_string(p21) + " across batteries 1-3");

    const SuiteOutcome prop22 = run_suite("prop22", opt);
    report(6, "prop22", prop22.passed,
           brief(prop22.summary, {"tensors", "violating_tensors"}));

    const SuiteOutcome oracle = run_suite("m2oracle", opt);
    report(7, "m2oracle", oracle.passed, brief(oracle.summary, {"trials", "failures"}));

    const SuiteOutcome kernels = run_suite("kernels", opt);
    report(8, "kernels", kernels.passed,
           brief(kernels.summary, {"fd_trials", "fd_failures", "pinned_ok"}));

    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%d/8 criteria passed in %.1f s\n", 8 - failures, secs);
    return failures == 0 ? 0 : 1;
}
