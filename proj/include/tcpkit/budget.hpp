#pragma once

namespace tcpkit {

// Evaluation budget for the search-based routines. One unit is one kernel
// invocation (map_apply / poly_eval / map_jacobian). Budgets are split
// deterministically across independent work items (subsets, starts) before
// any work begins, so parallel and serial runs consume identical counts.
struct SearchBudget {
    long long max_evals = 2'000'000;
};

} // namespace tcpkit
