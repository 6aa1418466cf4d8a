#pragma once

#include <optional>
#include <string>

#include "tcpkit/budget.hpp"
#include "tcpkit/minimize.hpp"
#include "tcpkit/tensor.hpp"

namespace tcpkit {

// Absolute tolerances on values computed at unit-sum-normalized points.
// strict_tol gates "clearly negative/positive", zero_tol gates "numerically
// zero"; the band between them is where UNKNOWN lives for m > 2.
struct Tolerances {
    double strict_tol = 1e-8;
    double zero_tol = 1e-9;
};

enum class Status { Holds, Fails, Unknown };

std::string to_string(Status s);

struct Verdict {
    Status status = Status::Unknown;
    std::optional<Vec> witness;           // present iff Fails; lives in R^n
    std::optional<std::vector<int>> witness_set; // 1-based members
    std::optional<MinReport> certificate;
    std::string note;
    long long evals = 0;
};

struct NecessaryCheckResult {
    bool passed = true;
    std::optional<int> failing_index; // 1-based, least violator
};

// Diagonal necessary condition: a_{ii...i} >= 0 (strict: > 0) for all i.
NecessaryCheckResult diag_check(const Tensor& a, bool strict);

// Row-sum necessary condition: some row sum >= 0 (strict: > 0). The row sum
// is the i-th component of A e^{m-1} at the all-ones vector.
NecessaryCheckResult rowsum_check(const Tensor& a, bool strict);

enum class SearchMode {
    StrictNeg, // system A^{|N|} (x^N)^{m-1} < 0, x^N >= 0
    NonPos,    // system A^{|N|} (x^N)^{m-1} <= 0, x^N >= 0, x^N != 0
};

enum class Feasible { Yes, No, Unknown };

// Outcome of searching one subset system on the |N|-simplex. For m = 2 the
// LP decision is exact and never Unknown. For m > 2, Yes comes from a point
// that clears the tolerance; No comes from a certified lower bound on
// g(x) = max_k (A^{|N|} x^{m-1})_k. NonPos No-certificates may be
// interior-only (no solution supported on ALL of N), which is exactly what
// the subset sweep needs, since boundary-supported solutions belong to
// smaller subsets.
struct FeasibilityResult {
    Feasible feasible = Feasible::Unknown;
    Vec point;               // best point found, in R^{|N|}
    double best_value = 0.0; // minimal achieved max-component value
    long long evals = 0;
};

FeasibilityResult feasibility_search(const Tensor& a, const IndexSet& n, SearchMode mode,
                                     const SearchBudget& budget, const Tolerances& tol = {});

// Semi-positivity via subset infeasibility: sweep all 2^n - 1 subset
// systems in increasing-cardinality, lexicographic order; first Yes wins
// (witness embedded into R^n), all No gives Holds, otherwise Unknown.
Verdict classify_semi_positive(const Tensor& a, const SearchBudget& budget = {},
                               const Tolerances& tol = {});

Verdict classify_strictly_semi_positive(const Tensor& a, const SearchBudget& budget = {},
                                        const Tolerances& tol = {});

// Sign of min A x^m over the simplex (nonsymmetric input is symmetrized;
// the polynomial is invariant). Holds/Fails on a cleared tolerance, exact
// enumeration for m = 2, certified lower bounds otherwise; honest Unknown
// in the ambiguity band.
Verdict classify_copositive(const Tensor& a, bool strict, const SearchBudget& budget = {},
                            const Tolerances& tol = {});

// Witness revalidation, used by the Fails paths and by counterexample
// construction. Margins are tol/2 per the contract that a Fails witness
// must violate the definition with slack.
bool refutes_semi_positive(const Tensor& a, const Vec& x, double tol);
bool refutes_strictly_semi_positive(const Tensor& a, const Vec& x, double tol);
bool refutes_copositive(const Tensor& a, const Vec& x, double tol);
bool refutes_strictly_copositive(const Tensor& a, const Vec& x, double tol);

// Subsets of {1..n} in the sweep order (increasing cardinality, then
// lexicographic), as bitmasks.
std::vector<std::uint64_t> subset_sweep_order(int n);

} // namespace tcpkit
