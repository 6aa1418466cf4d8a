#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "tcpkit/budget.hpp"
#include "tcpkit/tensor.hpp"

namespace tcpkit {

// TCP(q, A): find x >= 0 with w = q + A x^{m-1} >= 0 and x^T w = 0.
struct TcpInstance {
    Tensor a;
    Vec q;

    TcpInstance(Tensor tensor, Vec rhs);
};

struct Residuals {
    double nonneg_x = 0.0; // max(0, -min_i x_i)
    double nonneg_w = 0.0; // max(0, -min_i w_i)
    double compl_ = 0.0;   // |x^T w|
};

struct TcpSolution {
    Vec x;
    Residuals residuals;
    std::vector<int> support; // 1-based indices with x_i > tol
};

struct VerifyResult {
    bool accepted = false;
    TcpSolution solution;
};

// Computes the three residuals; accepts iff nonneg_x <= tol, nonneg_w <=
// tol and compl <= tol * (1 + |q|_inf).
VerifyResult verify_solution(const TcpInstance& inst, const Vec& x, double tol = 1e-8);

struct NewtonStats {
    long long iterations = 0;
    int starts = 0;
};

struct SolveReport {
    std::vector<TcpSolution> solutions; // deduplicated, verified
    bool complete = false;             // order-2 enumeration with no singular support
    bool continuum_suspected = false;  // two distinct solutions share a support
    bool budget_exhausted = false;
    NewtonStats stats;
    long long evals = 0;
    std::string note;
};

// Enumerates candidate supports N in sweep order. Per support, solves
// (q + A x^{m-1})_N = 0 with x = 0 off N: exact linear solve at m = 2,
// damped Newton multistart at m > 2. Keeps roots with strictly positive
// support components and feasible off-support slack, verified.
SolveReport solve_support_enum(const TcpInstance& inst, const SearchBudget& budget = {});

// Semismooth Newton with Armijo backtracking on the componentwise
// Fischer-Burmeister residual phi(a, b) = a + b - sqrt(a^2 + b^2) applied to
// (x_i, w_i). Merit zeros are exactly the TCP solutions.
SolveReport solve_fb_newton(const TcpInstance& inst, const Vec& x0, const SearchBudget& budget = {});

// Support enumeration, then Fischer-Burmeister polishing from a deterministic
// seed set if nothing verified. The solver used by the probe and the suites.
SolveReport solve_auto(const TcpInstance& inst, const SearchBudget& budget = {});

enum class CounterexampleMode { Weak, Strict };

// Builds q from a confirmed infeasibility witness supported on N:
// q_i = -(A x^{m-1})_i on N, max(0, -(A x^{m-1})_i) + 1 off N. Weak mode
// (from a strict-negativity witness) yields q > 0; Strict mode yields
// q >= 0. In both cases the witness itself solves TCP(q, A) and 0 is a
// second solution, exhibiting non-uniqueness. Throws if the witness fails
// revalidation.
Vec counterexample_q(const Tensor& a, const Vec& witness, const IndexSet& n, CounterexampleMode mode,
                     double tol = 1e-8);

struct ProbeSample {
    Vec q;
    std::string kind;
    bool solved = false;
    bool disproven = false; // complete order-2 enumeration found no solution
};

struct ProbeReport {
    int samples = 0;
    int solved = 0;
    std::vector<ProbeSample> unsolved;
};

// Samples q from a mixed family (all-positive, all-negative, mixed-sign,
// boundary zeros) and attempts each instance with both solvers. Reports
// evidence only; never claims Q-tensor status.
ProbeReport q_tensor_probe(const Tensor& a, int num_samples, std::uint64_t seed,
                           const SearchBudget& budget = {});

} // namespace tcpkit
