#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "tcpkit/budget.hpp"
#include "tcpkit/tensor.hpp"

namespace tcpkit {

// Euclidean projection onto {x >= 0, sum x = 1} (sort-and-threshold).
Vec proj_simplex(Vec v);

// Rational grid {k/g : k in Z^r_+, sum k = g} on the (r-1)-simplex.
// Visits points in lexicographic order of the composition (k_1,...,k_r).
std::int64_t simplex_grid_count(int r, int g);
void for_each_simplex_grid_point(int r, int g, const std::function<void(const Vec&)>& fn);

// max over the simplex of the monomial prod x_i^{alpha_i} with sum alpha =
// deg: prod (alpha_i / deg)^{alpha_i}.
double monomial_simplex_max(std::span<const int> alpha, int deg);

// Certified bounds used to close the gap between "no witness found" and
// "no witness exists".
//
// row_lower_bounds: for each i, a value L_i with (A x^{m-1})_i >= L_i for
// every simplex point x (negative entries at their monomial maxima).
Vec row_lower_bounds(const Tensor& a);
// poly_lower_bound: L with A x^m >= L on the whole simplex.
double poly_lower_bound(const Tensor& a);
// Lipschitz-type bound: |(A x^{m-1})_i - (A y^{m-1})_i| and |Ax^m - Ay^m|
// are at most these constants times ||x - y||_inf on the simplex.
double map_lipschitz_inf(const Tensor& a);
double poly_lipschitz_inf(const Tensor& a);

// Projected gradient descent with Armijo backtracking on the simplex.
struct PgdResult {
    Vec x;
    double value = 0.0;
    long long evals = 0; // objective + gradient evaluations
    int iters = 0;
};

PgdResult pgd_minimize(const std::function<double(const Vec&)>& f,
                       const std::function<Vec(const Vec&)>& grad, Vec x0, int max_iters);

// Best found minimizer of A x^m over the unit simplex: deterministic grid
// seeding, multistart projected descent, Newton polish on the active
// support. lambda is the common value of (A x^{m-1})_k over the support
// (stationarity); kkt_support is max_k in support |(A x^{m-1})_k - lambda|,
// kkt_off the off-support one-sided deficit (reported, not driven to zero).
struct MinReport {
    Vec minimizer;
    double min_value = 0.0;
    double lambda = 0.0;
    double kkt_support = 0.0;
    double kkt_off = 0.0;
    int starts = 0;
    long long evals = 0;
};

MinReport simplex_minimize(const Tensor& a, const SearchBudget& budget = {});

// Exact global minimum of z^T A z over the simplex for order-2 symmetric
// tensors, by enumerating the stationary KKT system of every face. `exact`
// drops when a face system is singular (flat face); the value is still a
// valid upper bound then.
struct QuadSimplexMin {
    double value = 0.0;
    Vec argmin;
    bool exact = true;
};

std::optional<QuadSimplexMin> simplex_min_exact_m2(const Tensor& a);

} // namespace tcpkit
