#include "tcpkit/classify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "tcpkit/errors.hpp"
#include "tcpkit/lp.hpp"

namespace tcpkit {

std::string to_string(Status s) {
    switch (s) {
    case Status::Holds: return "holds";
    case Status::Fails: return "fails";
    default: return "unknown";
    }
}

NecessaryCheckResult diag_check(const Tensor& a, bool strict) {
    for (int i = 0; i < a.dim(); ++i) {
        const double d = a.diagonal_entry(i);
        if (strict ? !(d > 0.0) : d < 0.0) return {false, i + 1};
    }
    return {true, std::nullopt};
}

NecessaryCheckResult rowsum_check(const Tensor& a, bool strict) {
    const Vec sums = map_apply(a, Vec(a.dim(), 1.0));
    for (double s : sums)
        if (strict ? s > 0.0 : s >= 0.0) return {true, std::nullopt};
    return {false, 1};
}

std::vector<std::uint64_t> subset_sweep_order(int n) {
    std::vector<std::uint64_t> masks;
    masks.reserve((1ull << n) - 1);
    for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) masks.push_back(mask);
    std::sort(masks.begin(), masks.end(), [](std::uint64_t x, std::uint64_t y) {
        const int px = std::popcount(x), py = std::popcount(y);
        return px != py ? px < py : x < y;
    });
    return masks;
}

namespace {

constexpr double kWitnessEps = 1e-12;

bool nonneg_nonzero(const Vec& x) {
    bool nonzero = false;
    for (double v : x) {
        if (v < -kWitnessEps) return false;
        if (v > kWitnessEps) nonzero = true;
    }
    return nonzero;
}

} // namespace

bool refutes_semi_positive(const Tensor& a, const Vec& x, double tol) {
    if (static_cast<int>(x.size()) != a.dim() || !all_finite(x) || !nonneg_nonzero(x)) return false;
    const Vec y = map_apply(a, x);
    for (int i = 0; i < a.dim(); ++i)
        if (x[i] > kWitnessEps && !(y[i] < -tol / 2)) return false;
    return true;
}

bool refutes_strictly_semi_positive(const Tensor& a, const Vec& x, double tol) {
    if (static_cast<int>(x.size()) != a.dim() || !all_finite(x) || !nonneg_nonzero(x)) return false;
    const Vec y = map_apply(a, x);
    for (int i = 0; i < a.dim(); ++i)
        if (x[i] > kWitnessEps && !(y[i] <= tol / 2)) return false;
    return true;
}

bool refutes_copositive(const Tensor& a, const Vec& x, double tol) {
    if (static_cast<int>(x.size()) != a.dim() || !all_finite(x) || !nonneg_nonzero(x)) return false;
    return poly_eval(a, x) < -tol / 2;
}

bool refutes_strictly_copositive(const Tensor& a, const Vec& x, double tol) {
    if (static_cast<int>(x.size()) != a.dim() || !all_finite(x) || !nonneg_nonzero(x)) return false;
    return poly_eval(a, x) <= tol / 2;
}

// ---------------------------------------------------------------------------
// Per-subset feasibility search

namespace {

Matrix as_matrix(const Tensor& t) {
    Matrix m(t.dim(), t.dim());
    for (std::int64_t f = 0; f < t.size(); ++f) m.a[f] = t[f];
    return m;
}

// Smoothed max descent: log-sum-exp over the component map with the
// temperature annealed upward, so early stages see a wide basin and late
// stages track the true max.
struct LseDescent {
    const Tensor& b;
    long long evals = 0;

    double g_true(const Vec& z) {
        ++evals;
        return max_component(map_apply(b, z));
    }

    // f/grad lambdas count their own kernel calls into `evals`; the PgdResult
    // counters are not added on top.
    Vec run(Vec z0) {
        Vec z = std::move(z0);
        for (const double tau : {10.0, 100.0, 1000.0}) {
            auto f = [this, tau](const Vec& p) {
                ++evals;
                const Vec y = map_apply(b, p);
                const double ymax = max_component(y);
                double s = 0.0;
                for (double v : y) s += std::exp(tau * (v - ymax));
                return ymax + std::log(s) / tau;
            };
            auto grad = [this, tau](const Vec& p) {
                const Vec y = map_apply(b, p);
                const Matrix j = map_jacobian(b, p);
                evals += 2;
                const double ymax = max_component(y);
                Vec w(y.size());
                double s = 0.0;
                for (std::size_t k = 0; k < y.size(); ++k) {
                    w[k] = std::exp(tau * (y[k] - ymax));
                    s += w[k];
                }
                for (double& v : w) v /= s;
                Vec g(p.size(), 0.0);
                for (int k = 0; k < j.rows; ++k)
                    for (int c = 0; c < j.cols; ++c) g[c] += w[k] * j(k, c);
                return g;
            };
            PgdResult r = pgd_minimize(f, grad, z, 60);
            z = r.x;
        }
        return z;
    }
};

} // namespace

FeasibilityResult feasibility_search(const Tensor& a, const IndexSet& n, SearchMode mode,
                                     const SearchBudget& budget, const Tolerances& tol) {
    if (n.dim() != a.dim()) throw Error("feasibility_search: index set does not match tensor");
    if (budget.max_evals <= 0) throw Error("feasibility_search: budget must be positive");

    const Tensor b = principal_subtensor(a, n);
    const int r = n.size();
    const int m = a.order();

    FeasibilityResult res;

    // Order 2: exact LP decision, never Unknown.
    if (m == 2) {
        const MaxCompMin opt = lp_min_max_component(as_matrix(b));
        res.best_value = opt.value;
        res.point = opt.point;
        res.evals = 1;
        if (mode == SearchMode::StrictNeg)
            res.feasible = opt.value < -tol.strict_tol ? Feasible::Yes : Feasible::No;
        else
            res.feasible = opt.value <= tol.zero_tol ? Feasible::Yes : Feasible::No;
        return res;
    }

    long long evals = 0;
    double best = std::numeric_limits<double>::infinity();
    Vec best_pt;
    const auto consider = [&](const Vec& z, double val) {
        if (val < best) {
            best = val;
            best_pt = z;
        }
    };
    const auto decide_yes = [&]() {
        return mode == SearchMode::StrictNeg ? best < -tol.strict_tol : best <= tol.zero_tol;
    };

    // Singleton: the simplex is one point and the value is exact.
    if (r == 1) {
        const double d = b[0];
        res.best_value = d;
        res.point = {1.0};
        if (mode == SearchMode::StrictNeg)
            res.feasible = d < -tol.strict_tol ? Feasible::Yes
                         : d >= -tol.zero_tol  ? Feasible::No
                                               : Feasible::Unknown;
        else
            res.feasible = d <= tol.zero_tol ? Feasible::Yes : Feasible::No;
        return res;
    }

    // Term-sign certificates: a row that can never go negative settles
    // StrictNeg on the whole closed simplex; with a positive diagonal it
    // settles NonPos for full-support points (boundary supports belong to
    // smaller subsets of the sweep).
    const Vec row_lb = row_lower_bounds(b);
    const double term_lb = max_component(row_lb);
    if (mode == SearchMode::StrictNeg && term_lb >= -tol.zero_tol) {
        res.feasible = Feasible::No;
        res.best_value = term_lb;
        res.point = Vec(r, 1.0 / r);
        return res;
    }
    if (mode == SearchMode::NonPos) {
        const std::int64_t row_len = b.size() / r;
        for (int i = 0; i < r; ++i) {
            if (!(b.diagonal_entry(i) > tol.zero_tol)) continue;
            bool nonneg = true;
            for (std::int64_t t = 0; t < row_len && nonneg; ++t)
                if (b[i * row_len + t] < 0.0) nonneg = false;
            if (nonneg) {
                res.feasible = Feasible::No;
                res.best_value = b.diagonal_entry(i);
                res.point = Vec(r, 1.0 / r);
                return res;
            }
        }
    }

    const double lip = map_lipschitz_inf(b);
    const auto lower_bound_at = [&](double grid_min, int g) {
        return std::max(grid_min - lip / g, term_lb);
    };
    const auto decide_no = [&](double lb) {
        return mode == SearchMode::StrictNeg ? lb >= -tol.zero_tol : lb > tol.zero_tol;
    };

    const auto g_of = [&](const Vec& z) {
        ++evals;
        return max_component(map_apply(b, z));
    };

    int g = r <= 3 ? 16 : (r == 4 ? 12 : 8);
    while (g > 2 && simplex_grid_count(r, g) > budget.max_evals / 2) --g;

    bool decided = false;
    bool descent_done = false;
    double lb = -std::numeric_limits<double>::infinity();
    while (true) {
        double grid_min = std::numeric_limits<double>::infinity();
        Vec grid_arg;
        for_each_simplex_grid_point(r, g, [&](const Vec& p) {
            const double v = g_of(p);
            if (v < grid_min) {
                grid_min = v;
                grid_arg = p;
            }
        });
        consider(grid_arg, grid_min);
        lb = lower_bound_at(grid_min, g);
        if (decide_yes() || decide_no(lb)) {
            decided = true;
            break;
        }
        if (!descent_done) {
            // one polish pass; improves the witness side cheaply
            LseDescent desc{b};
            Vec z = desc.run(best_pt);
            const double v = g_of(z);
            evals += desc.evals;
            consider(z, v);
            descent_done = true;
            if (decide_yes()) {
                decided = true;
                break;
            }
        }
        const std::int64_t next_cost = simplex_grid_count(r, 2 * g);
        if (next_cost > budget.max_evals - evals) break;
        g *= 2;
    }

    res.best_value = best;
    res.point = best_pt;
    res.evals = evals;
    if (decided && decide_yes())
        res.feasible = Feasible::Yes;
    else if (decided && decide_no(lb))
        res.feasible = Feasible::No;
    else
        res.feasible = Feasible::Unknown;
    return res;
}

// ---------------------------------------------------------------------------
// Classifiers

namespace {

struct SweepOutcome {
    Status status;
    std::optional<Vec> witness;
    std::optional<std::vector<int>> witness_set;
    double best_value = 0.0;
    long long evals = 0;
};

SweepOutcome subset_sweep(const Tensor& a, SearchMode mode, const SearchBudget& budget,
                          const Tolerances& tol) {
    const int n = a.dim();
    const std::vector<std::uint64_t> masks = subset_sweep_order(n);
    const long long per =
        std::max<long long>(budget.max_evals / static_cast<long long>(masks.size()), 512);

    std::vector<FeasibilityResult> results(masks.size());
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < static_cast<int>(masks.size()); ++i) {
        const IndexSet ns = IndexSet::from_mask(masks[i], n);
        results[i] = feasibility_search(a, ns, mode, SearchBudget{per}, tol);
    }

    SweepOutcome out{Status::Holds, std::nullopt, std::nullopt, 0.0, 0};
    bool any_unknown = false;
    for (std::size_t i = 0; i < masks.size(); ++i) {
        out.evals += results[i].evals;
        if (out.witness) continue; // first Yes already claimed; keep summing evals
        if (results[i].feasible == Feasible::Yes) {
            const IndexSet ns = IndexSet::from_mask(masks[i], n);
            out.witness = embed(results[i].point, ns);
            out.witness_set = ns.members();
            out.best_value = results[i].best_value;
            out.status = Status::Fails;
        } else if (results[i].feasible == Feasible::Unknown) {
            any_unknown = true;
        }
    }
    if (out.status != Status::Fails && any_unknown) out.status = Status::Unknown;
    return out;
}

} // namespace

Verdict classify_semi_positive(const Tensor& a, const SearchBudget& budget, const Tolerances& tol) {
    Verdict v;
    const int n = a.dim();

    for (int i = 0; i < n; ++i) {
        if (a.diagonal_entry(i) < -tol.strict_tol) {
            v.status = Status::Fails;
            v.witness = unit_vector(i, n);
            v.witness_set = std::vector<int>{i + 1};
            v.note = "negative diagonal entry";
            v.evals = 1;
            return v;
        }
    }
    {
        const Vec u(n, 1.0 / n);
        const Vec y = map_apply(a, u);
        ++v.evals;
        if (max_component(y) < -tol.strict_tol) {
            v.status = Status::Fails;
            v.witness = u;
            v.witness_set = IndexSet::full(n).members();
            v.note = "all row sums negative";
            return v;
        }
    }

    SweepOutcome sweep = subset_sweep(a, SearchMode::StrictNeg, budget, tol);
    v.evals += sweep.evals;
    v.status = sweep.status;
    if (sweep.status == Status::Fails) {
        if (refutes_semi_positive(a, *sweep.witness, tol.strict_tol)) {
            v.witness = std::move(sweep.witness);
            v.witness_set = std::move(sweep.witness_set);
            v.note = "subset system feasible";
        } else {
            v.status = Status::Unknown;
            v.note = "witness failed revalidation";
        }
    }
    return v;
}

Verdict classify_strictly_semi_positive(const Tensor& a, const SearchBudget& budget,
                                        const Tolerances& tol) {
    Verdict v;
    const int n = a.dim();

    for (int i = 0; i < n; ++i) {
        if (a.diagonal_entry(i) <= tol.zero_tol) {
            v.status = Status::Fails;
            v.witness = unit_vector(i, n);
            v.witness_set = std::vector<int>{i + 1};
            v.note = "non-positive diagonal entry";
            v.evals = 1;
            return v;
        }
    }
    {
        const Vec u(n, 1.0 / n);
        const Vec y = map_apply(a, u);
        ++v.evals;
        if (max_component(y) <= tol.zero_tol) {
            v.status = Status::Fails;
            v.witness = u;
            v.witness_set = IndexSet::full(n).members();
            v.note = "no positive row sum";
            return v;
        }
    }

    SweepOutcome sweep = subset_sweep(a, SearchMode::NonPos, budget, tol);
    v.evals += sweep.evals;
    v.status = sweep.status;
    if (sweep.status == Status::Fails) {
        if (refutes_strictly_semi_positive(a, *sweep.witness, tol.strict_tol)) {
            v.witness = std::move(sweep.witness);
            v.witness_set = std::move(sweep.witness_set);
            v.note = "subset system feasible";
        } else {
            v.status = Status::Unknown;
            v.note = "witness failed revalidation";
        }
    }
    return v;
}

Verdict classify_copositive(const Tensor& a, bool strict, const SearchBudget& budget,
                            const Tolerances& tol) {
    Verdict v;
    const bool sym = is_symmetric(a);
    const Tensor s = sym ? a : symmetrize(a);
    const int m = s.order();

    MinReport rep = simplex_minimize(s, SearchBudget{std::max<long long>(budget.max_evals / 2, 1)});
    v.evals += rep.evals;
    const double val = rep.min_value;

    if (val < -tol.strict_tol) {
        const bool ok = strict ? refutes_strictly_copositive(s, rep.minimizer, tol.strict_tol)
                               : refutes_copositive(s, rep.minimizer, tol.strict_tol);
        ++v.evals;
        if (ok) {
            v.status = Status::Fails;
            v.witness = rep.minimizer;
            v.certificate = std::move(rep);
            v.note = "negative simplex minimum";
            return v;
        }
    } else if (val > tol.strict_tol) {
        v.status = Status::Holds;
        v.certificate = std::move(rep);
        v.note = "positive simplex minimum";
        return v;
    }

    // ambiguity band: |min| <= strict_tol (or a failed revalidation above)
    if (m == 2) {
        const auto exact = simplex_min_exact_m2(s);
        if (exact && exact->exact) {
            if (!strict) {
                if (exact->value >= -tol.zero_tol) {
                    v.status = Status::Holds;
                    v.certificate = std::move(rep);
                    v.note = "exact order-2 minimum nonnegative";
                } else if (refutes_copositive(s, exact->argmin, tol.strict_tol)) {
                    v.status = Status::Fails;
                    v.witness = exact->argmin;
                    v.certificate = std::move(rep);
                    v.note = "exact order-2 minimum negative";
                } else {
                    v.status = Status::Unknown;
                    v.note = "borderline negative minimum";
                }
            } else {
                if (exact->value > tol.zero_tol) {
                    v.status = Status::Holds;
                    v.certificate = std::move(rep);
                    v.note = "exact order-2 minimum positive";
                } else {
                    v.status = Status::Fails;
                    v.witness = exact->argmin;
                    v.certificate = std::move(rep);
                    v.note = "exact order-2 minimum non-positive";
                }
            }
            ++v.evals;
            return v;
        }
    }

    if (!strict) {
        // certified lower bound on A x^m over the simplex
        double lb = poly_lower_bound(s);
        if (lb < -tol.zero_tol) {
            const double lip = poly_lipschitz_inf(s);
            const int n = s.dim();
            int g = n <= 3 ? 16 : 8;
            long long remaining = std::max<long long>(budget.max_evals / 4, 256);
            while (true) {
                const std::int64_t cost = simplex_grid_count(n, g);
                if (cost > remaining) break;
                double grid_min = std::numeric_limits<double>::infinity();
                for_each_simplex_grid_point(n, g, [&](const Vec& p) {
                    grid_min = std::min(grid_min, poly_eval(s, p));
                });
                v.evals += cost;
                remaining -= cost;
                lb = std::max(lb, grid_min - lip / g);
                if (lb >= -tol.zero_tol) break;
                g *= 2;
            }
        }
        if (lb >= -tol.zero_tol) {
            v.status = Status::Holds;
            v.certificate = std::move(rep);
            v.note = "certified nonnegative lower bound";
        } else {
            v.status = Status::Unknown;
            v.certificate = std::move(rep);
            v.note = "minimum in ambiguity band";
        }
        return v;
    }

    if (val <= 0.0 && refutes_strictly_copositive(s, rep.minimizer, tol.strict_tol)) {
        ++v.evals;
        v.status = Status::Fails;
        v.witness = rep.minimizer;
        v.certificate = std::move(rep);
        v.note = "non-positive simplex minimum";
    } else {
        v.status = Status::Unknown;
        v.certificate = std::move(rep);
        v.note = "minimum in ambiguity band";
    }
    return v;
}

} // namespace tcpkit
