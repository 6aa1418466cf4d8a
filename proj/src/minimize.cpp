#include "tcpkit/minimize.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "tcpkit/errors.hpp"

namespace tcpkit {

Vec proj_simplex(Vec v) {
    const int n = static_cast<int>(v.size());
    Vec u = v;
    std::sort(u.begin(), u.end(), std::greater<double>());
    double cum = 0.0, theta = 0.0;
    for (int j = 0; j < n; ++j) {
        cum += u[j];
        const double cand = (1.0 - cum) / (j + 1);
        if (u[j] + cand > 0.0) theta = cand;
    }
    for (double& x : v) x = std::max(x + theta, 0.0);
    // kill drift: renormalize exactly onto the simplex
    double s = std::accumulate(v.begin(), v.end(), 0.0);
    if (s > 0.0)
        for (double& x : v) x /= s;
    return v;
}

std::int64_t simplex_grid_count(int r, int g) {
    // C(g + r - 1, r - 1), saturating
    long double c = 1.0L;
    for (int i = 1; i <= r - 1; ++i) c = c * (g + i) / i;
    if (c > 9e17L) return std::numeric_limits<std::int64_t>::max();
    return static_cast<std::int64_t>(c + 0.5L);
}

namespace {

void grid_recurse(int r, int g, int pos, int left, std::vector<int>& counts, Vec& point,
                  const std::function<void(const Vec&)>& fn) {
    if (pos == r - 1) {
        counts[pos] = left;
        for (int i = 0; i < r; ++i) point[i] = static_cast<double>(counts[i]) / g;
        fn(point);
        return;
    }
    for (int k = 0; k <= left; ++k) {
        counts[pos] = k;
        grid_recurse(r, g, pos + 1, left - k, counts, point, fn);
    }
}

} // namespace

void for_each_simplex_grid_point(int r, int g, const std::function<void(const Vec&)>& fn) {
    if (r == 1) {
        Vec p{1.0};
        fn(p);
        return;
    }
    std::vector<int> counts(r, 0);
    Vec point(r, 0.0);
    grid_recurse(r, g, 0, g, counts, point, fn);
}

double monomial_simplex_max(std::span<const int> alpha, int deg) {
    double v = 1.0;
    for (int a : alpha) {
        if (a == 0) continue;
        v *= std::pow(static_cast<double>(a) / deg, a);
    }
    return v;
}

Vec row_lower_bounds(const Tensor& a) {
    const int n = a.dim();
    const int m = a.order();
    const std::int64_t row_len = a.size() / n;
    Vec lb(n, 0.0);
    std::vector<int> alpha(n, 0);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::int64_t t = 0; t < row_len; ++t) {
            const double v = a[i * row_len + t];
            if (v >= 0.0) continue;
            std::fill(alpha.begin(), alpha.end(), 0);
            std::int64_t f = t;
            for (int k = 0; k < m - 1; ++k) {
                alpha[f % n]++;
                f /= n;
            }
            s += v * monomial_simplex_max(alpha, m - 1);
        }
        lb[i] = s;
    }
    return lb;
}

double poly_lower_bound(const Tensor& a) {
    const int n = a.dim();
    const int m = a.order();
    std::vector<int> alpha(n, 0);
    double s = 0.0;
    for (std::int64_t t = 0; t < a.size(); ++t) {
        const double v = a[t];
        if (v >= 0.0) continue;
        std::fill(alpha.begin(), alpha.end(), 0);
        std::int64_t f = t;
        for (int k = 0; k < m; ++k) {
            alpha[f % n]++;
            f /= n;
        }
        s += v * monomial_simplex_max(alpha, m);
    }
    return s;
}

double map_lipschitz_inf(const Tensor& a) {
    const int n = a.dim();
    const int m = a.order();
    const std::int64_t row_len = a.size() / n;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::int64_t t = 0; t < row_len; ++t) s += std::abs(a[i * row_len + t]);
        worst = std::max(worst, s);
    }
    return (m - 1) * worst;
}

double poly_lipschitz_inf(const Tensor& a) {
    double s = 0.0;
    for (std::int64_t t = 0; t < a.size(); ++t) s += std::abs(a[t]);
    return a.order() * s;
}

PgdResult pgd_minimize(const std::function<double(const Vec&)>& f,
                       const std::function<Vec(const Vec&)>& grad, Vec x0, int max_iters) {
    PgdResult res;
    Vec x = proj_simplex(std::move(x0));
    double fx = f(x);
    res.evals = 1;
    double alpha = 1.0;
    const int n = static_cast<int>(x.size());

    for (int it = 0; it < max_iters; ++it) {
        const Vec g = grad(x);
        ++res.evals;
        alpha = std::min(alpha * 2.0, 1e6);
        bool accepted = false;
        Vec best_x;
        double best_f = fx;
        while (alpha > 1e-14) {
            Vec cand(n);
            for (int i = 0; i < n; ++i) cand[i] = x[i] - alpha * g[i];
            cand = proj_simplex(std::move(cand));
            double step2 = 0.0;
            for (int i = 0; i < n; ++i) {
                const double d = cand[i] - x[i];
                step2 += d * d;
            }
            const double fc = f(cand);
            ++res.evals;
            if (fc <= fx - 1e-4 / alpha * step2) {
                accepted = true;
                best_x = std::move(cand);
                best_f = fc;
                break;
            }
            alpha *= 0.5;
        }
        ++res.iters;
        if (!accepted) break;
        double step_inf = 0.0;
        for (int i = 0; i < n; ++i) step_inf = std::max(step_inf, std::abs(best_x[i] - x[i]));
        x = std::move(best_x);
        fx = best_f;
        if (step_inf <= 1e-13) break;
    }
    res.x = std::move(x);
    res.value = fx;
    return res;
}

namespace {

constexpr double kSupportTol = 1e-9;

std::vector<int> support_of(const Vec& x, double tol = kSupportTol) {
    std::vector<int> s;
    for (int i = 0; i < static_cast<int>(x.size()); ++i)
        if (x[i] > tol) s.push_back(i + 1);
    return s;
}

// Newton iteration on the stationarity system of min B z^m over the affine
// hull of the support simplex:
//   m * (B z^{m-1}) - mu * e = 0,  sum z = 1.
// Quadratic convergence takes the PGD point down to ~1e-14 KKT residuals.
struct PolishResult {
    Vec z;
    bool ok = false;
    long long evals = 0;
};

PolishResult newton_polish(const Tensor& b, Vec z) {
    const int r = b.dim();
    const int m = b.order();
    PolishResult out;
    double mu = m * poly_eval(b, z);
    ++out.evals;
    for (int it = 0; it < 30; ++it) {
        const Vec y = map_apply(b, z);
        ++out.evals;
        Vec g(r + 1, 0.0);
        double gn = 0.0;
        for (int i = 0; i < r; ++i) {
            g[i] = m * y[i] - mu;
            gn = std::max(gn, std::abs(g[i]));
        }
        double sz = 0.0;
        for (double v : z) sz += v;
        g[r] = sz - 1.0;
        gn = std::max(gn, std::abs(g[r]));
        if (gn <= 1e-14 * (1.0 + std::abs(mu))) {
            out.ok = true;
            break;
        }
        const Matrix jb = map_jacobian(b, z);
        ++out.evals;
        Matrix big(r + 1, r + 1);
        for (int i = 0; i < r; ++i) {
            for (int k = 0; k < r; ++k) big(i, k) = m * jb(i, k);
            big(i, r) = -1.0;
            big(r, i) = 1.0;
        }
        Vec rhs(r + 1);
        for (int i = 0; i <= r; ++i) rhs[i] = -g[i];
        const auto step = lu_solve(big, rhs);
        if (!step) return out;
        bool bad = false;
        for (int i = 0; i < r; ++i) {
            z[i] += (*step)[i];
            if (!(z[i] > 1e-12)) bad = true;
        }
        mu += (*step)[r];
        if (bad || !all_finite(z)) return out;
        out.ok = true; // made at least one clean step
    }
    out.z = std::move(z);
    return out;
}

} // namespace

MinReport simplex_minimize(const Tensor& a, const SearchBudget& budget) {
    const Tensor s = is_symmetric(a) ? a : symmetrize(a);
    const int n = s.dim();

    MinReport rep;

    auto f = [&s](const Vec& x) { return poly_eval(s, x); };
    auto grad = [&s](const Vec& x) {
        Vec g = map_apply(s, x);
        for (double& v : g) v *= s.order();
        return g;
    };

    // deterministic seed set: vertices, barycenter, coarse grid
    std::vector<Vec> seeds;
    for (int i = 0; i < n; ++i) seeds.push_back(unit_vector(i, n));
    seeds.push_back(Vec(n, 1.0 / n));
    int gs = n <= 3 ? 6 : (n == 4 ? 4 : 3);
    while (gs > 1 && simplex_grid_count(n, gs) > 400) --gs;
    for_each_simplex_grid_point(n, gs, [&](const Vec& p) { seeds.push_back(p); });

    const long long max_seeds =
        std::clamp<long long>(budget.max_evals / 2000, 1, static_cast<long long>(seeds.size()));
    seeds.resize(static_cast<std::size_t>(max_seeds));
    rep.starts = static_cast<int>(seeds.size());

    std::vector<PgdResult> runs(seeds.size());
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < static_cast<int>(seeds.size()); ++i)
        runs[i] = pgd_minimize(f, grad, seeds[i], 250);

    int best = 0;
    for (int i = 0; i < static_cast<int>(runs.size()); ++i) {
        rep.evals += runs[i].evals;
        if (runs[i].value < runs[best].value - 1e-15) best = i;
    }
    Vec x = runs[best].x;
    double fx = runs[best].value;

    // polish on the fixed support
    std::vector<int> supp = support_of(x);
    if (!supp.empty()) {
        const IndexSet ns(supp, n);
        const Tensor b = principal_subtensor(s, ns);
        PolishResult pol = newton_polish(b, restrict_to(x, ns));
        rep.evals += pol.evals;
        if (pol.ok && !pol.z.empty()) {
            Vec cand = embed(pol.z, ns);
            const double fc = poly_eval(s, cand);
            ++rep.evals;
            if (fc <= fx + 1e-12) {
                x = std::move(cand);
                fx = fc;
            }
        }
    }

    rep.minimizer = x;
    rep.min_value = fx;

    supp = support_of(x);
    const IndexSet ns(supp, n);
    rep.lambda = poly_eval(principal_subtensor(s, ns), restrict_to(x, ns));
    ++rep.evals;
    const Vec y = map_apply(s, x);
    ++rep.evals;
    double ks = 0.0, ko = 0.0;
    for (int i = 0; i < n; ++i) {
        if (x[i] > kSupportTol)
            ks = std::max(ks, std::abs(y[i] - rep.lambda));
        else
            ko = std::max(ko, std::max(0.0, rep.lambda - y[i]));
    }
    rep.kkt_support = ks;
    rep.kkt_off = ko;
    return rep;
}

std::optional<QuadSimplexMin> simplex_min_exact_m2(const Tensor& a) {
    if (a.order() != 2) return std::nullopt;
    const int n = a.dim();
    if (n > 62) return std::nullopt;

    QuadSimplexMin out;
    out.value = std::numeric_limits<double>::infinity();

    std::vector<std::uint64_t> masks;
    for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) masks.push_back(mask);
    std::sort(masks.begin(), masks.end(), [](std::uint64_t x, std::uint64_t y) {
        const int px = std::popcount(x), py = std::popcount(y);
        return px != py ? px < py : x < y;
    });

    for (const std::uint64_t mask : masks) {
        const IndexSet ns = IndexSet::from_mask(mask, n);
        const int r = ns.size();
        const Tensor b = principal_subtensor(a, ns);
        Matrix sys(r + 1, r + 1);
        for (int i = 0; i < r; ++i) {
            for (int j = 0; j < r; ++j) sys(i, j) = b[static_cast<std::int64_t>(i) * r + j];
            sys(i, r) = -1.0;
            sys(r, i) = 1.0;
        }
        Vec rhs(r + 1, 0.0);
        rhs[r] = 1.0;
        const auto sol = lu_solve(sys, rhs);
        if (!sol) {
            out.exact = false; // flat face: stationary set is not isolated
            continue;
        }
        bool feas = true;
        for (int i = 0; i < r; ++i)
            if ((*sol)[i] < -1e-9) feas = false;
        if (!feas) continue;
        const double lambda = (*sol)[r];
        if (lambda < out.value) {
            Vec z((*sol).begin(), (*sol).begin() + r);
            double sum = 0.0;
            for (double& v : z) {
                v = std::max(v, 0.0);
                sum += v;
            }
            for (double& v : z) v /= sum;
            out.value = lambda;
            out.argmin = embed(z, ns);
        }
    }
    if (!std::isfinite(out.value)) return std::nullopt;
    return out;
}

} // namespace tcpkit
