#include "tcpkit/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tcpkit/errors.hpp"

namespace tcpkit {

namespace {

constexpr double kPivotEps = 1e-11;

// Tableau with an explicit basis; runs Bland's rule until optimal or
// unbounded. Rows 0..m-1 are constraints, row m is the (negated) objective.
struct Tableau {
    int m, n;
    Matrix t; // (m+1) x (n+1); last column is rhs
    std::vector<int> basis;

    Tableau(int rows, int cols) : m(rows), n(cols), t(rows + 1, cols + 1), basis(rows, -1) {}

    double& at(int i, int j) { return t(i, j); }
    double rhs(int i) const { return t(i, n); }

    void pivot(int pr, int pc) {
        const double pv = t(pr, pc);
        for (int j = 0; j <= n; ++j) t(pr, j) /= pv;
        for (int i = 0; i <= m; ++i) {
            if (i == pr) continue;
            const double f = t(i, pc);
            if (f == 0.0) continue;
            for (int j = 0; j <= n; ++j) t(i, j) -= f * t(pr, j);
        }
        basis[pr] = pc;
    }

    // Bland: entering = lowest-index column with negative reduced cost,
    // leaving = lowest-index basic row among the ratio-test ties.
    LpStatus run() {
        for (int iter = 0; iter < 20000; ++iter) {
            int pc = -1;
            for (int j = 0; j < n; ++j) {
                if (t(m, j) < -kPivotEps) {
                    pc = j;
                    break;
                }
            }
            if (pc < 0) return LpStatus::Optimal;
            int pr = -1;
            double best = std::numeric_limits<double>::infinity();
            for (int i = 0; i < m; ++i) {
                if (t(i, pc) > kPivotEps) {
                    const double ratio = rhs(i) / t(i, pc);
                    if (ratio < best - 1e-14 ||
                        (std::abs(ratio - best) <= 1e-14 && (pr < 0 || basis[i] < basis[pr]))) {
                        best = ratio;
                        pr = i;
                    }
                }
            }
            if (pr < 0) return LpStatus::Unbounded;
            pivot(pr, pc);
        }
        throw Error("simplex: iteration limit hit");
    }
};

} // namespace

LpSolution solve_standard_lp(const StandardLp& lp) {
    const int m = lp.e.rows;
    const int n = lp.e.cols;

    // Phase 1: artificial variable per row, minimize their sum.
    Tableau tab(m, n + m);
    for (int i = 0; i < m; ++i) {
        const double sign = lp.b[i] < 0.0 ? -1.0 : 1.0;
        for (int j = 0; j < n; ++j) tab.at(i, j) = sign * lp.e(i, j);
        tab.at(i, n + i) = 1.0;
        tab.at(i, tab.n) = sign * lp.b[i];
        tab.basis[i] = n + i;
    }
    // Phase-1 reduced costs for the artificial basis: row m starts as the
    // artificial cost vector, then each basic row is subtracted out.
    for (int j = 0; j < n + m; ++j) tab.at(m, j) = (j >= n) ? 1.0 : 0.0;
    tab.at(m, tab.n) = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= tab.n; ++j) tab.at(m, j) -= tab.at(i, j);

    if (tab.run() == LpStatus::Unbounded) throw Error("simplex: phase 1 unbounded");
    const double phase1 = -tab.rhs(m);
    if (phase1 > 1e-8) return {LpStatus::Infeasible, 0.0, {}};

    // Drive lingering artificials out of the basis where a real pivot exists.
    for (int i = 0; i < m; ++i) {
        if (tab.basis[i] < n) continue;
        int pc = -1;
        for (int j = 0; j < n; ++j) {
            if (std::abs(tab.at(i, j)) > kPivotEps) {
                pc = j;
                break;
            }
        }
        if (pc >= 0) tab.pivot(i, pc);
        // else: redundant row, leave the artificial at value ~0
    }

    // Phase 2: swap in the real objective, zero out artificial columns.
    Tableau t2(m, n);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) t2.at(i, j) = tab.at(i, j);
        t2.at(i, n) = tab.rhs(i);
        t2.basis[i] = tab.basis[i] < n ? tab.basis[i] : -1;
    }
    for (int j = 0; j < n; ++j) t2.at(m, j) = lp.c[j];
    t2.at(m, n) = 0.0;
    for (int i = 0; i < m; ++i) {
        const int bj = t2.basis[i];
        if (bj < 0) continue;
        const double f = t2.at(m, bj);
        if (f == 0.0) continue;
        for (int j = 0; j <= n; ++j) t2.at(m, j) -= f * t2.at(i, j);
    }
    const LpStatus st = t2.run();
    if (st == LpStatus::Unbounded) return {LpStatus::Unbounded, 0.0, {}};

    Vec y(n, 0.0);
    for (int i = 0; i < m; ++i)
        if (t2.basis[i] >= 0 && t2.basis[i] < n) y[t2.basis[i]] = t2.rhs(i);
    return {LpStatus::Optimal, -t2.rhs(m), y};
}

MaxCompMin lp_min_max_component(const Matrix& a) {
    const int r = a.rows;
    // Variables: z (r), t+ , t-, slack s (r). Rows: A z - (t+ - t-) e + s = 0
    // (r rows), sum z = 1.
    const int nv = r + 2 + r;
    StandardLp lp;
    lp.e = Matrix(r + 1, nv);
    lp.b = Vec(r + 1, 0.0);
    lp.c = Vec(nv, 0.0);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) lp.e(i, j) = a(i, j);
        lp.e(i, r) = -1.0;
        lp.e(i, r + 1) = 1.0;
        lp.e(i, r + 2 + i) = 1.0;
        lp.b[i] = 0.0;
    }
    for (int j = 0; j < r; ++j) lp.e(r, j) = 1.0;
    lp.b[r] = 1.0;
    lp.c[r] = 1.0;
    lp.c[r + 1] = -1.0;

    const LpSolution sol = solve_standard_lp(lp);
    if (sol.status != LpStatus::Optimal) throw Error("lp_min_max_component: LP did not solve");

    Vec z(sol.y.begin(), sol.y.begin() + r);
    // clean tiny negatives and renormalize onto the simplex
    double sum = 0.0;
    for (double& v : z) {
        if (v < 0.0) v = 0.0;
        sum += v;
    }
    if (sum > 0.0)
        for (double& v : z) v /= sum;
    return {sol.value, z};
}

} // namespace tcpkit
