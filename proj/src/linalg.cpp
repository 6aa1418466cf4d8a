#include "tcpkit/linalg.hpp"

#include <cmath>
#include <cstdlib>

namespace tcpkit {

double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double inf_norm(const Vec& v) {
    double s = 0.0;
    for (double x : v) s = std::max(s, std::abs(x));
    return s;
}

double min_component(const Vec& v) {
    double s = v.empty() ? 0.0 : v[0];
    for (double x : v) s = std::min(s, x);
    return s;
}

double max_component(const Vec& v) {
    double s = v.empty() ? 0.0 : v[0];
    for (double x : v) s = std::max(s, x);
    return s;
}

bool all_finite(const Vec& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

Vec mat_vec(const Matrix& m, const Vec& x) {
    Vec y(m.rows, 0.0);
    for (int i = 0; i < m.rows; ++i) {
        double s = 0.0;
        for (int j = 0; j < m.cols; ++j) s += m(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

std::optional<Vec> lu_solve(Matrix m, Vec b) {
    const int n = m.rows;
    if (n != m.cols || static_cast<int>(b.size()) != n) return std::nullopt;

    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;

    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(m(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(m(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best < 1e-13) return std::nullopt;
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
            std::swap(b[k], b[piv]);
        }
        for (int i = k + 1; i < n; ++i) {
            const double f = m(i, k) / m(k, k);
            m(i, k) = 0.0;
            for (int j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
            b[i] -= f * b[k];
        }
    }
    Vec x(n, 0.0);
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int j = i + 1; j < n; ++j) s -= m(i, j) * x[j];
        x[i] = s / m(i, i);
    }
    if (!all_finite(x)) return std::nullopt;
    return x;
}

std::optional<Vec> ridge_lstsq(const Matrix& j, const Vec& b, double ridge) {
    const int n = j.cols;
    Matrix jtj(n, n);
    Vec jtb(n, 0.0);
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
            double s = 0.0;
            for (int i = 0; i < j.rows; ++i) s += j(i, p) * j(i, q);
            jtj(p, q) = s;
        }
        double s = 0.0;
        for (int i = 0; i < j.rows; ++i) s += j(i, p) * b[i];
        jtb[p] = s;
    }
    for (int p = 0; p < n; ++p) jtj(p, p) += ridge;
    return lu_solve(jtj, jtb);
}

} // namespace tcpkit
