#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace tcpkit {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b);
double inf_norm(const Vec& v);
double min_component(const Vec& v);
double max_component(const Vec& v);
bool all_finite(const Vec& v);

// Dense row-major matrix, sized for desk-scale problems (n <= ~16).
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

Vec mat_vec(const Matrix& m, const Vec& x);

// LU with partial pivoting; nullopt when the pivot collapses (singular to
// working precision).
std::optional<Vec> lu_solve(Matrix m, Vec b);

// (J^T J + ridge I) d = J^T b. Fallback direction when LU refuses.
std::optional<Vec> ridge_lstsq(const Matrix& j, const Vec& b, double ridge);

} // namespace tcpkit
