#pragma once

#include <cmath>

#include "tcpkit/generate.hpp"
#include "tcpkit/rng.hpp"
#include "tcpkit/tensor.hpp"

namespace tcpkit::testutil {

inline double rel_diff(double a, double b) {
    const double d = std::abs(a - b);
    const double s = std::max(std::abs(a), std::abs(b));
    return s > 0 ? d / s : d;
}

inline Tensor random_tensor(int order, int dim, std::uint64_t seed, double lo = -1.0,
                            double hi = 1.0) {
    Tensor t(order, dim);
    const Rng rng = Rng::keyed(seed, 99);
    for (std::int64_t f = 0; f < t.size(); ++f) t[f] = rng.uniform_at(f, lo, hi);
    return t;
}

inline Vec random_vec(int dim, std::uint64_t seed, double lo = -1.0, double hi = 1.0) {
    Vec v(dim);
    const Rng rng = Rng::keyed(seed, 98);
    for (int i = 0; i < dim; ++i) v[i] = rng.uniform_at(i, lo, hi);
    return v;
}

inline Tensor matrix_tensor(const std::vector<std::vector<double>>& rows) {
    const int n = static_cast<int>(rows.size());
    Tensor t(2, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t[static_cast<std::int64_t>(i) * n + j] = rows[i][j];
    return t;
}

} // namespace tcpkit::testutil
