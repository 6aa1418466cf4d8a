#pragma once

#include <vector>

#include "tcpkit/linalg.hpp"

namespace tcpkit {

// Dense two-phase primal simplex in standard form
//   min c^T y   s.t.  E y = b, y >= 0
// with Bland's rule (no cycling). Sized for the toolkit's LPs: a handful of
// rows and columns.
struct StandardLp {
    Matrix e;
    Vec b;
    Vec c;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status;
    double value = 0.0;
    Vec y;
};

LpSolution solve_standard_lp(const StandardLp& lp);

// min over the unit simplex of max_k (A z)_k, via the epigraph LP
//   min t  s.t.  A z <= t e, sum z = 1, z >= 0.
// Exact up to simplex-method rounding; this is the order-2 decision path.
struct MaxCompMin {
    double value = 0.0;
    Vec point; // argmin on the simplex
};

MaxCompMin lp_min_max_component(const Matrix& a);

} // namespace tcpkit
