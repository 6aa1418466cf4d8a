#pragma once

#include <vector>

namespace tcpkit {

// Exact rational brute-force oracle for integer matrices, used to
// cross-check the order-2 classification path. Decides, for every support
// N, feasibility of
//   A^N z < 0,  z >= 0             [semi-positive refuter]
//   A^N z <= 0, z >= 0, z != 0     [strictly semi-positive refuter]
// by Fourier-Motzkin elimination over exact fractions. Completely
// independent of the floating-point simplex route: different algorithm,
// different arithmetic, no shared code.
struct OracleVerdict {
    bool semi_positive = false;
    bool strictly_semi_positive = false;
};

// a: square integer matrix, row-major. Intended for n <= 4 and small
// entries; throws on overflow.
OracleVerdict lcp_oracle_classify(const std::vector<std::vector<long long>>& a);

// Exposed for tests: feasibility of {M z <= rhs, z >= 0} with integer data.
bool fm_feasible(const std::vector<std::vector<long long>>& m, const std::vector<long long>& rhs);

} // namespace tcpkit
