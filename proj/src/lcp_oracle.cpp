#include "tcpkit/lcp_oracle.hpp"

#include <cstdint>
#include <numeric>

#include "tcpkit/errors.hpp"

namespace tcpkit {

namespace {

using Wide = __int128;

long long narrow(Wide v) {
    if (v > INT64_MAX || v < INT64_MIN) throw Error("lcp_oracle: integer overflow");
    return static_cast<long long>(v);
}

// Exact fraction with gcd normalization, den > 0.
struct Frac {
    long long num = 0;
    long long den = 1;

    static Frac of(long long n, long long d = 1) {
        Frac f{n, d};
        f.normalize();
        return f;
    }

    void normalize() {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        if (num == 0) {
            den = 1;
            return;
        }
        const long long g = std::gcd(num < 0 ? -num : num, den);
        num /= g;
        den /= g;
    }

    Frac operator+(const Frac& o) const {
        return of(narrow(Wide(num) * o.den + Wide(o.num) * den), narrow(Wide(den) * o.den));
    }
    Frac operator*(const Frac& o) const {
        return of(narrow(Wide(num) * o.num), narrow(Wide(den) * o.den));
    }
    bool negative() const { return num < 0; }
    bool positive() const { return num > 0; }
    bool zero() const { return num == 0; }
};

// One inequality sum_j c_j z_j <= b.
struct Row {
    std::vector<Frac> c;
    Frac b;
};

// Eliminates variables left to right; feasible iff every residual constant
// inequality 0 <= b holds.
bool fm_run(std::vector<Row> rows, int nvars) {
    for (int var = 0; var < nvars; ++var) {
        std::vector<Row> pos, neg, zer;
        for (Row& r : rows) {
            if (r.c[var].positive())
                pos.push_back(std::move(r));
            else if (r.c[var].negative())
                neg.push_back(std::move(r));
            else
                zer.push_back(std::move(r));
        }
        std::vector<Row> next = std::move(zer);
        for (const Row& p : pos) {
            for (const Row& q : neg) {
                // p.c[var] > 0 gives upper bound, q.c[var] < 0 lower bound;
                // combine with weights |q.c[var]| and p.c[var]
                const Frac wp = Frac::of(-q.c[var].num, q.c[var].den); // positive
                const Frac wq = p.c[var];
                Row r;
                r.c.resize(nvars);
                for (int j = 0; j < nvars; ++j) r.c[j] = wp * p.c[j] + wq * q.c[j];
                r.b = wp * p.b + wq * q.b;
                r.c[var] = Frac::of(0);
                next.push_back(std::move(r));
            }
        }
        rows = std::move(next);
    }
    for (const Row& r : rows)
        if (r.b.negative()) return false;
    return true;
}

// {M z <= rhs} augmented with z >= 0.
bool feasible_with_nonneg(const std::vector<std::vector<long long>>& m,
                          const std::vector<long long>& rhs, int nvars) {
    std::vector<Row> rows;
    for (std::size_t i = 0; i < m.size(); ++i) {
        Row r;
        r.c.resize(nvars);
        for (int j = 0; j < nvars; ++j) r.c[j] = Frac::of(m[i][j]);
        r.b = Frac::of(rhs[i]);
        rows.push_back(std::move(r));
    }
    for (int j = 0; j < nvars; ++j) {
        Row r;
        r.c.assign(nvars, Frac::of(0));
        r.c[j] = Frac::of(-1);
        r.b = Frac::of(0);
        rows.push_back(std::move(r));
    }
    return fm_run(std::move(rows), nvars);
}

std::vector<std::vector<long long>> submatrix(const std::vector<std::vector<long long>>& a,
                                              const std::vector<int>& idx) {
    std::vector<std::vector<long long>> b(idx.size(), std::vector<long long>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) b[i][j] = a[idx[i]][idx[j]];
    return b;
}

} // namespace

bool fm_feasible(const std::vector<std::vector<long long>>& m, const std::vector<long long>& rhs) {
    if (m.empty()) return true;
    return feasible_with_nonneg(m, rhs, static_cast<int>(m[0].size()));
}

OracleVerdict lcp_oracle_classify(const std::vector<std::vector<long long>>& a) {
    const int n = static_cast<int>(a.size());
    if (n < 1 || n > 16) throw Error("lcp_oracle: dimension out of range");

    OracleVerdict out{true, true};
    for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (mask & (1ull << i)) idx.push_back(i);
        const auto b = submatrix(a, idx);
        const int r = static_cast<int>(idx.size());

        // A^N z < 0, z >= 0 feasible iff (by cone scaling) A^N z <= -1, z >= 0
        if (out.semi_positive &&
            feasible_with_nonneg(b, std::vector<long long>(r, -1), r))
            out.semi_positive = false;

        // A^N z <= 0, z >= 0, z != 0 feasible iff (scaling) adding sum z >= 1
        if (out.strictly_semi_positive) {
            std::vector<std::vector<long long>> m2 = b;
            std::vector<long long> rhs(r, 0);
            m2.push_back(std::vector<long long>(r, -1)); // -sum z <= -1
            rhs.push_back(-1);
            if (feasible_with_nonneg(m2, rhs, r)) out.strictly_semi_positive = false;
        }
        if (!out.semi_positive && !out.strictly_semi_positive) break;
    }
    return out;
}

} // namespace tcpkit
