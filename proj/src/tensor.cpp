#include "tcpkit/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "tcpkit/errors.hpp"

namespace tcpkit {

namespace {

// Row count above which the kernels open an OpenMP region. Desk-scale
// tensors (n^m <= ~1300) stay on the calling thread; the benchmark sizes
// fan out.
constexpr std::int64_t kParallelCutoff = 1 << 14;

std::int64_t ipow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

// Odometer digit capacity kept on the stack. A dense tensor with more than
// 40 indices cannot be allocated anyway (2^40 entries at n = 2).
constexpr int kMaxOrder = 40;

// Accumulates sum over the (m-1)-digit odometer of e[t] * initial * x[d_1]
// * ... * x[d_{m-1}], multiplying left to right exactly like the reference
// kernel, so both produce identical bits.
double row_accumulate(const double* e, std::int64_t row_len, const Vec& x, int n, int digits_count,
                      double initial) {
    int d[kMaxOrder] = {0};
    double pref[kMaxOrder];
    pref[0] = initial * x[0];
    for (int k = 1; k < digits_count; ++k) pref[k] = pref[k - 1] * x[0];

    double acc = 0.0;
    for (std::int64_t t = 0;;) {
        acc += e[t] * pref[digits_count - 1];
        if (++t == row_len) break;
        int j = digits_count - 1;
        while (++d[j] == n) {
            d[j] = 0;
            --j;
        }
        for (int k = j; k < digits_count; ++k)
            pref[k] = (k > 0 ? pref[k - 1] : initial) * x[d[k]];
    }
    return acc;
}

void decode(std::int64_t flat, int n, std::span<int> out) {
    for (int k = static_cast<int>(out.size()) - 1; k >= 0; --k) {
        out[k] = static_cast<int>(flat % n);
        flat /= n;
    }
}

} // namespace

// ---------------------------------------------------------------------------
// IndexSet

IndexSet::IndexSet(std::vector<int> members, int dim) : members_(std::move(members)), dim_(dim) {
    if (dim_ < 1) throw Error("IndexSet: dimension must be >= 1");
    if (members_.empty()) throw Error("IndexSet: must be nonempty");
    int prev = 0;
    for (int v : members_) {
        if (v < 1 || v > dim_) {
            std::ostringstream os;
            os << "IndexSet: member " << v << " out of range 1.." << dim_;
            throw Error(os.str());
        }
        if (v <= prev) throw Error("IndexSet: members must be strictly increasing (no duplicates)");
        prev = v;
    }
}

IndexSet IndexSet::full(int dim) {
    std::vector<int> m(dim);
    std::iota(m.begin(), m.end(), 1);
    return IndexSet(std::move(m), dim);
}

IndexSet IndexSet::singleton(int i, int dim) { return IndexSet({i}, dim); }

IndexSet IndexSet::from_mask(std::uint64_t mask, int dim) {
    std::vector<int> m;
    for (int i = 0; i < dim; ++i)
        if (mask & (1ull << i)) m.push_back(i + 1);
    return IndexSet(std::move(m), dim);
}

bool IndexSet::contains(int i) const {
    return std::binary_search(members_.begin(), members_.end(), i);
}

// ---------------------------------------------------------------------------
// Tensor

Tensor::Tensor(int order, int dim) : order_(order), dim_(dim) {
    if (order_ < 2) throw Error("Tensor: order must be >= 2");
    if (order_ > kMaxOrder) throw Error("Tensor: order exceeds supported maximum");
    if (dim_ < 1) throw Error("Tensor: dimension must be >= 1");
    double size_check = 1.0;
    for (int k = 0; k < order_; ++k) size_check *= dim_;
    if (size_check > 1e9) throw Error("Tensor: n^m entries exceed the dense storage limit");
    entries_.assign(ipow(dim_, order_), 0.0);
}

std::int64_t Tensor::flat_index(std::span<const int> idx) const {
    std::int64_t f = 0;
    for (int k = 0; k < order_; ++k) f = f * dim_ + idx[k];
    return f;
}

double Tensor::at(std::span<const int> idx) const { return entries_[flat_index(idx)]; }

void Tensor::set(std::span<const int> idx, double v) { entries_[flat_index(idx)] = v; }

double Tensor::diagonal_entry(int i) const {
    std::int64_t f = 0;
    for (int k = 0; k < order_; ++k) f = f * dim_ + i;
    return entries_[f];
}

Tensor build_tensor(int order, int dim, const std::vector<Coord>& coords) {
    Tensor t(order, dim);
    std::vector<std::int64_t> seen;
    seen.reserve(coords.size());
    std::vector<int> idx0(order);
    for (std::size_t r = 0; r < coords.size(); ++r) {
        const Coord& c = coords[r];
        if (static_cast<int>(c.idx.size()) != order) {
            std::ostringstream os;
            os << "entry " << r << ": index tuple has length " << c.idx.size() << ", expected "
               << order;
            throw Error(os.str());
        }
        for (int k = 0; k < order; ++k) {
            if (c.idx[k] < 1 || c.idx[k] > dim) {
                std::ostringstream os;
                os << "entry " << r << ": index " << c.idx[k] << " out of range 1.." << dim;
                throw Error(os.str());
            }
            idx0[k] = c.idx[k] - 1;
        }
        if (!std::isfinite(c.val)) {
            std::ostringstream os;
            os << "entry " << r << ": non-finite value";
            throw Error(os.str());
        }
        const std::int64_t f = t.flat_index(idx0);
        seen.push_back(f);
        t[f] = c.val;
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        throw Error("duplicate index tuple in coordinate list");
    return t;
}

// ---------------------------------------------------------------------------
// Kernels

Vec map_apply(const Tensor& a, const Vec& x) {
    const int n = a.dim();
    const int m = a.order();
    if (static_cast<int>(x.size()) != n) throw Error("map_apply: dimension mismatch");
    const std::int64_t row_len = a.size() / n;
    const double* e = a.entries().data();
    Vec y(n, 0.0);
    if (a.size() >= kParallelCutoff) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i)
            y[i] = row_accumulate(e + i * row_len, row_len, x, n, m - 1, 1.0);
    } else {
        for (int i = 0; i < n; ++i)
            y[i] = row_accumulate(e + i * row_len, row_len, x, n, m - 1, 1.0);
    }
    return y;
}

double poly_eval(const Tensor& a, const Vec& x) {
    const int n = a.dim();
    const int m = a.order();
    if (static_cast<int>(x.size()) != n) throw Error("poly_eval: dimension mismatch");
    const std::int64_t row_len = a.size() / n;
    const double* e = a.entries().data();
    Vec partial(n, 0.0);
    if (a.size() >= kParallelCutoff) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i)
            partial[i] = row_accumulate(e + i * row_len, row_len, x, n, m - 1, x[i]);
    } else {
        for (int i = 0; i < n; ++i)
            partial[i] = row_accumulate(e + i * row_len, row_len, x, n, m - 1, x[i]);
    }
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += partial[i];
    return acc;
}

namespace {

void jacobian_row(const double* e, std::int64_t row_len, const Vec& x, int n, int digits_count,
                  double* jrow) {
    int d[kMaxOrder] = {0};
    double pref[kMaxOrder];
    pref[0] = x[0];
    for (int k = 1; k < digits_count; ++k) pref[k] = pref[k - 1] * x[0];
    for (std::int64_t t = 0;;) {
        const double av = e[t];
        if (av != 0.0) {
            for (int p = 0; p < digits_count; ++p) {
                double loo = p > 0 ? pref[p - 1] : 1.0;
                for (int l = p + 1; l < digits_count; ++l) loo *= x[d[l]];
                jrow[d[p]] += av * loo;
            }
        }
        if (++t == row_len) break;
        int w = digits_count - 1;
        while (++d[w] == n) {
            d[w] = 0;
            --w;
        }
        for (int k = w; k < digits_count; ++k) pref[k] = (k > 0 ? pref[k - 1] : 1.0) * x[d[k]];
    }
}

} // namespace

Matrix map_jacobian(const Tensor& a, const Vec& x) {
    const int n = a.dim();
    const int m = a.order();
    if (static_cast<int>(x.size()) != n) throw Error("map_jacobian: dimension mismatch");
    const std::int64_t row_len = a.size() / n;
    const double* e = a.entries().data();
    Matrix j(n, n);
    if (a.size() >= kParallelCutoff) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i)
            jacobian_row(e + i * row_len, row_len, x, n, m - 1, &j(i, 0));
    } else {
        for (int i = 0; i < n; ++i)
            jacobian_row(e + i * row_len, row_len, x, n, m - 1, &j(i, 0));
    }
    return j;
}

Tensor symmetrize(const Tensor& a) {
    const int n = a.dim();
    const int m = a.order();
    // all m! position permutations, in next_permutation order
    std::vector<std::vector<int>> perms;
    std::vector<int> p(m);
    std::iota(p.begin(), p.end(), 0);
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    const double inv = 1.0 / static_cast<double>(perms.size());

    Tensor s(m, n);
    const std::int64_t total = a.size();
    const auto orbit_mean = [&](std::int64_t t, std::vector<int>& idx, std::vector<int>& pidx) {
        decode(t, n, idx);
        double acc = 0.0;
        for (const auto& perm : perms) {
            for (int k = 0; k < m; ++k) pidx[k] = idx[perm[k]];
            acc += a.at(pidx);
        }
        return acc * inv;
    };
    if (total >= kParallelCutoff) {
#pragma omp parallel
        {
            std::vector<int> idx(m), pidx(m);
#pragma omp for schedule(static)
            for (std::int64_t t = 0; t < total; ++t) s[t] = orbit_mean(t, idx, pidx);
        }
    } else {
        std::vector<int> idx(m), pidx(m);
        for (std::int64_t t = 0; t < total; ++t) s[t] = orbit_mean(t, idx, pidx);
    }
    return s;
}

bool is_symmetric(const Tensor& a, double tol) {
    const Tensor s = symmetrize(a);
    for (std::int64_t t = 0; t < a.size(); ++t)
        if (std::abs(a[t] - s[t]) > tol) return false;
    return true;
}

Tensor principal_subtensor(const Tensor& a, const IndexSet& n) {
    if (n.dim() != a.dim()) throw Error("principal_subtensor: index set dimension mismatch");
    const int m = a.order();
    const int r = n.size();
    Tensor b(m, r);
    std::vector<int> bidx(m, 0), aidx(m, 0);
    for (std::int64_t t = 0; t < b.size(); ++t) {
        decode(t, r, bidx);
        for (int k = 0; k < m; ++k) aidx[k] = n[bidx[k]] - 1;
        b[t] = a.at(aidx);
    }
    return b;
}

Vec embed(const Vec& z, const IndexSet& n) {
    if (static_cast<int>(z.size()) != n.size()) throw Error("embed: size mismatch");
    Vec x(n.dim(), 0.0);
    for (int k = 0; k < n.size(); ++k) x[n[k] - 1] = z[k];
    return x;
}

Vec restrict_to(const Vec& x, const IndexSet& n) {
    if (static_cast<int>(x.size()) != n.dim()) throw Error("restrict_to: size mismatch");
    Vec z(n.size(), 0.0);
    for (int k = 0; k < n.size(); ++k) z[k] = x[n[k] - 1];
    return z;
}

Vec unit_vector(int i, int n) {
    Vec e(n, 0.0);
    e[i] = 1.0;
    return e;
}

// ---------------------------------------------------------------------------
// Reference kernels

namespace ref {

Vec map_apply(const Tensor& a, const Vec& x) {
    const int n = a.dim();
    const int m = a.order();
    if (static_cast<int>(x.size()) != n) throw Error("map_apply: dimension mismatch");
    const std::int64_t row_len = a.size() / n;
    Vec y(n, 0.0);
    std::vector<int> d(m - 1);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::int64_t t = 0; t < row_len; ++t) {
            decode(t, n, d);
            double prod = 1.0;
            for (int k = 0; k < m - 1; ++k) prod *= x[d[k]];
            acc += a[i * row_len + t] * prod;
        }
        y[i] = acc;
    }
    return y;
}

double poly_eval(const Tensor& a, const Vec& x) {
    const int n = a.dim();
    const int m = a.order();
    if (static_cast<int>(x.size()) != n) throw Error("poly_eval: dimension mismatch");
    const std::int64_t row_len = a.size() / n;
    std::vector<int> d(m - 1);
    Vec partial(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::int64_t t = 0; t < row_len; ++t) {
            decode(t, n, d);
            double prod = x[i];
            for (int k = 0; k < m - 1; ++k) prod *= x[d[k]];
            acc += a[i * row_len + t] * prod;
        }
        partial[i] = acc;
    }
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += partial[i];
    return acc;
}

Matrix map_jacobian(const Tensor& a, const Vec& x) {
    const int n = a.dim();
    const int m = a.order();
    if (static_cast<int>(x.size()) != n) throw Error("map_jacobian: dimension mismatch");
    const std::int64_t row_len = a.size() / n;
    Matrix j(n, n);
    std::vector<int> d(m - 1);
    for (int i = 0; i < n; ++i) {
        for (std::int64_t t = 0; t < row_len; ++t) {
            const double av = a[i * row_len + t];
            if (av == 0.0) continue;
            decode(t, n, d);
            for (int p = 0; p < m - 1; ++p) {
                double loo = 1.0;
                for (int l = 0; l < m - 1; ++l)
                    if (l != p) loo *= x[d[l]];
                j(i, d[p]) += av * loo;
            }
        }
    }
    return j;
}

} // namespace ref

} // namespace tcpkit
