#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tcpkit/linalg.hpp"

namespace tcpkit {

// Nonempty, strictly increasing subset of {1,...,n}. Indices are 1-based to
// match the file formats; conversion to internal 0-based offsets happens at
// the point of use.
class IndexSet {
public:
    IndexSet(std::vector<int> members, int dim);

    static IndexSet full(int dim);
    static IndexSet singleton(int i, int dim);
    // Bits 0..n-1 of `mask` select members 1..n. mask != 0.
    static IndexSet from_mask(std::uint64_t mask, int dim);

    int size() const { return static_cast<int>(members_.size()); }
    int dim() const { return dim_; }
    int operator[](int k) const { return members_[k]; }
    const std::vector<int>& members() const { return members_; }
    bool is_full() const { return size() == dim_; }
    bool contains(int i) const;

private:
    std::vector<int> members_;
    int dim_;
};

// Dense real tensor of order m >= 2 and dimension n >= 1, stored row-major
// over all n^m entries (last index fastest). Immutable in normal use: the
// operations below return new tensors.
class Tensor {
public:
    Tensor(int order, int dim); // zero tensor

    int order() const { return order_; }
    int dim() const { return dim_; }
    std::int64_t size() const { return static_cast<std::int64_t>(entries_.size()); }

    const std::vector<double>& entries() const { return entries_; }
    std::vector<double>& entries() { return entries_; }

    double operator[](std::int64_t flat) const { return entries_[flat]; }
    double& operator[](std::int64_t flat) { return entries_[flat]; }

    // idx holds 0-based digits, length == order.
    std::int64_t flat_index(std::span<const int> idx) const;
    double at(std::span<const int> idx) const;
    void set(std::span<const int> idx, double v);

    double diagonal_entry(int i) const; // a_{ii...i}, i 0-based

private:
    int order_;
    int dim_;
    std::vector<double> entries_;
};

// One sparse coordinate record; idx is 1-based, length must equal the order.
struct Coord {
    std::vector<int> idx;
    double val;
};

// Builds a tensor from sparse coordinates; unlisted entries are zero.
// Throws Error on out-of-range indices, duplicate tuples, non-finite values.
Tensor build_tensor(int order, int dim, const std::vector<Coord>& coords);

// (A x^{m-1})_i = sum over all (m-1)-tuples of a_{i i2...im} x_{i2}...x_{im}.
// Full enumeration, no symmetry shortcuts; OpenMP over rows for large
// tensors. Bit-identical to ref::map_apply at any thread count.
Vec map_apply(const Tensor& a, const Vec& x);

// A x^m enumerated over all n^m index tuples (not via dot(x, map_apply);
// the two routes agree to rounding and are cross-checked in tests).
double poly_eval(const Tensor& a, const Vec& x);

// Jacobian of x -> A x^{m-1}; exact for nonsymmetric tensors.
Matrix map_jacobian(const Tensor& a, const Vec& x);

// Entry-wise average over all index permutations. Preserves x -> A x^m.
Tensor symmetrize(const Tensor& a);

// True iff every entry is within tol of its permutation-orbit mean.
bool is_symmetric(const Tensor& a, double tol = 1e-12);

// Restriction of all m indices to N, order-preserving relabeling.
Tensor principal_subtensor(const Tensor& a, const IndexSet& n);

// Places z on the coordinates of N, zero elsewhere.
Vec embed(const Vec& z, const IndexSet& n);
Vec restrict_to(const Vec& x, const IndexSet& n);

Vec unit_vector(int i, int n); // e_i, i 0-based

namespace ref {

// Serial reference kernels: per-entry index decoding, no OpenMP, no shared
// state. Kept as the correctness baseline for the production kernels and as
// the serial side of the benchmark.
Vec map_apply(const Tensor& a, const Vec& x);
double poly_eval(const Tensor& a, const Vec& x);
Matrix map_jacobian(const Tensor& a, const Vec& x);

} // namespace ref

} // namespace tcpkit
