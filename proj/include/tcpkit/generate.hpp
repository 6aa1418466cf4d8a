#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tcpkit/tcp.hpp"
#include "tcpkit/tensor.hpp"

namespace tcpkit {

enum class GenKind {
    Identity,          // a_{i...i} = 1, else 0
    Zero,
    Nonnegative,       // iid uniform[0,1); copositive by construction
    SymmetricGaussian, // symmetrized iid standard normals
    DiagBoosted,       // SymmetricGaussian + beta * Identity, beta = params[0]
    MatrixEmbed,       // order-2 tensor from params (row-major entries)
};

GenKind gen_kind_from_string(const std::string& s);
std::string to_string(GenKind k);

struct GenSpec {
    GenKind kind = GenKind::Identity;
    int order = 2;
    int dim = 1;
    std::uint64_t seed = 0;
    std::vector<double> params;
};

// Deterministic: identical spec => bitwise identical tensor, on any platform
// and regardless of generation order (entries are drawn by index).
Tensor generate(const GenSpec& spec);

enum class QKind { Pos, Nonneg, Mixed, Neg };

QKind q_kind_from_string(const std::string& s);
std::string to_string(QKind k);

// Pairs generate(spec) with a seeded q: Pos ~ U(0.1, 2); Nonneg is Pos with
// coordinates zeroed w.p. 1/3; Mixed ~ U(-2, 2); Neg ~ U(-2, -0.1).
TcpInstance gen_instance(const GenSpec& spec, QKind q_kind, std::uint64_t seed);
Vec gen_q(int dim, QKind q_kind, std::uint64_t seed, std::uint64_t sample_index = 0);

} // namespace tcpkit
