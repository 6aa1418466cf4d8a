#include "tcpkit/generate.hpp"

#include "tcpkit/errors.hpp"
#include "tcpkit/rng.hpp"

namespace tcpkit {

GenKind gen_kind_from_string(const std::string& s) {
    if (s == "identity") return GenKind::Identity;
    if (s == "zero") return GenKind::Zero;
    if (s == "nonnegative") return GenKind::Nonnegative;
    if (s == "symmetric_gaussian") return GenKind::SymmetricGaussian;
    if (s == "diag_boosted") return GenKind::DiagBoosted;
    if (s == "matrix_embed") return GenKind::MatrixEmbed;
    throw Error("unknown generator kind: " + s);
}

std::string to_string(GenKind k) {
    switch (k) {
    case GenKind::Identity: return "identity";
    case GenKind::Zero: return "zero";
    case GenKind::Nonnegative: return "nonnegative";
    case GenKind::SymmetricGaussian: return "symmetric_gaussian";
    case GenKind::DiagBoosted: return "diag_boosted";
    default: return "matrix_embed";
    }
}

QKind q_kind_from_string(const std::string& s) {
    if (s == "pos") return QKind::Pos;
    if (s == "nonneg") return QKind::Nonneg;
    if (s == "mixed") return QKind::Mixed;
    if (s == "neg") return QKind::Neg;
    throw Error("unknown q kind: " + s);
}

std::string to_string(QKind k) {
    switch (k) {
    case QKind::Pos: return "pos";
    case QKind::Nonneg: return "nonneg";
    case QKind::Mixed: return "mixed";
    default: return "neg";
    }
}

namespace {

Tensor identity_tensor(int order, int dim) {
    Tensor t(order, dim);
    for (int i = 0; i < dim; ++i) {
        std::int64_t f = 0;
        for (int k = 0; k < order; ++k) f = f * dim + i;
        t[f] = 1.0;
    }
    return t;
}

} // namespace

Tensor generate(const GenSpec& spec) {
    if (spec.order < 2 || spec.dim < 1) throw Error("generate: order >= 2 and dim >= 1 required");

    switch (spec.kind) {
    case GenKind::Zero:
        return Tensor(spec.order, spec.dim);

    case GenKind::Identity:
        return identity_tensor(spec.order, spec.dim);

    case GenKind::Nonnegative: {
        Tensor t(spec.order, spec.dim);
        const Rng rng = Rng::keyed(spec.seed, 1);
        for (std::int64_t f = 0; f < t.size(); ++f) t[f] = rng.u01_at(f);
        return t;
    }

    case GenKind::SymmetricGaussian: {
        Tensor t(spec.order, spec.dim);
        const Rng rng = Rng::keyed(spec.seed, 1);
        for (std::int64_t f = 0; f < t.size(); ++f) t[f] = rng.normal_at(f);
        return symmetrize(t);
    }

    case GenKind::DiagBoosted: {
        const double beta = spec.params.empty() ? 50.0 : spec.params[0];
        Tensor t = generate({GenKind::SymmetricGaussian, spec.order, spec.dim, spec.seed, {}});
        for (int i = 0; i < spec.dim; ++i) {
            std::int64_t f = 0;
            for (int k = 0; k < spec.order; ++k) f = f * spec.dim + i;
            t[f] += beta;
        }
        return t;
    }

    case GenKind::MatrixEmbed: {
        if (spec.order != 2) throw Error("matrix_embed: order must be 2");
        const std::size_t need = static_cast<std::size_t>(spec.dim) * spec.dim;
        if (spec.params.size() != need)
            throw Error("matrix_embed: params must hold dim*dim row-major entries");
        Tensor t(2, spec.dim);
        for (std::size_t f = 0; f < need; ++f) t[static_cast<std::int64_t>(f)] = spec.params[f];
        return t;
    }
    }
    throw Error("generate: invalid kind");
}

Vec gen_q(int dim, QKind q_kind, std::uint64_t seed, std::uint64_t sample_index) {
    const Rng rq = Rng::keyed(seed, 2);
    const Rng rmask = Rng::keyed(seed, 3);
    Vec q(dim);
    for (int i = 0; i < dim; ++i) {
        const std::uint64_t at = sample_index * static_cast<std::uint64_t>(dim) + i;
        switch (q_kind) {
        case QKind::Pos: q[i] = rq.uniform_at(at, 0.1, 2.0); break;
        case QKind::Neg: q[i] = rq.uniform_at(at, -2.0, -0.1); break;
        case QKind::Mixed: q[i] = rq.uniform_at(at, -2.0, 2.0); break;
        case QKind::Nonneg:
            q[i] = rq.uniform_at(at, 0.1, 2.0);
            if (rmask.u01_at(at) < 1.0 / 3.0) q[i] = 0.0;
            break;
        }
    }
    return q;
}

TcpInstance gen_instance(const GenSpec& spec, QKind q_kind, std::uint64_t seed) {
    return TcpInstance(generate(spec), gen_q(spec.dim, q_kind, seed));
}

} // namespace tcpkit
