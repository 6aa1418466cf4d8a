#include "doctest.h"

#include "tcpkit/classify.hpp"
#include "tcpkit/errors.hpp"
#include "tcpkit/generate.hpp"

#include "helpers.hpp"

using namespace tcpkit;

TEST_CASE("generate: determinism is bitwise") {
    const GenSpec spec{GenKind::SymmetricGaussian, 3, 4, 123, {}};
    const Tensor a = generate(spec);
    const Tensor b = generate(spec);
    REQUIRE(a.size() == b.size());
    for (std::int64_t f = 0; f < a.size(); ++f) CHECK(a[f] == b[f]);

    const Vec q1 = gen_q(4, QKind::Mixed, 9, 3);
    const Vec q2 = gen_q(4, QKind::Mixed, 9, 3);
    CHECK(q1 == q2);
}

TEST_CASE("generate: identity and zero") {
    const Tensor id = generate({GenKind::Identity, 3, 2, 0, {}});
    CHECK(id.diagonal_entry(0) == 1.0);
    CHECK(id.diagonal_entry(1) == 1.0);
    CHECK(id.at(std::vector<int>{0, 0, 1}) == 0.0);

    const Tensor z = generate({GenKind::Zero, 4, 3, 0, {}});
    for (std::int64_t f = 0; f < z.size(); ++f) CHECK(z[f] == 0.0);
}

TEST_CASE("generate: symmetric gaussian is symmetric, boosted diagonal is boosted") {
    const Tensor g = generate({GenKind::SymmetricGaussian, 3, 3, 5, {}});
    CHECK(is_symmetric(g));

    const Tensor gb = generate({GenKind::DiagBoosted, 3, 3, 5, {50.0}});
    for (int i = 0; i < 3; ++i)
        CHECK(gb.diagonal_entry(i) == doctest::Approx(g.diagonal_entry(i) + 50.0));
}

TEST_CASE("generate: matrix embed round-trips through the full principal subtensor") {
    const std::vector<double> entries{1.0, -2.0, 0.5, 3.0};
    const Tensor t = generate({GenKind::MatrixEmbed, 2, 2, 0, entries});
    const Tensor full = principal_subtensor(t, IndexSet::full(2));
    for (std::int64_t f = 0; f < 4; ++f) CHECK(full[f] == entries[static_cast<std::size_t>(f)]);
}

TEST_CASE("generate: nonnegative tensors classify copositive") {
    for (std::uint64_t seed : {7u, 8u, 9u}) {
        const Tensor t = generate({GenKind::Nonnegative, 3, 3, seed, {}});
        const Verdict v = classify_copositive(t, false);
        CHECK(v.status == Status::Holds);
    }
}

TEST_CASE("generate: boosted diagonal dominates on the simplex") {
    const Tensor t = generate({GenKind::DiagBoosted, 4, 2, 42, {50.0}});
    const Verdict v = classify_strictly_semi_positive(t);
    CHECK(v.status == Status::Holds);
}

TEST_CASE("gen_instance: q families have the advertised signs") {
    const GenSpec spec{GenKind::Identity, 2, 4, 0, {}};
    const TcpInstance pos = gen_instance(spec, QKind::Pos, 3);
    for (double v : pos.q) CHECK(v > 0.0);
    const TcpInstance neg = gen_instance(spec, QKind::Neg, 3);
    for (double v : neg.q) CHECK(v < 0.0);
    const TcpInstance nn = gen_instance(spec, QKind::Nonneg, 3);
    for (double v : nn.q) CHECK(v >= 0.0);
}

TEST_CASE("generate: invalid specs throw") {
    CHECK_THROWS_AS(generate({GenKind::MatrixEmbed, 3, 2, 0, {1, 0, 0, 1}}), Error);
    CHECK_THROWS_AS(generate({GenKind::MatrixEmbed, 2, 2, 0, {1.0}}), Error);
    CHECK_THROWS_AS(gen_kind_from_string("bogus"), Error);
}
