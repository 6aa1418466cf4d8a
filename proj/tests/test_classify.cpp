#include "doctest.h"

#include <cmath>

#include "tcpkit/classify.hpp"
#include "tcpkit/errors.hpp"
#include "tcpkit/generate.hpp"
#include "tcpkit/lcp_oracle.hpp"
#include "tcpkit/rng.hpp"

#include "helpers.hpp"

using namespace tcpkit;
using namespace tcpkit::testutil;

namespace {

Tensor neg_diag_tensor() {
    return build_tensor(3, 2, {{{1, 1, 1}, -1.0}});
}

} // namespace

TEST_CASE("diag_check") {
    const Tensor id32 = generate({GenKind::Identity, 3, 2, 0, {}});
    CHECK(diag_check(id32, true).passed);

    const Tensor zero = generate({GenKind::Zero, 3, 2, 0, {}});
    const auto strict = diag_check(zero, true);
    CHECK_FALSE(strict.passed);
    CHECK(strict.failing_index == 1);
    CHECK(diag_check(zero, false).passed);

    const Tensor nd = neg_diag_tensor();
    const auto r = diag_check(nd, false);
    CHECK_FALSE(r.passed);
    CHECK(r.failing_index == 1);
    // the failing unit vector refutes the definition directly
    const Vec y = map_apply(nd, unit_vector(0, 2));
    CHECK(y[0] == doctest::Approx(-1.0));
}

TEST_CASE("rowsum_check") {
    const Tensor id32 = generate({GenKind::Identity, 3, 2, 0, {}});
    CHECK(rowsum_check(id32, false).passed);
    CHECK(rowsum_check(id32, true).passed);

    Tensor allneg(3, 2);
    for (std::int64_t f = 0; f < allneg.size(); ++f) allneg[f] = -1.0;
    CHECK_FALSE(rowsum_check(allneg, false).passed);

    const Tensor hard = matrix_tensor({{1, -2}, {-2, 1}});
    CHECK_FALSE(rowsum_check(hard, false).passed);
    CHECK_FALSE(rowsum_check(hard, true).passed);
}

TEST_CASE("feasibility_search: pinned cases") {
    const Tensor nd = neg_diag_tensor();
    const auto r1 = feasibility_search(nd, IndexSet::singleton(1, 2), SearchMode::StrictNeg, {});
    CHECK(r1.feasible == Feasible::Yes);
    CHECK(r1.point[0] == doctest::Approx(1.0));
    CHECK(r1.best_value == doctest::Approx(-1.0));

    const Tensor zero2 = generate({GenKind::Zero, 2, 2, 0, {}});
    const auto r2 = feasibility_search(zero2, IndexSet::full(2), SearchMode::NonPos, {});
    CHECK(r2.feasible == Feasible::Yes);
    const auto r3 = feasibility_search(zero2, IndexSet::full(2), SearchMode::StrictNeg, {});
    CHECK(r3.feasible == Feasible::No); // exact order-2 path

    const Tensor zero3 = generate({GenKind::Zero, 3, 2, 0, {}});
    const auto r4 = feasibility_search(zero3, IndexSet::full(2), SearchMode::NonPos, {});
    CHECK(r4.feasible == Feasible::Yes);

    const Tensor off = matrix_tensor({{0, -1}, {-1, 0}});
    const auto r5 = feasibility_search(off, IndexSet::full(2), SearchMode::StrictNeg, {});
    CHECK(r5.feasible == Feasible::Yes);
    CHECK(r5.best_value == doctest::Approx(-0.5).epsilon(1e-9));
    CHECK(r5.point[0] == doctest::Approx(0.5).epsilon(1e-9));

    CHECK_THROWS_AS(feasibility_search(off, IndexSet::full(2), SearchMode::NonPos, {0}), Error);
}

TEST_CASE("classify_semi_positive: pinned verdicts") {
    CHECK(classify_semi_positive(generate({GenKind::Identity, 3, 2, 0, {}})).status ==
          Status::Holds);
    CHECK(classify_semi_positive(generate({GenKind::Zero, 3, 3, 0, {}})).status == Status::Holds);

    const Tensor hard = matrix_tensor({{1, -2}, {-2, 1}});
    const Verdict v = classify_semi_positive(hard);
    REQUIRE(v.status == Status::Fails);
    REQUIRE(v.witness.has_value());
    CHECK(refutes_semi_positive(hard, *v.witness, 1e-8));
    REQUIRE(v.witness_set.has_value());
    CHECK(*v.witness_set == std::vector<int>{1, 2});
    CHECK((*v.witness)[0] == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("classify_strictly_semi_positive: pinned verdicts") {
    CHECK(classify_strictly_semi_positive(generate({GenKind::Identity, 3, 2, 0, {}})).status ==
          Status::Holds);

    const Verdict vz = classify_strictly_semi_positive(generate({GenKind::Zero, 3, 2, 0, {}}));
    REQUIRE(vz.status == Status::Fails);
    REQUIRE(vz.witness.has_value());
    CHECK((*vz.witness)[0] == doctest::Approx(1.0));
    CHECK(*vz.witness_set == std::vector<int>{1});

    CHECK(classify_strictly_semi_positive(matrix_tensor({{1, 3}, {3, 1}})).status == Status::Holds);
}

TEST_CASE("classify_copositive: pinned verdicts") {
    CHECK(classify_copositive(generate({GenKind::Identity, 3, 2, 0, {}}), true).status ==
          Status::Holds);

    const Tensor off = matrix_tensor({{0, -1}, {-1, 0}});
    const Verdict v = classify_copositive(off, false);
    REQUIRE(v.status == Status::Fails);
    REQUIRE(v.witness.has_value());
    CHECK((*v.witness)[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(v.certificate->min_value == doctest::Approx(-0.5).epsilon(1e-8));

    const Tensor zero = generate({GenKind::Zero, 3, 2, 0, {}});
    CHECK(classify_copositive(zero, false).status == Status::Holds);
    const Verdict vs = classify_copositive(zero, true);
    REQUIRE(vs.status == Status::Fails);
    CHECK(refutes_strictly_copositive(zero, *vs.witness, 1e-8));
}

TEST_CASE("witness validity: every Fails verdict revalidates with margin") {
    int fails_seen = 0;
    for (int t = 0; t < 30; ++t) {
        const GenSpec spec{GenKind::SymmetricGaussian, 2 + t % 3, 2 + (t / 3) % 3,
                           1000u + static_cast<std::uint64_t>(t), {}};
        const Tensor a = generate(spec);
        const Verdict v = classify_semi_positive(a);
        if (v.status == Status::Fails) {
            ++fails_seen;
            CHECK(refutes_semi_positive(a, *v.witness, 1e-8));
        }
        const Verdict vs = classify_strictly_semi_positive(a);
        if (vs.status == Status::Fails) CHECK(refutes_strictly_semi_positive(a, *vs.witness, 1e-8));
        const Verdict vc = classify_copositive(a, false);
        if (vc.status == Status::Fails) CHECK(refutes_copositive(a, *vc.witness, 1e-8));
        const Verdict vcs = classify_copositive(a, true);
        if (vcs.status == Status::Fails) CHECK(refutes_strictly_copositive(a, *vcs.witness, 1e-8));
    }
    CHECK(fails_seen > 0); // gaussian draws must exercise the Fails path
}

TEST_CASE("monotone strength: strict Holds implies non-strict Holds") {
    for (int t = 0; t < 20; ++t) {
        const GenSpec spec{t % 2 ? GenKind::DiagBoosted : GenKind::SymmetricGaussian, 2 + t % 3,
                           2 + (t / 2) % 3, 2000u + static_cast<std::uint64_t>(t),
                           t % 2 ? Vec{50.0} : Vec{}};
        const Tensor a = generate(spec);
        if (classify_strictly_semi_positive(a).status == Status::Holds)
            CHECK(classify_semi_positive(a).status == Status::Holds);
    }
}

TEST_CASE("scale invariance of verdict status") {
    for (int t = 0; t < 8; ++t) {
        const GenSpec spec{GenKind::SymmetricGaussian, 2 + t % 3, 2 + t % 2,
                           3000u + static_cast<std::uint64_t>(t), {}};
        const Tensor a = generate(spec);
        for (const double s : {0.5, 3.0}) {
            Tensor b = a;
            for (std::int64_t f = 0; f < b.size(); ++f) b[f] *= s;
            CHECK(classify_semi_positive(b).status == classify_semi_positive(a).status);
            CHECK(classify_strictly_semi_positive(b).status ==
                  classify_strictly_semi_positive(a).status);
        }
    }
}

TEST_CASE("order-2 verdicts agree with the exact rational oracle") {
    for (int t = 0; t < 25; ++t) {
        const int n = 1 + t % 3;
        const Rng rng = Rng::keyed(4000 + t, 1);
        std::vector<std::vector<long long>> m(n, std::vector<long long>(n));
        Tensor a(2, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                m[i][j] = rng.int_at(static_cast<std::uint64_t>(i) * n + j, -3, 3);
                a[static_cast<std::int64_t>(i) * n + j] = static_cast<double>(m[i][j]);
            }
        const OracleVerdict oracle = lcp_oracle_classify(m);
        const Verdict semi = classify_semi_positive(a);
        const Verdict ssemi = classify_strictly_semi_positive(a);
        REQUIRE(semi.status != Status::Unknown);
        REQUIRE(ssemi.status != Status::Unknown);
        CHECK((semi.status == Status::Holds) == oracle.semi_positive);
        CHECK((ssemi.status == Status::Holds) == oracle.strictly_semi_positive);
    }
}

TEST_CASE("principal sub-tensor inheritance on a Holds tensor") {
    const Tensor a = generate({GenKind::DiagBoosted, 3, 3, 7, {50.0}});
    REQUIRE(classify_semi_positive(a).status == Status::Holds);
    for (const std::uint64_t mask : subset_sweep_order(3)) {
        const Tensor sub = principal_subtensor(a, IndexSet::from_mask(mask, 3));
        CHECK(classify_semi_positive(sub).status != Status::Fails);
    }
}

TEST_CASE("degenerate n = 1 reduces to the diagonal sign") {
    CHECK(classify_semi_positive(build_tensor(3, 1, {{{1, 1, 1}, 2.0}})).status == Status::Holds);
    CHECK(classify_semi_positive(build_tensor(3, 1, {{{1, 1, 1}, -2.0}})).status == Status::Fails);
    CHECK(classify_strictly_semi_positive(build_tensor(3, 1, {})).status == Status::Fails);
    CHECK(classify_copositive(build_tensor(2, 1, {{{1, 1}, 5.0}}), true).status == Status::Holds);
}

TEST_CASE("subset sweep order: cardinality then lexicographic") {
    const auto order = subset_sweep_order(3);
    REQUIRE(order.size() == 7);
    CHECK(order[0] == 0b001);
    CHECK(order[1] == 0b010);
    CHECK(order[2] == 0b100);
    CHECK(order[3] == 0b011);
    CHECK(order[4] == 0b101);
    CHECK(order[5] == 0b110);
    CHECK(order[6] == 0b111);
}
