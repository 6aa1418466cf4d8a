#include "doctest.h"

#include "tcpkit/classify.hpp"
#include "tcpkit/generate.hpp"
#include "tcpkit/parallel.hpp"
#include "tcpkit/tcp.hpp"
#include "tcpkit/tensor.hpp"

#include "helpers.hpp"

using namespace tcpkit;
using namespace tcpkit::testutil;

// The OpenMP kernels must be bit-identical to the serial reference: same
// multiplication order within each term, same accumulation order within each
// row, rows combined in index order.

TEST_CASE("map_apply: openmp kernel == serial reference, above and below the cutover") {
    struct Case {
        int order, dim;
    };
    for (const Case c : {Case{2, 16}, Case{3, 5}, Case{2, 200}, Case{3, 30}, Case{4, 12}}) {
        const Tensor a = random_tensor(c.order, c.dim, 17u + c.order * 31u + c.dim);
        const Vec x = random_vec(c.dim, 23u + c.dim);
        const Vec fast = map_apply(a, x);
        const Vec slow = ref::map_apply(a, x);
        REQUIRE(fast.size() == slow.size());
        for (std::size_t i = 0; i < fast.size(); ++i) CHECK(fast[i] == slow[i]);
    }
}

TEST_CASE("poly_eval: openmp kernel == serial reference") {
    for (const int dim : {3, 24, 48}) {
        for (const int order : {2, 3}) {
            const Tensor a = random_tensor(order, dim, 41u + dim * 3u + order);
            const Vec x = random_vec(dim, 43u + dim);
            CHECK(poly_eval(a, x) == ref::poly_eval(a, x));
        }
    }
}

TEST_CASE("map_jacobian: openmp kernel == serial reference") {
    for (const int dim : {4, 9}) {
        for (const int order : {2, 3, 4}) {
            const Tensor a = random_tensor(order, dim, 51u + dim + order);
            const Vec x = random_vec(dim, 53u + dim);
            const Matrix fast = map_jacobian(a, x);
            const Matrix slow = ref::map_jacobian(a, x);
            for (std::size_t i = 0; i < fast.a.size(); ++i) CHECK(fast.a[i] == slow.a[i]);
        }
    }
}

TEST_CASE("repeated classification runs are identical") {
    const Tensor a = generate({GenKind::SymmetricGaussian, 3, 4, 77, {}});
    const Verdict v1 = classify_semi_positive(a);
    const Verdict v2 = classify_semi_positive(a);
    CHECK(v1.status == v2.status);
    CHECK(v1.evals == v2.evals);
    CHECK(v1.witness.has_value() == v2.witness.has_value());
    if (v1.witness) CHECK(*v1.witness == *v2.witness);
}

TEST_CASE("repeated solve runs are identical") {
    const TcpInstance inst = gen_instance({GenKind::DiagBoosted, 3, 4, 5, {50.0}}, QKind::Mixed, 6);
    const SolveReport r1 = solve_support_enum(inst);
    const SolveReport r2 = solve_support_enum(inst);
    REQUIRE(r1.solutions.size() == r2.solutions.size());
    for (std::size_t i = 0; i < r1.solutions.size(); ++i)
        CHECK(r1.solutions[i].x == r2.solutions[i].x);
}

TEST_CASE("effective_threads respects the environment cap") {
    CHECK(effective_threads() >= 1);
}
