#include "doctest.h"

#include <cmath>
#include <limits>

#include "tcpkit/generate.hpp"
#include "tcpkit/lp.hpp"
#include "tcpkit/minimize.hpp"

#include "helpers.hpp"

using namespace tcpkit;
using namespace tcpkit::testutil;

TEST_CASE("proj_simplex: feasibility and fixed points") {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
        const Vec v = random_vec(5, seed, -2.0, 2.0);
        const Vec p = proj_simplex(v);
        double sum = 0.0;
        for (double x : p) {
            CHECK(x >= 0.0);
            sum += x;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
    const Vec onpoint{0.25, 0.75};
    const Vec p = proj_simplex(onpoint);
    CHECK(p[0] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("simplex grid: count matches enumeration and points are feasible") {
    for (int r : {1, 2, 3, 4}) {
        for (int g : {1, 4, 7}) {
            std::int64_t seen = 0;
            for_each_simplex_grid_point(r, g, [&](const Vec& p) {
                ++seen;
                double s = 0.0;
                for (double x : p) {
                    CHECK(x >= 0.0);
                    s += x;
                }
                CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
            });
            CHECK(seen == simplex_grid_count(r, g));
        }
    }
}

TEST_CASE("monomial_simplex_max") {
    const std::vector<int> pure{3};
    CHECK(monomial_simplex_max(pure, 3) == doctest::Approx(1.0));
    const std::vector<int> split{1, 1};
    CHECK(monomial_simplex_max(split, 2) == doctest::Approx(0.25));
    const std::vector<int> cube{1, 1, 1};
    CHECK(monomial_simplex_max(cube, 3) == doctest::Approx(1.0 / 27.0));
}

TEST_CASE("lp_min_max_component: pinned small cases") {
    Matrix off(2, 2);
    off(0, 1) = -1.0;
    off(1, 0) = -1.0;
    const MaxCompMin r1 = lp_min_max_component(off);
    CHECK(r1.value == doctest::Approx(-0.5).epsilon(1e-10));
    CHECK(r1.point[0] == doctest::Approx(0.5).epsilon(1e-9));

    Matrix id(2, 2);
    id(0, 0) = id(1, 1) = 1.0;
    CHECK(lp_min_max_component(id).value == doctest::Approx(0.5).epsilon(1e-10));

    Matrix hard(2, 2);
    hard(0, 0) = 1.0;
    hard(0, 1) = -2.0;
    hard(1, 0) = -2.0;
    hard(1, 1) = 1.0;
    CHECK(lp_min_max_component(hard).value == doctest::Approx(-0.5).epsilon(1e-10));

    Matrix one(1, 1);
    one(0, 0) = -3.0;
    CHECK(lp_min_max_component(one).value == doctest::Approx(-3.0));
}

TEST_CASE("simplex_minimize: pinned minima") {
    const Tensor id32 = generate({GenKind::Identity, 3, 2, 0, {}});
    const MinReport r1 = simplex_minimize(id32);
    CHECK(std::abs(r1.min_value - 0.25) <= 1e-8);
    CHECK(r1.minimizer[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(r1.kkt_support <= 1e-6);
    CHECK(r1.lambda == doctest::Approx(r1.min_value).epsilon(1e-9));

    const Tensor off = matrix_tensor({{0, -1}, {-1, 0}});
    const MinReport r2 = simplex_minimize(off);
    CHECK(std::abs(r2.min_value + 0.5) <= 1e-8);
    CHECK(r2.minimizer[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(r2.kkt_support <= 1e-6);
}

TEST_CASE("simplex_minimize: grid oracle on random symmetric tensors") {
    for (std::uint64_t seed : {10u, 11u, 12u, 13u, 14u}) {
        const Tensor s = generate({GenKind::SymmetricGaussian, 3, 3, seed, {}});
        const MinReport rep = simplex_minimize(s);
        // 210-point deterministic grid as the independent upper-bound oracle
        double grid_min = std::numeric_limits<double>::infinity();
        for_each_simplex_grid_point(3, 19, [&](const Vec& p) {
            grid_min = std::min(grid_min, poly_eval(s, p));
        });
        CHECK(rep.min_value <= grid_min + 1e-10);
        CHECK(rep.kkt_support <= 1e-6);
        // the minimizer is a genuine simplex point
        double sum = 0.0;
        for (double v : rep.minimizer) {
            CHECK(v >= 0.0);
            sum += v;
        }
        CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
}

TEST_CASE("simplex_min_exact_m2: stationary enumeration") {
    const Tensor off = matrix_tensor({{0, -1}, {-1, 0}});
    const auto r = simplex_min_exact_m2(off);
    REQUIRE(r.has_value());
    CHECK(r->exact);
    CHECK(r->value == doctest::Approx(-0.5).epsilon(1e-12));

    const Tensor id = matrix_tensor({{1, 0}, {0, 1}});
    const auto ri = simplex_min_exact_m2(id);
    REQUIRE(ri.has_value());
    CHECK(ri->exact);
    CHECK(ri->value == doctest::Approx(0.5).epsilon(1e-12));

    // order-3 input is out of scope for the exact route
    CHECK_FALSE(simplex_min_exact_m2(generate({GenKind::Identity, 3, 2, 0, {}})).has_value());
}

TEST_CASE("row_lower_bounds and poly_lower_bound are valid bounds") {
    for (std::uint64_t seed : {21u, 22u, 23u}) {
        const Tensor a = random_tensor(3, 3, seed);
        const Vec lb = row_lower_bounds(a);
        const double plb = poly_lower_bound(a);
        for_each_simplex_grid_point(3, 7, [&](const Vec& p) {
            const Vec y = map_apply(a, p);
            for (int i = 0; i < 3; ++i) CHECK(y[i] >= lb[i] - 1e-12);
            CHECK(poly_eval(a, p) >= plb - 1e-12);
        });
    }
}
