#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "subex/rng.hpp"
#include "subex/scalar_law.hpp"
#include "subex/shapes.hpp"

using namespace subex;
using Catch::Approx;

namespace {

ScalarLaw l1_marginal() { return ConvexShape::l1ball({0.0, 0.0}, 1.0).project(Vec2{1.0, 0.0}); }

}  // namespace

TEST_CASE("quantile: inf-form on the three law kinds") {
    ScalarLaw emp = ScalarLaw::empirical({1, 2, 3, 4});
    CHECK(emp.quantile(0.6) == 3.0);
    CHECK(emp.quantile(0.75) == 3.0);  // boundary level hits the lower atom
    CHECK(emp.quantile(0.750000001) == 4.0);

    ScalarLaw uni = ScalarLaw::uniform(-1.0, 1.0);
    CHECK(uni.quantile(0.75) == Approx(0.5).margin(1e-14));

    CHECK(l1_marginal().quantile(7.0 / 8.0) == Approx(0.5).margin(1e-12));
    CHECK_THROWS_AS(emp.quantile(0.0), std::invalid_argument);
    CHECK_THROWS_AS(emp.quantile(1.0), std::invalid_argument);
}

TEST_CASE("cdf: right-continuous step and smooth forms") {
    ScalarLaw emp = ScalarLaw::empirical({1, 2, 3, 4});
    CHECK(emp.cdf(2.5) == Approx(0.5));
    CHECK(emp.cdf(2.0) == Approx(0.5));
    CHECK(emp.cdf(0.0) == 0.0);
    CHECK(emp.cdf(9.0) == 1.0);

    CHECK(ScalarLaw::uniform(-1.0, 1.0).cdf(0.0) == Approx(0.5));
    CHECK(l1_marginal().cdf(0.5) == Approx(0.875).margin(1e-12));
}

TEST_CASE("quantile_integral: exact values and additivity") {
    ScalarLaw emp = ScalarLaw::empirical({1, 2, 3, 4});
    CHECK(emp.quantile_integral(0.5, 1.0) == Approx(1.75).margin(1e-14));
    CHECK(ScalarLaw::uniform(0.0, 1.0).quantile_integral(0.0, 1.0) == Approx(0.5).margin(1e-14));
    CHECK(l1_marginal().quantile_integral(0.5, 1.0) == Approx(1.0 / 6.0).margin(1e-13));
    CHECK_THROWS_AS(emp.quantile_integral(0.7, 0.7), std::invalid_argument);

    Rng rng(7);
    for (int t = 0; t < 30; ++t) {
        ScalarLaw law = (t % 3 == 0)   ? ScalarLaw::ball_marginal(2, 1.3, 0.2)
                        : (t % 3 == 1) ? ScalarLaw::uniform(-0.3, 2.0)
                                       : ScalarLaw::empirical({rng.uniform(-2, 0),
                                                               rng.uniform(0, 1),
                                                               rng.uniform(1, 3)});
        double a = rng.uniform(0.0, 0.4), b = rng.uniform(0.45, 0.7), c = rng.uniform(0.75, 1.0);
        CHECK(law.quantile_integral(a, c) ==
              Approx(law.quantile_integral(a, b) + law.quantile_integral(b, c)).margin(1e-12));
    }
}

TEST_CASE("quantile/cdf Galois pair on a 1000-point grid") {
    std::vector<ScalarLaw> laws;
    laws.push_back(ScalarLaw::empirical({-1.0, 0.25, 0.5, 2.0}, {0.4, 0.1, 0.2, 0.3}));
    laws.push_back(ScalarLaw::uniform(-2.0, 1.0));
    laws.push_back(ScalarLaw::ball_marginal(3, 2.0, -0.5));
    laws.push_back(l1_marginal());
    for (const auto& law : laws) {
        for (int i = 1; i < 1000; ++i) {
            double t = double(i) / 1000.0;
            CHECK(law.cdf(law.quantile(t)) >= t - 1e-12);
        }
        for (int i = 1; i < 100; ++i) {
            double s = law.ess_inf() +
                       (law.ess_sup() - law.ess_inf()) * double(i) / 100.0;
            double F = law.cdf(s);
            if (F > 0.0 && F < 1.0) CHECK(law.quantile(F) <= s + 1e-12);
        }
    }
}

TEST_CASE("max_of: quantile reparametrization is exact") {
    ScalarLaw uni = ScalarLaw::uniform(0.0, 1.0);
    ScalarLaw m2 = uni.max_of(2);
    CHECK(m2.mean() == Approx(2.0 / 3.0).margin(1e-12));
    CHECK(m2.cdf(0.5) == Approx(0.25).margin(1e-12));
    for (double t : {0.1, 0.37, 0.62, 0.9})
        CHECK(m2.quantile(t) == Approx(uni.quantile(std::sqrt(t))).margin(1e-13));

    auto atoms = ScalarLaw::empirical({0.0, 1.0}).max_of(2).atoms();
    REQUIRE(atoms.size() == 2);
    CHECK(atoms[0].second == Approx(0.25).margin(1e-14));
    CHECK(atoms[1].second == Approx(0.75).margin(1e-14));

    ScalarLaw same = ScalarLaw::empirical({-1.0, 2.0}, {0.3, 0.7}).max_of(1);
    CHECK(same.quantile(0.2) == -1.0);
    CHECK_THROWS_AS(uni.max_of(0), std::invalid_argument);
}

TEST_CASE("project_shape: closed-form marginals") {
    SECTION("l1 ball x-marginal quantiles") {
        ScalarLaw law = l1_marginal();
        for (double t : {0.55, 0.7, 0.9, 0.99})
            CHECK(law.quantile(t) == Approx(1.0 - std::sqrt(2.0 * (1.0 - t))).margin(1e-12));
    }
    SECTION("thin box marginal is uniform") {
        ScalarLaw law = ConvexShape::box({0.0, 0.0}, {0.8, 0.05}).project(Vec2{1.0, 0.0});
        for (double t : {0.2, 0.5, 0.85})
            CHECK(law.quantile(t) == Approx((2.0 * t - 1.0) * 0.8).margin(1e-13));
    }
    SECTION("disk marginal is the semicircle law") {
        ScalarLaw law = ConvexShape::ball({0.0, 0.0}, 1.0).project(Vec2{0.0, 1.0});
        auto cdf_exact = [](double x) {
            return 0.5 + (x * std::sqrt(1.0 - x * x) + std::asin(x)) / kPi;
        };
        for (double x : {-0.8, -0.3, 0.0, 0.4, 0.9})
            CHECK(law.cdf(x) == Approx(cdf_exact(x)).margin(1e-12));
    }
    SECTION("3-ball marginal cdf is (2 + 3x - x^3)/4") {
        ScalarLaw law = ConvexShape::ball({0.0, 0.0, 0.0}, 1.0).project({0.0, 0.0, 1.0});
        for (double x : {-0.7, -0.2, 0.1, 0.6})
            CHECK(law.cdf(x) == Approx((2.0 + 3.0 * x - x * x * x) / 4.0).margin(1e-12));
    }
    SECTION("3-box diagonal marginal from iterated convolution") {
        ScalarLaw law = ConvexShape::box({0.0, 0.0, 0.0}, {1.0, 1.0, 1.0})
                            .project({1.0, 1.0, 1.0});
        CHECK(law.mean() == Approx(0.0).margin(1e-12));
        CHECK(law.cdf(0.0) == Approx(0.5).margin(1e-12));
        double second = law.expectation_of([](double x) { return x * x; });
        CHECK(second == Approx(1.0 / 3.0).margin(1e-9));  // sum of three Var = 1/9 each
        CHECK(law.ess_sup() == Approx(std::sqrt(3.0)).margin(1e-9));
    }
    SECTION("ellipse marginal is a scaled semicircle") {
        ScalarLaw law = ConvexShape::ellipse({0.5, 0.0}, 4.0, 0.0, 1.0).project(Vec2{1.0, 0.0});
        CHECK(law.ess_sup() == Approx(2.5).margin(1e-12));
        CHECK(law.quantile(0.5) == Approx(0.5).margin(1e-10));
    }
    SECTION("degenerate direction is rejected") {
        CHECK_THROWS_AS(ConvexShape::ball({0.0, 0.0}, 1.0).project({0.0, 0.0}),
                        std::invalid_argument);
    }
}

TEST_CASE("central symmetry of projection laws: q_t = -q_{1-t}") {
    std::vector<ScalarLaw> laws;
    laws.push_back(ConvexShape::box({0.0, 0.0}, {1.0, 0.4}).project(Vec2{0.6, 0.8}));
    laws.push_back(ConvexShape::ball({0.0, 0.0}, 1.5).project(Vec2{1.0, 1.0}));
    laws.push_back(ConvexShape::ellipse({0.0, 0.0}, 2.0, 0.3, 1.0).project(Vec2{0.0, 1.0}));
    laws.push_back(l1_marginal());
    for (const auto& law : laws)
        for (double t : {0.51, 0.6, 0.75, 0.9, 0.99})
            CHECK(law.quantile(t) == Approx(-law.quantile(1.0 - t)).margin(1e-10));
}

TEST_CASE("projection law matches sampled projections (DKW)") {
    std::vector<Vec2> verts = {{1.2, 0.0}, {0.3, 1.0}, {-1.0, 0.4}, {-0.6, -0.9}, {0.7, -0.7}};
    ConvexShape poly = ConvexShape::polygon(verts);
    Vec2 u = normalized({0.7, 0.3});
    ScalarLaw law = poly.project(u);

    const size_t n = 1000000;
    WeightedSample sample = poly.sample_uniform(n, 42);
    std::vector<double> proj(n);
    for (size_t i = 0; i < n; ++i)
        proj[i] = u.x * sample.points[i][0] + u.y * sample.points[i][1];
    std::sort(proj.begin(), proj.end());
    double ks = 0.0;
    for (size_t i = 0; i < n; i += 997) {
        double F = law.cdf(proj[i]);
        ks = std::max(ks, std::abs(F - double(i + 1) / double(n)));
    }
    CHECK(ks <= 3.0 * std::sqrt(std::log(2.0 / 0.001) / (2.0 * double(n))));
}

TEST_CASE("sample_uniform: containment and moments") {
    SECTION("box containment") {
        WeightedSample s = ConvexShape::box({0.0, 0.0}, {1.0, 1.0}).sample_uniform(4, 7);
        REQUIRE(s.size() == 4);
        for (const auto& p : s.points) {
            CHECK(std::abs(p[0]) <= 1.0);
            CHECK(std::abs(p[1]) <= 1.0);
        }
    }
    SECTION("ball sample mean near the origin (CLT bound)") {
        WeightedSample s = ConvexShape::ball({0.0, 0.0}, 1.0).sample_uniform(100000, 1);
        auto b = s.barycenter();
        CHECK(std::abs(b[0]) <= 0.02);
        CHECK(std::abs(b[1]) <= 0.02);
    }
    SECTION("unit-square polygon sampling: Kolmogorov distance of x-marginal") {
        ConvexShape sq = ConvexShape::polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
        WeightedSample s = sq.sample_uniform(100000, 1);
        std::vector<double> xs(s.size());
        for (size_t i = 0; i < s.size(); ++i) xs[i] = s.points[i][0];
        std::sort(xs.begin(), xs.end());
        double ks = 0.0;
        for (size_t i = 0; i < xs.size(); i += 41)
            ks = std::max(ks, std::abs(xs[i] - double(i + 1) / double(xs.size())));
        CHECK(ks <= 0.01);
    }
    SECTION("l1 ball sampling stays inside") {
        WeightedSample s = ConvexShape::l1ball({0.0, 0.0}, 1.0).sample_uniform(2000, 3);
        for (const auto& p : s.points) CHECK(std::abs(p[0]) + std::abs(p[1]) <= 1.0 + 1e-12);
    }
    SECTION("determinism in the seed") {
        auto a = ConvexShape::ball({0.0, 0.0}, 1.0).sample_uniform(50, 9);
        auto b = ConvexShape::ball({0.0, 0.0}, 1.0).sample_uniform(50, 9);
        for (size_t i = 0; i < 50; ++i) CHECK(a.points[i][0] == b.points[i][0]);
    }
}

TEST_CASE("upper partials and expectation functionals") {
    ScalarLaw emp = ScalarLaw::empirical({0.0, 1.0});
    CHECK(emp.upper_partial(0.5) == Approx(0.25).margin(1e-14));
    CHECK(emp.upper_partial_pow(0.5, 2.0) == Approx(0.125).margin(1e-14));

    ScalarLaw uni = ScalarLaw::uniform(0.0, 1.0);
    CHECK(uni.upper_partial(0.25) == Approx(0.5 * 0.75 * 0.75).margin(1e-12));
    CHECK(uni.expectation_of([](double x) { return x * x; }) == Approx(1.0 / 3.0).margin(1e-10));

    ScalarLaw disk = ConvexShape::ball({0.0, 0.0}, 1.0).project(Vec2{1.0, 0.0});
    CHECK(disk.upper_partial(0.0) == Approx(2.0 / (3.0 * kPi)).margin(1e-13));
}

TEST_CASE("empirical construction validates and merges atoms") {
    CHECK_THROWS_AS(ScalarLaw::empirical({1.0, 2.0}, {0.5, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(ScalarLaw::empirical({1.0}, {-1.0}), std::invalid_argument);
    auto merged = ScalarLaw::empirical({1.0, 1.0, 2.0}, {0.25, 0.25, 0.5}).atoms();
    REQUIRE(merged.size() == 2);
    CHECK(merged[0].second == Approx(0.5));
}
