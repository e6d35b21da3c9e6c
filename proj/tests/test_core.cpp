#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gridsched/core.hpp"
#include "gridsched/levy.hpp"
#include "gridsched/rng.hpp"

using namespace gridsched;

TEST_CASE("rng streams replay identically and separate by stream id") {
    RngStream a(42, 0);
    RngStream b(42, 0);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    RngStream c(42, 1);
    RngStream d(42, 0);
    int differing = 0;
    for (int i = 0; i < 64; ++i)
        if (c.next_u64() != d.next_u64()) ++differing;
    CHECK(differing > 60);
}

TEST_CASE("uniform draws stay inside their interval") {
    RngStream rng(7);
    for (int i = 0; i < 1000; ++i) {
        const double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const long v = rng.uniform_int(-3, 3);
        CHECK(v >= -3);
        CHECK(v <= 3);
    }
}

TEST_CASE("normal draws have roughly standard moments") {
    RngStream rng(11);
    double sum = 0.0, sumsq = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        sum += z;
        sumsq += z * z;
    }
    CHECK(std::abs(sum / n) < 0.01);
    CHECK(std::abs(sumsq / n - 1.0) < 0.02);
}

TEST_CASE("levy_step is deterministic per seed and respects dim") {
    RngStream a(3), b(3);
    const auto va = levy_step(a, 1.5, 3);
    const auto vb = levy_step(b, 1.5, 3);
    CHECK(va == vb);
    CHECK(va.size() == 3);
    CHECK(levy_step(a, 1.5, 0).empty());
    RngStream c(5);
    CHECK_THROWS_AS(levy_step(c, 0.0, 2), ParameterError);
    CHECK_THROWS_AS(levy_step(c, 2.5, 2), ParameterError);
}

TEST_CASE("levy steps are heavier-tailed than an IQR-matched gaussian") {
    RngStream rng(2024);
    const int n = 100000;
    std::vector<double> steps(n);
    for (double& s : steps) s = levy_step(rng, 1.5);

    std::vector<double> sorted = steps;
    std::sort(sorted.begin(), sorted.end());
    const double iqr = sorted[3 * n / 4] - sorted[n / 4];
    const double sigma = iqr / 1.349;  // gaussian IQR is 1.349 sigma

    const double threshold = 10.0;
    int heavy = 0;
    for (double s : steps)
        if (std::abs(s) > threshold) ++heavy;
    const double levy_tail = static_cast<double>(heavy) / n;
    const double gauss_tail = std::erfc(threshold / (sigma * std::sqrt(2.0)));
    CHECK(levy_tail > gauss_tail);
    CHECK(levy_tail > 0.0);
}

TEST_CASE("levy cdf endpoints") {
    CHECK(levy_cdf(0.0) == 0.0);
    CHECK(levy_cdf(-1.0) == 0.0);
    CHECK(levy_cdf(1e12) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("discrete levy transform matches the frozen reference values") {
    LevyParams params;  // lambda 1.5, phi 1, c 1

    SUBCASE("singleton renormalizes to one") {
        const auto out = discrete_levy_probs(std::vector<double>{1.0}, params);
        REQUIRE(out.size() == 1);
        CHECK(out[0] == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("two equal inputs, reference pair") {
        // erfc chain evaluated independently at 30 digits:
        //   masses [erfc(1), erfc(sqrt(1/2)) - erfc(1)] renormalized
        const auto out = discrete_levy_probs(std::vector<double>{0.5, 0.5}, params);
        REQUIRE(out.size() == 2);
        CHECK(out[0] == doctest::Approx(0.49572643562829074).epsilon(1e-12));
        CHECK(out[1] == doctest::Approx(0.50427356437170926).epsilon(1e-12));
        CHECK(out[0] + out[1] == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("uniform five-way input, reference masses") {
        const std::vector<double> in(5, 0.2);
        const auto out = discrete_levy_probs(in, params);
        const std::vector<double> expected = {0.0798817500504, 0.278903399466,
                                              0.261130036349, 0.210667069535,
                                              0.1694177446};
        REQUIRE(out.size() == expected.size());
        for (std::size_t i = 0; i < out.size(); ++i)
            CHECK(out[i] == doctest::Approx(expected[i]).epsilon(1e-9));
    }

    SUBCASE("re-application changes the masses; the transform is not a fixed point") {
        const auto once = discrete_levy_probs(std::vector<double>{0.7, 0.3}, params);
        const auto twice = discrete_levy_probs(once, params);
        CHECK(once[0] != doctest::Approx(twice[0]).epsilon(1e-15));
    }

    SUBCASE("input validation") {
        CHECK_THROWS_AS(discrete_levy_probs(std::vector<double>{0.3, 0.7}, params),
                        ParameterError);  // not sorted descending
        CHECK_THROWS_AS(discrete_levy_probs(std::vector<double>{0.6, 0.6}, params),
                        ParameterError);  // does not sum to 1
        CHECK_THROWS_AS(discrete_levy_probs(std::vector<double>{}, params),
                        ParameterError);
    }
}

TEST_CASE("discrete levy selection picks the minimal reaching index") {
    const std::vector<double> probs = {0.5, 0.3, 0.2};
    CHECK(discrete_levy_select(probs, 0.6) == 1);   // 0.5 < 0.6 <= 0.8
    CHECK(discrete_levy_select(probs, 0.5) == 0);   // boundary uses >=
    CHECK(discrete_levy_select(std::vector<double>{1.0}, 0.999) == 0);
    CHECK(discrete_levy_select(std::vector<double>{0.5, 0.5}, 0.5) == 0);
    CHECK(discrete_levy_select(probs, 0.999999) == 2);
    CHECK_THROWS_AS(discrete_levy_select(std::vector<double>{}, 0.5), ParameterError);
}

TEST_CASE("deb comparison follows feasibility-first rules") {
    // feasible vs infeasible
    CHECK(deb_compare({5.0, 0}, {3.0, 1}) < 0);
    // both feasible: lower fitness
    CHECK(deb_compare({5.0, 0}, {3.0, 0}) > 0);
    // both infeasible: fewer violations
    CHECK(deb_compare({1.0, 2}, {9.0, 1}) > 0);
    // exact tie retains the first argument
    const Candidate a{2.0, 0}, b{2.0, 0};
    CHECK(deb_compare(a, b) == 0);
    CHECK(&deb_select(a, b) == &a);
}

TEST_CASE("deb comparison is a total preorder over random candidates") {
    RngStream rng(99);
    std::vector<Candidate> cands(50);
    for (Candidate& c : cands) {
        c.fitness = rng.uniform(0.0, 10.0);
        c.violations = rng.uniform_int(0, 3);
    }
    for (const Candidate& a : cands)
        for (const Candidate& b : cands) {
            CHECK(deb_compare(a, b) == -deb_compare(b, a));
            for (const Candidate& c : cands) {
                if (deb_compare(a, b) <= 0 && deb_compare(b, c) <= 0)
                    CHECK(deb_compare(a, c) <= 0);
            }
        }
}

TEST_CASE("trajectory recorder keeps the best-so-far monotone") {
    TrajectoryRecorder rec;
    rec.observe(5.0);
    rec.end_iteration();
    rec.observe(7.0);
    rec.end_iteration();
    rec.observe(3.0);
    rec.end_iteration();
    const auto& t = rec.trajectory();
    REQUIRE(t.size() == 3);
    CHECK(t[0] == 5.0);
    CHECK(t[1] == 5.0);
    CHECK(t[2] == 3.0);
    for (std::size_t i = 1; i < t.size(); ++i) CHECK(t[i] <= t[i - 1]);
}

TEST_CASE("termination validation") {
    Termination t;
    t.max_iterations = 0;
    CHECK_THROWS_AS(t.validate(), ParameterError);
    t.max_iterations = 10;
    t.stagnation_window = 0;
    CHECK_THROWS_AS(t.validate(), ParameterError);
    t.stagnation_window = 5;
    t.max_evaluations = 0;
    CHECK_THROWS_AS(t.validate(), ParameterError);
    t.max_evaluations = 100;
    CHECK_NOTHROW(t.validate());
}
