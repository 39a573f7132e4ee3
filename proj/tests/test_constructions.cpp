#include <doctest.h>

#include <cmath>
#include <numbers>

#include "neumann/constants.hpp"
#include "neumann/constructions.hpp"
#include "neumann/suites.hpp"

using namespace neumann;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;

// max |u'' + a u| over 1000 points per piece, relative to the local scale
double ode_defect(const Construction& c) {
    const auto& bp = c.solution.breakpoints();
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
        for (int k = 1; k < 1000; ++k) {
            const double x = bp[i] + (bp[i + 1] - bp[i]) * k / 1000.0;
            const auto s = c.solution(x);
            // between nodes a sampled potential carries its interpolation error
            worst = std::max(worst, std::abs(s[2] + c.potential(x) * s[0]) / (1.0 + c.potential(x)));
        }
    }
    return worst;
}

void check_c1(const ClosedFormSolution& s) {
    for (std::size_t i = 1; i + 1 < s.breakpoints().size(); ++i) {
        const double y = s.breakpoints()[i];
        // extrapolate each side to y so the slope over the probe offset cancels
        const double d = 1e-9;
        const auto l = s(y - d);
        const auto r = s(y + d);
        CHECK(std::abs((l[0] + d * l[1]) - (r[0] - d * r[1])) < 1e-12);
        CHECK(std::abs((l[1] + d * l[2]) - (r[1] - d * r[2])) < 1e-12 * (1.0 + std::abs(l[1])));
    }
}
}  // namespace

TEST_CASE("resonant step: example values and gluing") {
    const Partition part({0.0, 0.2, 0.45, 0.8, 1.0});
    const auto c = resonant_step(part);
    const double want[] = {61.685, 39.478, 20.142, 61.685};
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(c.potential.values()[i] - want[i]) < 1e-3);
    CHECK(std::abs(c.solution.du(0.0)) < 1e-14);
    CHECK(std::abs(c.solution.du(1.0)) < 1e-12);
    check_c1(c.solution);
    CHECK(ode_defect(c) < 1e-8);
    CHECK(std::abs(neumann_residual(c.potential)) <= 1e-8);
}

TEST_CASE("resonant step on the equal partition is lambda_{n+1}") {
    for (int n = 1; n <= 3; ++n) {
        const auto c = resonant_step(Partition::equal(n, 1.0));
        for (double v : c.potential.values()) CHECK(v == Approx(lambda_n(n + 1, 1.0)).epsilon(1e-12));
        for (double x : {0.1, 0.33, 0.9}) CHECK(std::abs(std::abs(c.solution.u(x)) - std::abs(std::cos((n + 1) * pi * x))) < 1e-12);
    }
}

TEST_CASE("resonant step: zeros at odd points, reflection") {
    Rng rng(3);
    for (int c = 0; c < 20; ++c) {
        const int n = 1 + c % 2;
        const auto part = random_partition(rng, n, 1.0);
        const auto built = resonant_step(part);
        check_c1(built.solution);
        for (std::size_t i = 1; i < part.points().size(); i += 2) CHECK(std::abs(built.solution.u(part.points()[i])) < 1e-12);
        for (std::size_t i = 0; i < part.points().size(); i += 2) CHECK(std::abs(built.solution.du(part.points()[i])) < 1e-10);

        std::vector<double> rp;
        for (auto it = part.points().rbegin(); it != part.points().rend(); ++it) rp.push_back(1.0 - *it);
        rp.front() = 0.0;
        const auto mirror = resonant_step(Partition(rp));
        for (double x : {0.13, 0.5, 0.77}) {
            const double lhs = mirror.solution.u(1.0 - x) / mirror.solution.u(1.0);
            const double rhs = built.solution.u(x) / built.solution.u(0.0);
            CHECK(std::abs(lhs - rhs) < 1e-10);
        }
    }
}

TEST_CASE("constant resonant family") {
    const auto c2 = constant_resonant(2, 1.0);
    CHECK(c2.potential(0.3) == Approx(4 * pi * pi));
    CHECK(std::abs(neumann_residual(c2.potential)) <= 1e-9);
    const auto c1 = constant_resonant(1, pi);
    CHECK(c1.potential(1.0) == Approx(1.0).epsilon(1e-15));
    CHECK(c1.solution.u(1.0) == Approx(std::cos(1.0)).epsilon(1e-15));
    CHECK(ode_defect(constant_resonant(5, 1.0)) < 1e-8);
    CHECK_THROWS(constant_resonant(0, 1.0));
}

TEST_CASE("minimizing sequence") {
    for (int n = 1; n <= 2; ++n) {
        const double eps = 1e-2;
        const auto c = minimizing_sequence(n, 1.0, eps);
        const double ln = lambda_n(n, 1.0);
        CHECK(std::abs(neumann_residual(c.potential)) <= 1e-7);
        CHECK(dominates(c.potential, ln).holds);
        // exactly lambda_n away from the correction zones
        const double h = 1.0 / (2 * (n + 1));
        for (double x : {eps + 1e-9, 0.5 * (eps + h), h - 1e-9}) CHECK(c.potential(x) == ln);
        CHECK(std::abs(c.solution.du(0.0)) < 1e-12);
        CHECK(std::abs(c.solution.du(1.0)) < 1e-10);
        check_c1(c.solution);
        CHECK(ode_defect(c) < 1e-8);
    }
    CHECK_THROWS(minimizing_sequence(1, 1.0, 0.25));
    CHECK_THROWS(minimizing_sequence(1, 1.0, 0.0));
}

TEST_CASE("minimizing sequence approaches beta1 from above as eps shrinks") {
    for (int n = 1; n <= 2; ++n) {
        double prev_excess = 1e300;
        double prev_gap = 1e300;
        for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
            const auto c = minimizing_sequence(n, 1.0, eps);
            const double excess = l1_excess(c.potential, lambda_n(n, 1.0), {0.0, 1.0});
            const double gap = excess - beta1(n, 1.0);
            CAPTURE(n);
            CAPTURE(eps);
            CHECK(excess < prev_excess);
            CHECK(gap > 0.0);
            CHECK(gap < prev_gap);
            prev_excess = excess;
            prev_gap = gap;
        }
    }
}

TEST_CASE("non-attainment witness") {
    CHECK(non_attainment_witness(1, 1.0) == Approx(pi).epsilon(1e-14));
    CHECK(non_attainment_witness(2, 1.0) == Approx(3.62759872846843570).epsilon(1e-14));
    for (int n = 1; n <= 5; ++n) CHECK(non_attainment_witness(n, 1.0) > 0.0);
}

TEST_CASE("L1 counterexample") {
    const Partition part({0.0, 0.2, 0.45, 0.8, 1.0});
    const auto a = l1_counterexample(part, 1e-3);
    // sum of pi cot(pi d_i) minus four eps, mpmath
    CHECK(l1_excess(a, pi * pi, {0.0, 1.0}) == Approx(13.3903767223106 - 4e-3).epsilon(1e-12));
    CHECK(l1_excess(a, pi * pi, {0.0, 1.0}) > beta1(1, 1.0));
    CHECK(check_l1_partition(a, part).unique());
    CHECK_FALSE(check_l1_global(a, 1).unique());
    CHECK_THROWS_AS(l1_counterexample(Partition::equal(1, 1.0), 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(l1_counterexample(part, 10.0), std::invalid_argument);
}
