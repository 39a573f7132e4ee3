#include <doctest.h>

#include <cmath>
#include <numbers>

#include "neumann/constants.hpp"
#include "neumann/constructions.hpp"
#include "neumann/oracle.hpp"

using namespace neumann;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;

// Exact value of the discrete problem: (sin w / h) cot(N w) with 2 cos w = 2 - M h^2.
double discrete_exact(double M, double len, int N) {
    const double h = len / N;
    const double w = std::acos(1.0 - M * h * h / 2.0);
    return std::sin(w) / h / std::tan(N * w);
}
}  // namespace

TEST_CASE("discrete J minimization") {
    const auto r = discrete_j_min(1.0, {0.0, pi / 3}, 2000);
    CHECK(std::abs(r.value - 0.5773503) / 0.5773503 < 1e-4);
    CHECK(r.minimizer[0] == 0.0);
    CHECK(r.minimizer[2000] == 1.0);
    CHECK(r.residual < 1e-10);
    CHECK(r.value == Approx(discrete_exact(1.0, pi / 3, 2000)).epsilon(1e-9));

    const auto b = discrete_j_min(pi * pi / 4, {0.0, 1.0}, 2000);
    CHECK(std::abs(b.value) < 1e-4);
    for (int j = 0; j <= 2000; j += 100) CHECK(std::abs(b.minimizer[j] - std::sin(pi * j / 4000.0)) < 1e-4);

    CHECK_THROWS_AS(discrete_j_min(1.0, {0.0, 1.0}, 99), std::invalid_argument);
    CHECK_THROWS_AS(discrete_j_min(3.0, {0.0, 1.0}, 200), DomainError);
}

TEST_CASE("discrete J converges at second order") {
    const Interval I{0.0, 1.0};
    const double e1 = std::abs(discrete_j_min(0.5, I, 500).value - j_min(0.5, I));
    const double e2 = std::abs(discrete_j_min(0.5, I, 1000).value - j_min(0.5, I));
    const double e3 = std::abs(discrete_j_min(0.5, I, 2000).value - j_min(0.5, I));
    CHECK(e1 / e2 == Approx(4.0).epsilon(0.05));
    CHECK(e2 / e3 == Approx(4.0).epsilon(0.05));
}

TEST_CASE("cotangent-sum minimization") {
    const auto a = numeric_f_min(4, pi, 100000, 1);
    CHECK(std::abs(a.value - 4.0) < 1e-6);
    CHECK(a.violations == 0);
    const auto b = numeric_f_min(3, pi / 2, 10000, 2);
    CHECK(std::abs(b.value - 5.1961524227066318) < 1e-6);
    CHECK(b.minimizer.maxCoeff() - b.minimizer.minCoeff() < 1e-4);
    CHECK_THROWS_AS(numeric_f_min(2, pi, 10000, 1), DomainError);
    CHECK_THROWS_AS(numeric_f_min(4, pi, 100, 1), std::invalid_argument);
}

TEST_CASE("descent leaves the boundary face") {
    Eigen::VectorXd z(2);
    z << pi / 2 - 1e-6, 1e-6;
    const auto path = f_descent(pi / 2, z);
    REQUIRE(path.size() > 2);
    CHECK(path[1][1] > path[0][1]);
    CHECK(std::abs(path.back()[0] - pi / 4) < 1e-6);
    for (const auto& p : path) CHECK(std::abs(p.sum() - pi / 2) < 1e-12);
}

TEST_CASE("feasible sampler stays in the box") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 1000; ++i) {
        const auto z = sample_cot_feasible(5, 2.0, rng);
        CHECK(z.maxCoeff() <= pi / 2);
        CHECK(z.minCoeff() > 0.0);
        CHECK(std::abs(z.sum() - 2.0) < 1e-12);
    }
}

TEST_CASE("finite-difference spectrum") {
    const double l1 = pi * pi;
    CHECK(resonance_indicator(fd_spectrum(Potential::constant(1.0, 4 * l1), 2000, BoundaryKind::NeumannNeumann)) <= 1e-3);
    CHECK(resonance_indicator(fd_spectrum(Potential::constant(1.0, 2.5 * l1), 2000, BoundaryKind::NeumannNeumann)) >= 1.0);
    CHECK(resonance_indicator(fd_spectrum(Potential::constant(1.0, l1 / 4), 2000, BoundaryKind::MixedDN)) <= 1e-3);
    CHECK(resonance_indicator(fd_spectrum(Potential::constant(1.0, l1 / 4), 2000, BoundaryKind::MixedND)) <= 1e-3);
    const auto free = fd_spectrum(Potential::constant(1.0, 0.0), 400, BoundaryKind::NeumannNeumann);
    CHECK(free.size() == 401);
    CHECK(std::abs(free[0]) < 1e-9);
    CHECK(free[1] == Approx(l1).epsilon(1e-4));
    CHECK(std::is_sorted(free.begin(), free.end()));
    CHECK(fd_spectrum(Potential::constant(1.0, 0.0), 400, BoundaryKind::MixedDN).size() == 400);
    CHECK_THROWS_AS(fd_spectrum(Potential::constant(1.0, 0.0), 100, BoundaryKind::NeumannNeumann),
                    std::invalid_argument);
}

TEST_CASE("brute partition search") {
    const double l1 = pi * pi;
    const auto a = Potential::constant(1.0, l1 + 1.0);
    const auto found = brute_partition_check(a, 1, 40);
    REQUIRE(found.has_value());
    CHECK(check_l1_partition(a, *found).unique());
    CHECK(greedy_partition(a, 1).has_value());
    CHECK_FALSE(brute_partition_check(Potential::constant(1.0, 4 * l1), 1, 40).has_value());

    const Partition part({0.0, 0.2, 0.45, 0.8, 1.0});
    const auto cx = brute_partition_check(l1_counterexample(part, 1e-3), 1, 40);
    REQUIRE(cx.has_value());
    for (std::size_t i = 0; i < part.points().size(); ++i) CHECK(std::abs(cx->points()[i] - part.points()[i]) <= 1.0 / 40);

    CHECK_THROWS(brute_partition_check(a, 3, 40));
    CHECK_THROWS(brute_partition_check(a, 1, 61));
}
