#ifndef NEUMANN_ORACLE_HPP
#define NEUMANN_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "neumann/certifier.hpp"
#include "neumann/ode.hpp"
#include "neumann/potential.hpp"

namespace neumann {

struct DiscreteMinimum {
    double value = 0.0;
    Eigen::VectorXd minimizer;  ///< grid values u_0 = 0, ..., u_N = 1
    int grid_size = 0;
    double residual = 0.0;      ///< max-norm of the stationarity equations
};

/// Minimizes the trapezoid/forward-difference discretization of
/// (int u'^2 - M int u^2) / u(b)^2 over grid functions with u(a) = 0, u(b) = 1.
DiscreteMinimum discrete_j_min(double M, const Interval& I, int N);

struct CotSumResult {
    double value = 0.0;
    long violations = 0;
    Eigen::VectorXd minimizer;
};

/// Minimizes sum cot(z_i) over the feasible set by projected Newton-type
/// descent from 32 random starts, and counts random feasible samples that beat
/// r cot(S / r) by more than 1e-9.
CotSumResult numeric_f_min(int r, double S, long samples, std::uint64_t seed);

/// Projected descent from a given feasible start; returns the iterates.
std::vector<Eigen::VectorXd> f_descent(double S, const Eigen::VectorXd& start, int max_iter = 200);

/// Uniform sample on {z_i > 0, sum z_i = S} with every z_i <= pi/2.
template <typename Rng>
Eigen::VectorXd sample_cot_feasible(int r, double S, Rng& rng);

/// Eigenvalues (ascending) of the symmetric three-point discretization of
/// -u'' - a u under the boundary conditions `bc` on [0, L], N cells.
std::vector<double> fd_spectrum(const Potential& a, int N, BoundaryKind bc);

/// min |sigma| over a spectrum.
double resonance_indicator(const std::vector<double>& spectrum);

/// Lexicographically first partition on the uniform grid k L / grid that
/// passes check_l1_partition. Restricted to n <= 2 and grid <= 60.
std::optional<Partition> brute_partition_check(const Potential& a, int n, int grid,
                                               const CertifierTolerances& tol = {});

}  // namespace neumann

#include <cmath>
#include <numbers>
#include <random>

namespace neumann {

template <typename Rng>
Eigen::VectorXd sample_cot_feasible(int r, double S, Rng& rng) {
    std::exponential_distribution<double> expo(1.0);
    Eigen::VectorXd z(r);
    for (;;) {
        for (int i = 0; i < r; ++i) z[i] = expo(rng);
        z *= S / z.sum();
        if (z.maxCoeff() <= std::numbers::pi / 2.0 && z.minCoeff() > 0.0) return z;
    }
}

}  // namespace neumann

#endif  // NEUMANN_ORACLE_HPP
