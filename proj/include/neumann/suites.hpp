#ifndef NEUMANN_SUITES_HPP
#define NEUMANN_SUITES_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "neumann/certifier.hpp"
#include "neumann/io.hpp"
#include "neumann/potential.hpp"

namespace neumann {

using Rng = std::mt19937_64;

// Randomized potentials shared by the verification suites and the tests.

/// Step potential with `pieces` cells (random breakpoints) and values in [lo, hi].
Potential random_step(Rng& rng, double L, int pieces, double lo, double hi);
/// Sampled-linear potential on `nodes` random grid points with values in [lo, hi].
Potential random_sampled(Rng& rng, double L, int nodes, double lo, double hi);
/// lambda_n plus a nonnegative profile of total L^1 mass `total`, zero on
/// some cells. Step or sampled.
Potential random_excess(Rng& rng, int n, double L, double total, bool sampled);
/// Partition of [0, L] whose gaps are integer multiples of L / grid, each
/// strictly below L / (2n).
Partition random_grid_partition(Rng& rng, int n, double L, int grid);
/// Partition with real gaps, each below L / (2n), not all equal.
Partition random_partition(Rng& rng, int n, double L);

struct SuiteCheck {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double bound = 0.0;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<SuiteCheck> checks;
    std::vector<std::string> log;

    bool pass() const;
    /// measured <= bound
    void at_most(std::string name, double measured, double bound);
    /// measured >= bound
    void at_least(std::string name, double measured, double bound);
    void truth(std::string name, bool ok);
};

json to_json(const SuiteReport& r);

const std::vector<std::string>& suite_names();
/// Throws InputError for an unknown suite.
SuiteReport run_suite(const std::string& name, std::uint64_t seed);

struct SoundnessStats {
    int cases = 0;
    int certified = 0;
    int resonant = 0;             ///< cases with |neumann_residual| <= 1e-7
    int violations = 0;           ///< certified and resonant at once
    double min_certified_residual = 0.0;
};

/// Runs one criterion directly (no shooting gate) on `cases` randomized step
/// and sampled potentials drawn near its acceptance boundary, mixed with
/// exactly resonant ones, and compares against the shooting residual.
SoundnessStats soundness_sweep(Method criterion, int cases, std::uint64_t seed);

/// Individual suites, also used by the acceptance binary.
SuiteReport suite_j(std::uint64_t seed);
SuiteReport suite_f(std::uint64_t seed);
SuiteReport suite_spectrum(std::uint64_t seed, int cases = 200);
SuiteReport suite_partition(std::uint64_t seed);
SuiteReport suite_zero_spacing(std::uint64_t seed);
SuiteReport suite_l1_implication(std::uint64_t seed, int cases = 200);

}  // namespace neumann

#endif  // NEUMANN_SUITES_HPP
