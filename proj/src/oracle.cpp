#include "neumann/oracle.hpp"

#include <algorithm>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "neumann/constants.hpp"

namespace neumann {

namespace {

constexpr double pi = std::numbers::pi;

double cot_sum(const Eigen::VectorXd& z) {
    return (z.array().cos() / z.array().sin()).sum();
}

}  // namespace

DiscreteMinimum discrete_j_min(double M, const Interval& I, int N) {
    if (N < 100) throw std::invalid_argument("discrete J minimization needs N >= 100");
    const double l = I.length();
    if (!(M > 0.0) || M > pi * pi / (4.0 * l * l) * (1.0 + 1e-15)) {
        throw DomainError("discrete J minimization requires 0 < M <= pi^2/(4|I|^2)");
    }
    const double h = l / N;
    const int m = N - 1;  // interior unknowns u_1 .. u_{N-1}

    Eigen::SparseMatrix<double> A(m, m);
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(static_cast<std::size_t>(3 * m));
    for (int j = 0; j < m; ++j) {
        entries.emplace_back(j, j, 2.0 - M * h * h);
        if (j > 0) entries.emplace_back(j, j - 1, -1.0);
        if (j + 1 < m) entries.emplace_back(j, j + 1, -1.0);
    }
    A.setFromTriplets(entries.begin(), entries.end());
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
    rhs[m - 1] = 1.0;  // u_N = 1

    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(A);
    if (solver.info() != Eigen::Success) throw std::runtime_error("discrete J system factorization failed");
    const Eigen::VectorXd interior = solver.solve(rhs);

    DiscreteMinimum out;
    out.grid_size = N;
    out.minimizer = Eigen::VectorXd::Zero(N + 1);
    out.minimizer.segment(1, m) = interior;
    out.minimizer[N] = 1.0;

    const auto& u = out.minimizer;
    const Eigen::VectorXd diff = u.tail(N) - u.head(N);
    const double kinetic = diff.squaredNorm() / h;
    const double mass = h * (u.segment(1, m).squaredNorm() + 0.5);
    out.value = kinetic - M * mass;
    out.residual = (A * interior - rhs).cwiseAbs().maxCoeff();
    return out;
}

std::vector<Eigen::VectorXd> f_descent(double S, const Eigen::VectorXd& start, int max_iter) {
    const int r = static_cast<int>(start.size());
    const double top = pi / 2.0;
    std::vector<Eigen::VectorXd> path{start};
    Eigen::VectorXd z = start;
    for (int it = 0; it < max_iter; ++it) {
        const Eigen::ArrayXd s = z.array().sin();
        const Eigen::ArrayXd g = -1.0 / (s * s);
        const Eigen::ArrayXd curv = (2.0 * z.array().cos() / (s * s * s)).max(1e-3);
        Eigen::ArrayXd w = 1.0 / curv;

        // Components pinned at pi/2 that would move further out are frozen.
        Eigen::ArrayXd d(r);
        std::vector<bool> frozen(static_cast<std::size_t>(r), false);
        for (int pass = 0; pass < r; ++pass) {
            double num = 0.0;
            double den = 0.0;
            for (int i = 0; i < r; ++i) {
                if (frozen[static_cast<std::size_t>(i)]) continue;
                num += g[i] * w[i];
                den += w[i];
            }
            const double nu = num / den;
            bool changed = false;
            for (int i = 0; i < r; ++i) {
                d[i] = frozen[static_cast<std::size_t>(i)] ? 0.0 : -(g[i] - nu) * w[i];
                if (!frozen[static_cast<std::size_t>(i)] && z[i] >= top && d[i] > 0.0) {
                    frozen[static_cast<std::size_t>(i)] = true;
                    changed = true;
                }
            }
            if (!changed) break;
        }
        if (d.abs().maxCoeff() < 1e-15) break;

        double tmax = 1.0;
        for (int i = 0; i < r; ++i) {
            if (d[i] > 0.0) tmax = std::min(tmax, (top - z[i]) / d[i]);
            if (d[i] < 0.0) tmax = std::min(tmax, 0.9 * z[i] / -d[i]);
        }
        const double f0 = cot_sum(z);
        const double slope = (g * d).sum();
        double t = tmax;
        Eigen::VectorXd next = z;
        for (int bt = 0; bt < 60; ++bt, t *= 0.5) {
            next = z + t * d.matrix();
            next = next.cwiseMin(top);
            next *= S / next.sum();
            if (next.minCoeff() > 0.0 && next.maxCoeff() <= top && cot_sum(next) <= f0 + 1e-4 * t * slope) break;
        }
        if ((next - z).cwiseAbs().maxCoeff() < 1e-16) break;
        z = next;
        path.push_back(z);
    }
    return path;
}

CotSumResult numeric_f_min(int r, double S, long samples, std::uint64_t seed) {
    if (r < 1 || !(S > 0.0) || !(r * pi > 2.0 * S)) {
        throw DomainError("cotangent-sum minimization requires r >= 1, S > 0 and r*pi > 2S");
    }
    if (samples < 10000) throw std::invalid_argument("numeric_f_min needs at least 1e4 samples");
    std::mt19937_64 rng(seed);
    CotSumResult out;
    out.value = std::numeric_limits<double>::infinity();
    for (int s = 0; s < 32; ++s) {
        const auto path = f_descent(S, sample_cot_feasible(r, S, rng));
        const double v = cot_sum(path.back());
        if (v < out.value) {
            out.value = v;
            out.minimizer = path.back();
        }
    }
    const double floor_value = f_min(r, S) - 1e-9;
    for (long i = 0; i < samples; ++i) {
        if (cot_sum(sample_cot_feasible(r, S, rng)) < floor_value) ++out.violations;
    }
    return out;
}

std::vector<double> fd_spectrum(const Potential& a, int N, BoundaryKind bc) {
    if (N < 200) throw std::invalid_argument("finite-difference spectrum needs N >= 200");
    const double L = a.length();
    const double h = L / N;

    int first = 0;
    int last = N;
    if (bc == BoundaryKind::MixedDN) first = 1;
    if (bc == BoundaryKind::MixedND) last = N - 1;
    const int size = last - first + 1;

    auto weight = [&](int j) {
        if (j == 0 && bc != BoundaryKind::MixedDN) return 0.5;
        if (j == N && bc != BoundaryKind::MixedND) return 0.5;
        return 1.0;
    };
    auto stiffness_diag = [&](int j) { return weight(j) < 1.0 ? 1.0 : 2.0; };
    // Potential value at a node: mean over its dual cell.
    auto nodal = [&](int j) {
        const double lo = std::max(0.0, (j - 0.5) * h);
        const double hi = std::min(L, (j + 0.5) * h);
        return integral(a, {lo, hi}) / (hi - lo);
    };

    Eigen::VectorXd diag(size);
    Eigen::VectorXd sub(std::max(size - 1, 0));
    const double inv_h2 = 1.0 / (h * h);
    for (int k = 0; k < size; ++k) {
        const int j = first + k;
        diag[k] = stiffness_diag(j) * inv_h2 / weight(j) - nodal(j);
        if (k + 1 < size) sub[k] = -inv_h2 / std::sqrt(weight(j) * weight(j + 1));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("tridiagonal eigensolver did not converge");
    const Eigen::VectorXd& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

double resonance_indicator(const std::vector<double>& spectrum) {
    double best = std::numeric_limits<double>::infinity();
    for (double s : spectrum) best = std::min(best, std::abs(s));
    return best;
}

std::optional<Partition> brute_partition_check(const Potential& a, int n, int grid, const CertifierTolerances& tol) {
    if (n < 1 || n > 2) throw std::invalid_argument("brute partition search supports n = 1, 2 only");
    if (grid < 2 * n + 2 || grid > 60) throw std::invalid_argument("brute partition grid must be in [2n+2, 60]");
    const double L = a.length();
    const double level = lambda_n(n, L);
    if (!dominates(a, level, tol.dominance()).holds) return std::nullopt;

    const double k = n * pi / L;
    std::vector<double> pts(static_cast<std::size_t>(grid) + 1);
    std::vector<double> cumulative(pts.size(), 0.0);
    for (int i = 0; i <= grid; ++i) pts[static_cast<std::size_t>(i)] = (i == grid) ? L : i * L / grid;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        cumulative[i] = cumulative[i - 1] + l1_excess(a, level, {pts[i - 1], pts[i]});
    }
    auto passes = [&](int p, int q) {
        const double d = pts[static_cast<std::size_t>(q)] - pts[static_cast<std::size_t>(p)];
        if (!(d < L / (2.0 * n) - tol.ae) || !(k * d < pi / 2.0)) return false;
        const double excess = cumulative[static_cast<std::size_t>(q)] - cumulative[static_cast<std::size_t>(p)];
        return excess < k * cot(k * d, 0.0) * (1.0 - tol.margin_rel);
    };

    const int interior = 2 * n + 1;
    std::vector<int> chosen{0};
    std::optional<Partition> found;
    auto search = [&](auto&& self) -> bool {
        const int depth = static_cast<int>(chosen.size()) - 1;
        if (depth == interior) {
            if (!passes(chosen.back(), grid)) return false;
            std::vector<double> y;
            for (int idx : chosen) y.push_back(pts[static_cast<std::size_t>(idx)]);
            y.push_back(L);
            Partition part(std::move(y));
            if (!check_l1_partition(a, part, tol).unique()) return false;
            found = std::move(part);
            return true;
        }
        const int remaining = interior - depth;
        for (int next = chosen.back() + 1; next <= grid - remaining; ++next) {
            if (!passes(chosen.back(), next)) {
                // gaps only grow from here once the width limit is exceeded
                if (!(pts[static_cast<std::size_t>(next)] - pts[static_cast<std::size_t>(chosen.back())] <
                      L / (2.0 * n) - tol.ae)) {
                    break;
                }
                continue;
            }
            chosen.push_back(next);
            if (self(self)) return true;
            chosen.pop_back();
        }
        return false;
    };
    search(search);
    return found;
}

}  // namespace neumann
