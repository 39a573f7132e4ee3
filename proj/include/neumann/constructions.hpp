#ifndef NEUMANN_CONSTRUCTIONS_HPP
#define NEUMANN_CONSTRUCTIONS_HPP

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "neumann/certifier.hpp"
#include "neumann/potential.hpp"

namespace neumann {

/// One piece of a closed-form solution, for export.
struct PieceDescriptor {
    double lo = 0.0;
    double hi = 0.0;
    std::string formula;  ///< human-readable expression on [lo, hi]
    std::vector<std::pair<std::string, double>> params;
};

/// Exact solution of u'' + a u = 0 for a constructed potential.
class ClosedFormSolution {
public:
    /// Returns (u, u', u'') at x.
    using Evaluator = std::function<std::array<double, 3>(double)>;

    ClosedFormSolution(std::string name, std::vector<double> breakpoints, std::vector<PieceDescriptor> pieces,
                       Evaluator eval);

    const std::string& name() const { return name_; }
    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<PieceDescriptor>& pieces() const { return pieces_; }

    double u(double x) const { return eval_(x)[0]; }
    double du(double x) const { return eval_(x)[1]; }
    double ddu(double x) const { return eval_(x)[2]; }
    std::array<double, 3> operator()(double x) const { return eval_(x); }

private:
    std::string name_;
    std::vector<double> breakpoints_;
    std::vector<PieceDescriptor> pieces_;
    Evaluator eval_;
};

struct Construction {
    Potential potential;
    ClosedFormSolution solution;
};

/// Minimizing sequence for the L^1 constant: a smooth u_eps built from a
/// sine piece with a cubic correction on [0, eps], extended by alternating
/// reflections to 2(n+1) subintervals; a_eps = -u_eps'' / u_eps is sampled
/// with `nodes_per_bump` nodes on each correction zone.
Construction minimizing_sequence(int n, double L, double eps, int nodes_per_bump = 10000);

/// a_eps - lambda_n on the base subinterval, evaluated from the closed form.
double minimizing_excess_density(int n, double L, double eps, double offset);

/// Piecewise-constant pi^2 / (4 d_i^2) on each partition interval, with the
/// C^1-glued cosine solution.
Construction resonant_step(const Partition& part);

/// a = lambda_q with u = cos(q pi x / L).
Construction constant_resonant(int q, double L);

/// |u'(0)| of the forced extremal on the first subinterval, (n pi / L) cot(n pi / (2(n+1))).
double non_attainment_witness(int n, double L);

/// lambda_n plus one rectangular bump per interval, each carrying L^1 mass
/// (n pi / L) cot(n pi d_i / L) - eps next to the endpoint where the
/// comparison solution vanishes.
Potential l1_counterexample(const Partition& part, double eps);

}  // namespace neumann

#endif  // NEUMANN_CONSTRUCTIONS_HPP
