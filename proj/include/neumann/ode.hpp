#ifndef NEUMANN_ODE_HPP
#define NEUMANN_ODE_HPP

#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "neumann/potential.hpp"

namespace neumann {

class IntegrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Zero-structure extraction failed (non-interlaced crossings, no zeros, ...).
class ExtractionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class BoundaryKind {
    NeumannNeumann,  ///< u'(c) = u'(d) = 0
    MixedND,         ///< u'(c) = u(d) = 0
    MixedDN,         ///< u(c) = u'(d) = 0
};

struct IntegratorOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    std::size_t max_steps = 20'000'000;
};

/// Default scaled residual below which a shot counts as a nontrivial solution.
inline constexpr double kResidualTolerance = 1e-7;

/// Integrated state: u, u', Prüfer angle, and the running integrals of u'^2
/// and u^2 from the start of the trajectory.
using OdeState = Eigen::Matrix<double, 5, 1>;

/// Numerically integrated solution of u'' + a u = 0 on an interval.
///
/// Nodes include every representation breakpoint of the potential, so on
/// each node interval the coefficient is affine. `state_at` evaluates the
/// solution between nodes by re-taking one step from the preceding node,
/// which keeps dense values at the integrator's local accuracy.
class Trajectory {
public:
    Trajectory(std::shared_ptr<const Potential> a, IntegratorOptions opts);

    const std::vector<double>& nodes() const { return x_; }
    const std::vector<double>& u() const { return u_; }
    const std::vector<double>& du() const { return du_; }
    const std::vector<double>& theta() const { return theta_; }

    std::size_t size() const { return x_.size(); }
    double start() const { return x_.front(); }
    double end() const { return x_.back(); }
    const Potential& potential() const { return *a_; }

    OdeState state_at(double x) const;

    /// Integral of u'^2 over [p, q] (and of u^2 for `mass`).
    double kinetic(double p, double q) const;
    double mass(double p, double q) const;

    /// max over nodes of sqrt(u'^2 + scale * u^2)
    double amplitude(double scale) const;

private:
    friend Trajectory integrate(std::shared_ptr<const Potential>, const Interval&, double, double,
                                const IntegratorOptions&);

    void push(double x, const OdeState& y);

    std::shared_ptr<const Potential> a_;
    IntegratorOptions opts_;
    std::vector<double> x_, u_, du_, theta_, kinetic_, mass_;
};

/// Integrate u'' + a u = 0 on I from u(I.lo) = u0, u'(I.lo) = du0.
Trajectory integrate(std::shared_ptr<const Potential> a, const Interval& I, double u0, double du0,
                     const IntegratorOptions& opts = {});
Trajectory integrate(const Potential& a, const Interval& I, double u0, double du0,
                     const IntegratorOptions& opts = {});

/// Scaled u'(L) of the shot from (u, u') = (1, 0) at 0; zero iff the Neumann
/// problem has a nontrivial solution.
double neumann_residual(const Potential& a, const IntegratorOptions& opts = {});

/// The (1, 0) shot when |neumann_residual(a)| <= tol.
std::optional<Trajectory> find_nontrivial_neumann(const Potential& a, double tol = kResidualTolerance,
                                                  const IntegratorOptions& opts = {});

/// Residual of a mixed subproblem on I; zero iff it has a nontrivial solution.
double disfocal_residual(const Potential& a, const Interval& I, BoundaryKind bc,
                         const IntegratorOptions& opts = {});

/// Interlaced zeros x_0 < x_1 < ... < x_{2m}; even indices are zeros of u',
/// odd indices are zeros of u.
struct ZeroProfile {
    std::vector<double> dprime_zeros;
    std::vector<double> zeros;
    int m = 0;

    /// All points x_0, ..., x_{2m} in order.
    std::vector<double> interlaced() const;
};

/// Extract the zero profile of a trajectory starting from a zero of u'.
ZeroProfile zero_profile(const Trajectory& t, bool require_neumann, double tol = kResidualTolerance);

}  // namespace neumann

#endif  // NEUMANN_ODE_HPP
