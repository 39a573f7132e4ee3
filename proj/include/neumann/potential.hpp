#ifndef NEUMANN_POTENTIAL_HPP
#define NEUMANN_POTENTIAL_HPP

#include <span>
#include <stdexcept>
#include <vector>

namespace neumann {

/// Thrown when an interval or evaluation point lies outside [0, L].
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Closed subinterval [lo, hi] of the potential's domain.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    Interval(double lo_, double hi_);

    double length() const { return hi - lo; }
    bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Numeric slack used by the a.e. / positive-measure relation.
struct DominanceTolerances {
    double ae = 1e-12;      ///< a.e. bound slack
    double strict = 1e-9;   ///< pointwise strictness threshold
    double mass_per_length = 1e-9;  ///< positive-measure threshold, scaled by L
};

/// Result of testing `level ≺ a` (or `a ≺ level`).
struct DominanceReport {
    bool holds = false;
    double ess_inf_gap = 0.0;   ///< min of (a - level), or of (level - a) for the reverse test
    double strict_mass = 0.0;   ///< integral of the gap over {gap > strict}
};

/// Coefficient a(x) of u'' + a u = 0 on [0, L].
///
/// Two representations are supported. A piecewise-constant potential carries
/// strictly increasing breakpoints 0 = b_0 < ... < b_k = L and one value per
/// half-open cell [b_i, b_{i+1}). A sampled potential carries grid nodes and
/// nodal values and interpolates linearly between them. Both are immutable.
class Potential {
public:
    enum class Kind { PiecewiseConstant, Sampled };

    static Potential piecewise_constant(std::vector<double> breakpoints, std::vector<double> values);
    static Potential sampled(std::vector<double> grid, std::vector<double> values);
    static Potential constant(double L, double value);

    Kind kind() const { return kind_; }
    double length() const { return nodes_.back(); }

    /// Breakpoints (piecewise-constant) or grid nodes (sampled).
    std::span<const double> nodes() const { return nodes_; }
    std::span<const double> values() const { return values_; }

    /// Right-continuous value a(x^+); a(L) is the left limit.
    double operator()(double x) const;
    double right_limit(double x) const;
    double left_limit(double x) const;

    /// Representation nodes strictly inside (lo, hi).
    std::vector<double> nodes_inside(const Interval& I) const;

    /// Number of smooth pieces (cells or grid segments).
    std::size_t piece_count() const { return nodes_.size() - 1; }

    /// Minimum and maximum of the symbol over the whole domain.
    double min_value() const;
    double max_value() const;

private:
    Potential(Kind kind, std::vector<double> nodes, std::vector<double> values);

    std::size_t segment_index(double x) const;

    Kind kind_;
    std::vector<double> nodes_;
    std::vector<double> values_;
};

/// Integral of |a - level| over I.
double l1_excess(const Potential& a, double level, const Interval& I);

/// Integral of a over I.
double integral(const Potential& a, const Interval& I);

/// Essential supremum of a over I.
double sup_norm(const Potential& a, const Interval& I);

/// Essential infimum of a over I.
double ess_inf(const Potential& a, const Interval& I);

/// Test `level ≺ a`: a >= level a.e. and a > level on a set of positive measure.
DominanceReport dominates(const Potential& a, double level, const DominanceTolerances& tol = {});

/// Test `a ≺ level`: a <= level a.e. and a < level on a set of positive measure.
DominanceReport dominated_by(const Potential& a, double level, const DominanceTolerances& tol = {});

/// Measure-weighted deviation from a constant: integral of |a - c| over
/// {x in I : |a(x) - c| > strict}.
double deviation_mass(const Potential& a, double c, const Interval& I, double strict);

/// Largest value of (lhs - rhs) over the domain, using one-sided limits so the
/// result is an essential supremum. Both potentials must share the same L.
double max_difference(const Potential& lhs, const Potential& rhs);

/// x -> a(L - x).
Potential reflect(const Potential& a);

/// x -> s^2 a(s x) on [0, L / s].
Potential rescale(const Potential& a, double s);

/// Pointwise a + shift.
Potential shifted(const Potential& a, double shift);

}  // namespace neumann

#endif  // NEUMANN_POTENTIAL_HPP
