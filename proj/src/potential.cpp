#include "neumann/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace neumann {

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(lo < hi)) {
        throw std::invalid_argument("interval requires lo < hi, got [" + std::to_string(lo) + ", " +
                                    std::to_string(hi) + "]");
    }
}

namespace {

void validate_nodes(const std::vector<double>& nodes) {
    if (nodes.size() < 2) throw std::invalid_argument("potential needs at least two nodes");
    if (nodes.front() != 0.0) throw std::invalid_argument("potential nodes must start at 0");
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        if (!std::isfinite(nodes[i + 1]) || !(nodes[i] < nodes[i + 1])) {
            throw std::invalid_argument("potential nodes must be finite and strictly increasing");
        }
    }
}

void validate_values(const std::vector<double>& values) {
    for (double v : values) {
        if (!std::isfinite(v)) throw std::invalid_argument("potential values must be finite");
    }
}

void check_inside(const Potential& a, const Interval& I) {
    if (I.lo < 0.0 || I.hi > a.length()) {
        throw DomainError("interval [" + std::to_string(I.lo) + ", " + std::to_string(I.hi) +
                          "] lies outside [0, " + std::to_string(a.length()) + "]");
    }
}

// Calls f(p, q, a(p+), a(q-)) for every piece of `a` that overlaps I with
// positive length. On each such piece the symbol is affine.
template <typename F>
void for_each_piece(const Potential& a, const Interval& I, F&& f) {
    auto nodes = a.nodes();
    auto values = a.values();
    const bool pc = a.kind() == Potential::Kind::PiecewiseConstant;
    auto first = std::upper_bound(nodes.begin(), nodes.end(), I.lo);
    std::size_t j = first == nodes.begin() ? 0 : static_cast<std::size_t>(first - nodes.begin()) - 1;
    for (; j + 1 < nodes.size() && nodes[j] < I.hi; ++j) {
        const double p = std::max(I.lo, nodes[j]);
        const double q = std::min(I.hi, nodes[j + 1]);
        if (!(q > p)) continue;
        if (pc) {
            f(p, q, values[j], values[j]);
        } else {
            const double w = nodes[j + 1] - nodes[j];
            const double slope = (values[j + 1] - values[j]) / w;
            f(p, q, values[j] + slope * (p - nodes[j]), values[j] + slope * (q - nodes[j]));
        }
    }
}

// Integral of g * [g > s] over [0, w] for the affine g with g(0) = ga, g(w) = gb.
double integral_above(double ga, double gb, double w, double s) {
    if (ga > s && gb > s) return 0.5 * (ga + gb) * w;
    if (ga <= s && gb <= s) return 0.0;
    const double t = (s - ga) / (gb - ga) * w;
    if (ga > s) return 0.5 * (ga + s) * t;
    return 0.5 * (s + gb) * (w - t);
}

DominanceReport dominance(const Potential& a, double level, double sign, const DominanceTolerances& tol) {
    DominanceReport r;
    r.ess_inf_gap = std::numeric_limits<double>::infinity();
    const Interval whole(0.0, a.length());
    for_each_piece(a, whole, [&](double p, double q, double va, double vb) {
        const double ga = sign * (va - level);
        const double gb = sign * (vb - level);
        r.ess_inf_gap = std::min({r.ess_inf_gap, ga, gb});
        r.strict_mass += integral_above(ga, gb, q - p, tol.strict);
    });
    r.holds = r.ess_inf_gap >= -tol.ae && r.strict_mass > tol.mass_per_length * a.length();
    return r;
}

}  // namespace

Potential::Potential(Kind kind, std::vector<double> nodes, std::vector<double> values)
    : kind_(kind), nodes_(std::move(nodes)), values_(std::move(values)) {}

Potential Potential::piecewise_constant(std::vector<double> breakpoints, std::vector<double> values) {
    validate_nodes(breakpoints);
    validate_values(values);
    if (values.size() + 1 != breakpoints.size()) {
        throw std::invalid_argument("piecewise-constant potential needs one value per cell");
    }
    return Potential(Kind::PiecewiseConstant, std::move(breakpoints), std::move(values));
}

Potential Potential::sampled(std::vector<double> grid, std::vector<double> values) {
    validate_nodes(grid);
    validate_values(values);
    if (values.size() != grid.size()) {
        throw std::invalid_argument("sampled potential needs one value per grid node");
    }
    return Potential(Kind::Sampled, std::move(grid), std::move(values));
}

Potential Potential::constant(double L, double value) {
    if (!(L > 0.0)) throw std::invalid_argument("domain length must be positive");
    return piecewise_constant({0.0, L}, {value});
}

std::size_t Potential::segment_index(double x) const {
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
    if (it == nodes_.begin()) return 0;
    const auto j = static_cast<std::size_t>(it - nodes_.begin()) - 1;
    return std::min(j, nodes_.size() - 2);
}

double Potential::right_limit(double x) const {
    const std::size_t j = segment_index(x);
    if (kind_ == Kind::PiecewiseConstant) return values_[j];
    const double t = (x - nodes_[j]) / (nodes_[j + 1] - nodes_[j]);
    return values_[j] + t * (values_[j + 1] - values_[j]);
}

double Potential::left_limit(double x) const {
    if (kind_ == Kind::Sampled) return right_limit(x);
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), x);
    if (it != nodes_.end() && *it == x && it != nodes_.begin()) {
        return values_[static_cast<std::size_t>(it - nodes_.begin()) - 1];
    }
    return right_limit(x);
}

double Potential::operator()(double x) const { return right_limit(x); }

std::vector<double> Potential::nodes_inside(const Interval& I) const {
    auto first = std::upper_bound(nodes_.begin(), nodes_.end(), I.lo);
    auto last = std::lower_bound(nodes_.begin(), nodes_.end(), I.hi);
    if (first >= last) return {};
    return {first, last};
}

double Potential::min_value() const { return *std::min_element(values_.begin(), values_.end()); }
double Potential::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

double l1_excess(const Potential& a, double level, const Interval& I) {
    check_inside(a, I);
    double total = 0.0;
    for_each_piece(a, I, [&](double p, double q, double va, double vb) {
        const double ga = va - level;
        const double gb = vb - level;
        total += integral_above(ga, gb, q - p, 0.0) + integral_above(-ga, -gb, q - p, 0.0);
    });
    return total;
}

double integral(const Potential& a, const Interval& I) {
    check_inside(a, I);
    double total = 0.0;
    for_each_piece(a, I, [&](double p, double q, double va, double vb) { total += 0.5 * (va + vb) * (q - p); });
    return total;
}

double sup_norm(const Potential& a, const Interval& I) {
    check_inside(a, I);
    double best = -std::numeric_limits<double>::infinity();
    for_each_piece(a, I, [&](double, double, double va, double vb) { best = std::max({best, va, vb}); });
    return best;
}

double ess_inf(const Potential& a, const Interval& I) {
    check_inside(a, I);
    double best = std::numeric_limits<double>::infinity();
    for_each_piece(a, I, [&](double, double, double va, double vb) { best = std::min({best, va, vb}); });
    return best;
}

DominanceReport dominates(const Potential& a, double level, const DominanceTolerances& tol) {
    return dominance(a, level, 1.0, tol);
}

DominanceReport dominated_by(const Potential& a, double level, const DominanceTolerances& tol) {
    return dominance(a, level, -1.0, tol);
}

double deviation_mass(const Potential& a, double c, const Interval& I, double strict) {
    check_inside(a, I);
    double total = 0.0;
    for_each_piece(a, I, [&](double p, double q, double va, double vb) {
        const double ga = va - c;
        const double gb = vb - c;
        total += integral_above(ga, gb, q - p, strict) + integral_above(-ga, -gb, q - p, strict);
    });
    return total;
}

double max_difference(const Potential& lhs, const Potential& rhs) {
    if (std::abs(lhs.length() - rhs.length()) > 1e-14 * lhs.length()) {
        throw std::invalid_argument("potentials live on different domains");
    }
    std::vector<double> merged;
    merged.reserve(lhs.nodes().size() + rhs.nodes().size());
    std::merge(lhs.nodes().begin(), lhs.nodes().end(), rhs.nodes().begin(), rhs.nodes().end(),
               std::back_inserter(merged));
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());

    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j + 1 < merged.size(); ++j) {
        const double p = merged[j];
        const double q = merged[j + 1];
        best = std::max(best, lhs.right_limit(p) - rhs.right_limit(p));
        best = std::max(best, lhs.left_limit(q) - rhs.left_limit(q));
    }
    return best;
}

Potential reflect(const Potential& a) {
    const double L = a.length();
    std::vector<double> nodes(a.nodes().rbegin(), a.nodes().rend());
    for (double& x : nodes) x = L - x;
    nodes.front() = 0.0;
    nodes.back() = L;
    std::vector<double> values(a.values().rbegin(), a.values().rend());
    if (a.kind() == Potential::Kind::PiecewiseConstant) {
        return Potential::piecewise_constant(std::move(nodes), std::move(values));
    }
    return Potential::sampled(std::move(nodes), std::move(values));
}

Potential rescale(const Potential& a, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("scale factor must be positive");
    std::vector<double> nodes(a.nodes().begin(), a.nodes().end());
    for (double& x : nodes) x /= s;
    std::vector<double> values(a.values().begin(), a.values().end());
    for (double& v : values) v *= s * s;
    if (a.kind() == Potential::Kind::PiecewiseConstant) {
        return Potential::piecewise_constant(std::move(nodes), std::move(values));
    }
    return Potential::sampled(std::move(nodes), std::move(values));
}

Potential shifted(const Potential& a, double shift) {
    std::vector<double> nodes(a.nodes().begin(), a.nodes().end());
    std::vector<double> values(a.values().begin(), a.values().end());
    for (double& v : values) v += shift;
    if (a.kind() == Potential::Kind::PiecewiseConstant) {
        return Potential::piecewise_constant(std::move(nodes), std::move(values));
    }
    return Potential::sampled(std::move(nodes), std::move(values));
}

}  // namespace neumann
