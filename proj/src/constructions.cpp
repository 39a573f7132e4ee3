#include "neumann/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "neumann/constants.hpp"
#include "neumann/ode.hpp"

namespace neumann {

namespace {

constexpr double pi = std::numbers::pi;

std::size_t locate(const std::vector<double>& pts, double x) {
    auto it = std::upper_bound(pts.begin(), pts.end(), x);
    std::size_t i = it == pts.begin() ? 0 : static_cast<std::size_t>(it - pts.begin()) - 1;
    return std::min(i, pts.size() - 2);
}

// Base piece of the minimizing sequence on [0, h], h = L / (2(n+1)).
struct MinimizingBase {
    double k;    // n pi / L
    double h;
    double eps;
    double c;    // cos(n pi / (2(n+1)))

    std::array<double, 3> operator()(double o) const {
        const double phase = k * (o - h);
        double u = -std::sin(phase);
        double du = -k * std::cos(phase);
        double ddu = k * k * std::sin(phase);
        if (o < eps) {
            const double s = o - eps;
            u += k * s * s * s / (3.0 * eps * eps) * c;
            du += k * s * s / (eps * eps) * c;
            ddu += 2.0 * k * s / (eps * eps) * c;
        }
        return {u, du, ddu};
    }

    // a_eps - lambda_n = -(u'' + k^2 u) / u, written without cancellation.
    double excess(double o) const {
        if (o >= eps) return 0.0;
        const double s = o - eps;
        const double num = 2.0 * k * s * c / (eps * eps) + k * k * k * s * s * s * c / (3.0 * eps * eps);
        return -num / (*this)(o)[0];
    }
};

MinimizingBase make_base(int n, double L, double eps) {
    const double h = L / (2.0 * (n + 1));
    return {n * pi / L, h, eps, std::cos(n * pi / (2.0 * (n + 1)))};
}

}  // namespace

ClosedFormSolution::ClosedFormSolution(std::string name, std::vector<double> breakpoints,
                                       std::vector<PieceDescriptor> pieces, Evaluator eval)
    : name_(std::move(name)),
      breakpoints_(std::move(breakpoints)),
      pieces_(std::move(pieces)),
      eval_(std::move(eval)) {}

double minimizing_excess_density(int n, double L, double eps, double offset) {
    return make_base(n, L, eps).excess(offset);
}

Construction minimizing_sequence(int n, double L, double eps, int nodes_per_bump) {
    if (n < 1 || !(L > 0.0)) throw std::invalid_argument("minimizing sequence needs n >= 1 and L > 0");
    if (!(eps > 0.0) || !(eps < L / (2.0 * (n + 1)))) {
        throw std::invalid_argument("minimizing sequence needs 0 < eps < L / (2 (n + 1))");
    }
    if (nodes_per_bump < 2) throw std::invalid_argument("need at least two nodes per correction zone");

    const MinimizingBase base = make_base(n, L, eps);
    const double h = base.h;
    const double level = lambda_n(n, L);
    const int cells = 2 * (n + 1);

    std::vector<double> grid;
    std::vector<double> values;
    grid.reserve(static_cast<std::size_t>(cells) * (nodes_per_bump + 2));
    auto push = [&](double x, double offset) {
        if (!grid.empty() && !(x > grid.back())) return;
        grid.push_back(x);
        values.push_back(level + base.excess(offset));
    };
    for (int j = 0; j < cells; ++j) {
        const double lo = j * h;
        const double hi = (j + 1 == cells) ? L : (j + 1) * h;
        if (j % 2 == 0) {
            for (int i = 0; i <= nodes_per_bump; ++i) push(lo + eps * i / nodes_per_bump, eps * i / nodes_per_bump);
            push(hi, h);
        } else {
            push(lo, h);
            for (int i = 0; i <= nodes_per_bump; ++i) {
                const double o = eps * (nodes_per_bump - i) / nodes_per_bump;
                push(i == nodes_per_bump ? hi : hi - o, o);
            }
        }
    }

    std::vector<double> breakpoints(static_cast<std::size_t>(cells) + 1);
    std::vector<PieceDescriptor> pieces;
    for (int j = 0; j <= cells; ++j) breakpoints[static_cast<std::size_t>(j)] = (j == cells) ? L : j * h;
    for (int j = 0; j < cells; ++j) {
        const double sign = ((j + 1) / 2) % 2 == 0 ? 1.0 : -1.0;
        PieceDescriptor p;
        p.lo = breakpoints[static_cast<std::size_t>(j)];
        p.hi = breakpoints[static_cast<std::size_t>(j) + 1];
        p.formula = j % 2 == 0 ? "sign * base(x - lo)" : "sign * base(hi - x)";
        p.params = {{"sign", sign}, {"k", base.k}, {"h", h}, {"eps", eps}, {"cos_c", base.c}};
        pieces.push_back(std::move(p));
    }
    auto eval = [base, cells, h](double x) -> std::array<double, 3> {
        const int j = std::clamp(static_cast<int>(std::floor(x / h)), 0, cells - 1);
        const double t = x - j * h;
        const bool even = j % 2 == 0;
        const double sign = ((j + 1) / 2) % 2 == 0 ? 1.0 : -1.0;
        const auto v = base(even ? t : h - t);
        return {sign * v[0], sign * (even ? v[1] : -v[1]), sign * v[2]};
    };

    return {Potential::sampled(std::move(grid), std::move(values)),
            ClosedFormSolution("minimizing_sequence", std::move(breakpoints), std::move(pieces), eval)};
}

Construction resonant_step(const Partition& part) {
    const auto pts = std::vector<double>(part.points().begin(), part.points().end());
    const std::size_t cells = part.interval_count();
    std::vector<double> values(cells);
    std::vector<double> amp(cells);
    for (std::size_t i = 0; i < cells; ++i) {
        const double d = part.gap(i);
        values[i] = pi * pi / (4.0 * d * d);
        if (i == 0) {
            amp[i] = 1.0;
        } else if (i % 2 == 1) {
            amp[i] = -amp[i - 1] * part.gap(i) / part.gap(i - 1);  // u = 0 at y_i: match u'
        } else {
            amp[i] = amp[i - 1];  // u' = 0 at y_i: match u
        }
    }

    std::vector<PieceDescriptor> pieces;
    for (std::size_t i = 0; i < cells; ++i) {
        PieceDescriptor p;
        p.lo = pts[i];
        p.hi = pts[i + 1];
        p.formula = i % 2 == 0 ? "k * cos(pi (x - lo) / (2 (hi - lo)))" : "k * cos(pi (hi - x) / (2 (hi - lo)))";
        p.params = {{"k", amp[i]}};
        pieces.push_back(std::move(p));
    }
    auto eval = [pts, amp](double x) -> std::array<double, 3> {
        const std::size_t i = locate(pts, x);
        const double w = pi / (2.0 * (pts[i + 1] - pts[i]));
        if (i % 2 == 0) {
            const double ph = w * (x - pts[i]);
            const double u = amp[i] * std::cos(ph);
            return {u, -amp[i] * w * std::sin(ph), -w * w * u};
        }
        const double ph = w * (pts[i + 1] - x);
        const double u = amp[i] * std::cos(ph);
        return {u, amp[i] * w * std::sin(ph), -w * w * u};
    };

    Construction out{Potential::piecewise_constant(pts, std::move(values)),
                     ClosedFormSolution("resonant_step", pts, std::move(pieces), eval)};
    if (!(std::abs(neumann_residual(out.potential)) <= 1e-8)) {
        throw std::logic_error("resonant step potential failed its own resonance check");
    }
    return out;
}

Construction constant_resonant(int q, double L) {
    if (q < 1) throw std::invalid_argument("constant resonant potential needs q >= 1");
    const double level = lambda_n(q, L);
    const double k = q * pi / L;
    PieceDescriptor p{0.0, L, "cos(k x)", {{"k", k}}};
    auto eval = [k](double x) -> std::array<double, 3> {
        const double u = std::cos(k * x);
        return {u, -k * std::sin(k * x), -k * k * u};
    };
    return {Potential::constant(L, level), ClosedFormSolution("constant_resonant", {0.0, L}, {p}, eval)};
}

double non_attainment_witness(int n, double L) {
    if (n < 1 || !(L > 0.0)) throw std::invalid_argument("non-attainment witness needs n >= 1 and L > 0");
    return n * pi / L * cot(n * pi / (2.0 * (n + 1)));
}

Potential l1_counterexample(const Partition& part, double eps) {
    const int n = part.n();
    const double L = part.length();
    const double k = n * pi / L;
    const std::size_t cells = part.interval_count();

    double dmin = L;
    double dmax = 0.0;
    for (std::size_t i = 0; i < cells; ++i) {
        dmin = std::min(dmin, part.gap(i));
        dmax = std::max(dmax, part.gap(i));
        if (!(part.gap(i) < L / (2.0 * n))) {
            throw std::invalid_argument("counterexample needs every gap below L / (2n)");
        }
    }
    if (dmax - dmin <= 1e-12 * L) throw std::invalid_argument("counterexample needs unequal gaps");
    if (!(eps > 0.0)) throw std::invalid_argument("counterexample needs eps > 0");

    std::vector<double> nodes{0.0};
    std::vector<double> values;
    const double level = lambda_n(n, L);
    auto cell = [&](double hi, double value) {
        if (hi > nodes.back()) {
            nodes.push_back(hi);
            values.push_back(value);
        }
    };
    for (std::size_t i = 0; i < cells; ++i) {
        const double lo = part.points()[i];
        const double hi = part.points()[i + 1];
        const double bound = k * cot(k * part.gap(i));
        if (!(eps < bound)) throw std::invalid_argument("eps exceeds an interval's cotangent bound");
        const double w = std::min(part.gap(i) / 10.0, 0.01 * L);
        const double height = (bound - eps) / w;
        // even intervals: u(hi) = 0; odd intervals: u(lo) = 0
        if (i % 2 == 0) {
            cell(hi - w, level);
            cell(hi, level + height);
        } else {
            cell(lo + w, level + height);
            cell(hi, level);
        }
    }
    nodes.back() = L;
    Potential a = Potential::piecewise_constant(std::move(nodes), std::move(values));
    if (!(l1_excess(a, level, {0.0, L}) > beta1(n, L))) {
        throw std::invalid_argument("eps too large: total excess does not exceed the global constant");
    }
    return a;
}

}  // namespace neumann
