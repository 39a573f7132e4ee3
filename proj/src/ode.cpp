#include "neumann/ode.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "neumann/roots.hpp"

namespace neumann {

namespace {

// Coefficient a(x) = value + slope * (x - origin) on one smooth piece.
struct AffineCoefficient {
    double origin;
    double value;
    double slope;

    double operator()(double x) const { return value + slope * (x - origin); }
};

AffineCoefficient piece_between(const Potential& a, double p, double q) {
    const double va = a.right_limit(p);
    const double vb = a.left_limit(q);
    return {p, va, (vb - va) / (q - p)};
}

OdeState rhs(double x, const OdeState& y, const AffineCoefficient& coef) {
    const double ax = coef(x);
    const double s = std::sin(y[2]);
    const double c = std::cos(y[2]);
    OdeState d;
    d << y[1], -ax * y[0], c * c + ax * s * s, y[1] * y[1], y[0] * y[0];
    return d;
}

// One Dormand-Prince 5(4) step. Returns the 5th-order solution and writes the
// embedded error estimate.
OdeState dopri5_step(double x, const OdeState& y, double h, const AffineCoefficient& coef, OdeState* err) {
    constexpr double a21 = 1.0 / 5.0;
    constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                     a54 = -212.0 / 729.0;
    constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                     a65 = -5103.0 / 18656.0;
    constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0, b5 = -2187.0 / 6784.0,
                     b6 = 11.0 / 84.0;
    constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                     e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

    const OdeState k1 = rhs(x, y, coef);
    const OdeState k2 = rhs(x + h / 5.0, y + h * a21 * k1, coef);
    const OdeState k3 = rhs(x + 3.0 * h / 10.0, y + h * (a31 * k1 + a32 * k2), coef);
    const OdeState k4 = rhs(x + 4.0 * h / 5.0, y + h * (a41 * k1 + a42 * k2 + a43 * k3), coef);
    const OdeState k5 = rhs(x + 8.0 * h / 9.0, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), coef);
    const OdeState k6 = rhs(x + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), coef);
    const OdeState ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    if (err != nullptr) {
        const OdeState k7 = rhs(x + h, ynew, coef);
        *err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    }
    return ynew;
}

double error_norm(const OdeState& err, const OdeState& y0, const OdeState& y1, const IntegratorOptions& opts) {
    const OdeState scale = (opts.atol + opts.rtol * y0.cwiseAbs().cwiseMax(y1.cwiseAbs()).array()).matrix();
    return std::sqrt((err.array() / scale.array()).square().mean());
}

}  // namespace

Trajectory::Trajectory(std::shared_ptr<const Potential> a, IntegratorOptions opts)
    : a_(std::move(a)), opts_(opts) {}

void Trajectory::push(double x, const OdeState& y) {
    x_.push_back(x);
    u_.push_back(y[0]);
    du_.push_back(y[1]);
    theta_.push_back(y[2]);
    kinetic_.push_back(y[3]);
    mass_.push_back(y[4]);
}

OdeState Trajectory::state_at(double x) const {
    if (x < x_.front() || x > x_.back()) {
        std::ostringstream msg;
        msg << "evaluation point " << x << " outside trajectory [" << x_.front() << ", " << x_.back() << "]";
        throw DomainError(msg.str());
    }
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t k = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    k = std::min(k, x_.size() - 2);
    OdeState y;
    y << u_[k], du_[k], theta_[k], kinetic_[k], mass_[k];
    if (x == x_[k]) return y;
    const auto coef = piece_between(*a_, x_[k], x_[k + 1]);
    return dopri5_step(x_[k], y, x - x_[k], coef, nullptr);
}

double Trajectory::kinetic(double p, double q) const { return state_at(q)[3] - state_at(p)[3]; }

double Trajectory::mass(double p, double q) const { return state_at(q)[4] - state_at(p)[4]; }

double Trajectory::amplitude(double scale) const {
    double best = 0.0;
    for (std::size_t i = 0; i < x_.size(); ++i) {
        best = std::max(best, std::sqrt(du_[i] * du_[i] + scale * u_[i] * u_[i]));
    }
    return best;
}

Trajectory integrate(std::shared_ptr<const Potential> a, const Interval& I, double u0, double du0,
                     const IntegratorOptions& opts) {
    if (u0 == 0.0 && du0 == 0.0) throw std::invalid_argument("initial data (0, 0) gives the trivial solution");
    if (I.lo < 0.0 || I.hi > a->length()) throw DomainError("integration interval outside the domain");

    Trajectory traj(a, opts);
    std::vector<double> cuts = a->nodes_inside(I);
    cuts.insert(cuts.begin(), I.lo);
    cuts.push_back(I.hi);

    OdeState y;
    y << u0, du0, std::atan2(u0, du0), 0.0, 0.0;
    traj.push(I.lo, y);

    const double amax = std::max(std::abs(a->min_value()), std::abs(a->max_value()));
    double h = 0.05 / std::sqrt(std::max(1.0, amax)) * std::min(1.0, I.length());
    std::size_t steps = 0;

    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        const double p = cuts[s];
        const double q = cuts[s + 1];
        const auto coef = piece_between(*a, p, q);
        double x = p;
        while (x < q) {
            if (++steps > opts.max_steps) {
                throw IntegrationError("step budget exhausted at x = " + std::to_string(x));
            }
            const bool last = x + h >= q;
            const double step = last ? q - x : h;
            OdeState err;
            const OdeState ynew = dopri5_step(x, y, step, coef, &err);
            const double en = error_norm(err, y, ynew, opts);
            if (en <= 1.0) {
                x = last ? q : x + step;
                y = ynew;
                traj.push(x, y);
            }
            const double factor = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
            if (en <= 1.0 && last) {
                // keep the proposal from the unclipped step size
                h = std::max(h, step * factor);
            } else {
                h = step * factor;
            }
            if (h < 1e-14 * std::max(1.0, std::abs(x))) {
                std::ostringstream msg;
                msg << "step size underflow at x = " << x << " (h = " << h << ", error norm " << en << ")";
                throw IntegrationError(msg.str());
            }
        }
    }
    return traj;
}

Trajectory integrate(const Potential& a, const Interval& I, double u0, double du0, const IntegratorOptions& opts) {
    return integrate(std::make_shared<const Potential>(a), I, u0, du0, opts);
}

namespace {

double residual_scale(const Potential& a, const Interval& I) { return std::max(1.0, sup_norm(a, I)); }

}  // namespace

double neumann_residual(const Potential& a, const IntegratorOptions& opts) {
    const Interval whole(0.0, a.length());
    const Trajectory t = integrate(a, whole, 1.0, 0.0, opts);
    return t.du().back() / t.amplitude(residual_scale(a, whole));
}

std::optional<Trajectory> find_nontrivial_neumann(const Potential& a, double tol, const IntegratorOptions& opts) {
    if (!(tol > 0.0)) throw std::invalid_argument("residual tolerance must be positive");
    const Interval whole(0.0, a.length());
    Trajectory t = integrate(a, whole, 1.0, 0.0, opts);
    const double r = t.du().back() / t.amplitude(residual_scale(a, whole));
    if (std::abs(r) <= tol) return t;
    return std::nullopt;
}

double disfocal_residual(const Potential& a, const Interval& I, BoundaryKind bc, const IntegratorOptions& opts) {
    const double scale = residual_scale(a, I);
    switch (bc) {
        case BoundaryKind::MixedDN: {
            const Trajectory t = integrate(a, I, 0.0, 1.0, opts);
            return t.du().back() / t.amplitude(scale);
        }
        case BoundaryKind::MixedND: {
            const Trajectory t = integrate(a, I, 1.0, 0.0, opts);
            return std::sqrt(scale) * t.u().back() / t.amplitude(scale);
        }
        case BoundaryKind::NeumannNeumann:
            break;
    }
    throw std::invalid_argument("disfocal_residual handles mixed conditions only; use neumann_residual");
}

std::vector<double> ZeroProfile::interlaced() const {
    std::vector<double> all;
    all.reserve(dprime_zeros.size() + zeros.size());
    for (std::size_t i = 0; i < dprime_zeros.size(); ++i) {
        all.push_back(dprime_zeros[i]);
        if (i < zeros.size()) all.push_back(zeros[i]);
    }
    return all;
}

ZeroProfile zero_profile(const Trajectory& t, bool require_neumann, double tol) {
    constexpr double half_pi = std::numbers::pi / 2.0;
    const auto& th = t.theta();
    const double span = t.end() - t.start();

    if (std::abs(std::cos(th.front())) > 1e-12) {
        throw ExtractionError("trajectory does not start at a zero of u'");
    }
    if (require_neumann) {
        const double scale = std::max(1.0, sup_norm(t.potential(), Interval(t.start(), t.end())));
        const double amp = t.amplitude(scale);
        if (std::abs(t.du().front()) / amp > tol || std::abs(t.du().back()) / amp > tol) {
            throw std::invalid_argument("trajectory does not satisfy the Neumann conditions within tolerance");
        }
    }

    const double first = th.front();
    const long start_level = std::lround(first / half_pi);
    const long end_level = start_level + 2 * std::lround((th.back() - first) / std::numbers::pi);
    if (end_level <= start_level) {
        throw ExtractionError("Prüfer angle makes no half-turn; u has no zeros on the interval");
    }

    ZeroProfile profile;
    profile.m = static_cast<int>((end_level - start_level) / 2);
    profile.dprime_zeros.push_back(t.start());

    double previous = t.start();
    for (long level = start_level + 1; level < end_level; ++level) {
        const double target = static_cast<double>(level) * half_pi;
        std::size_t bracket = th.size();
        int crossings = 0;
        for (std::size_t k = 0; k + 1 < th.size(); ++k) {
            const bool below = th[k] < target;
            const bool below_next = th[k + 1] < target;
            if (below != below_next) {
                ++crossings;
                if (bracket == th.size()) bracket = k;
            }
        }
        if (crossings != 1) {
            std::ostringstream msg;
            msg << "Prüfer angle crosses level " << level << "*pi/2 " << crossings << " times";
            throw ExtractionError(msg.str());
        }
        const auto& x = t.nodes();
        const double root = bracketed_root([&](double s) { return t.state_at(s)[2] - target; }, x[bracket],
                                           x[bracket + 1], 1e-12 * span);
        if (!(root > previous)) throw ExtractionError("zeros of u and u' are not strictly interlaced");
        previous = root;
        if ((level - start_level) % 2 == 0) {
            profile.dprime_zeros.push_back(root);
        } else {
            profile.zeros.push_back(root);
        }
    }
    if (!(t.end() > previous)) throw ExtractionError("zeros of u and u' are not strictly interlaced");
    profile.dprime_zeros.push_back(t.end());
    return profile;
}

}  // namespace neumann
