#include "neumann/constants.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace neumann {

namespace {

constexpr double pi = std::numbers::pi;

void require_length(double L) {
    if (!(L > 0.0)) throw std::invalid_argument("domain length must be positive");
}

// x cot x, stable near 0.
double x_cot_x(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 3.0 - x2 * x2 / 45.0;
    }
    return x * std::cos(x) / std::sin(x);
}

// Largest admissible M for the J minimization on an interval of length l.
double critical_level(double l) { return pi * pi / (4.0 * l * l); }

void require_admissible(double M, double l) {
    const double top = critical_level(l);
    if (!(M > 0.0) || M > top * (1.0 + 4.0 * std::numeric_limits<double>::epsilon())) {
        throw DomainError("J-minimization requires 0 < M <= pi^2/(4|I|^2); got M = " + std::to_string(M) +
                          ", bound " + std::to_string(top));
    }
}

}  // namespace

double cot(double x, double pole_guard) {
    const double reduced = std::remainder(x, pi);
    if (std::abs(reduced) < pole_guard) {
        throw DomainError("cot evaluated within " + std::to_string(pole_guard) + " of a pole (x = " +
                          std::to_string(x) + ")");
    }
    return std::cos(reduced) / std::sin(reduced);
}

double lambda_n(int n, double L) {
    require_length(L);
    if (n < 0) throw std::invalid_argument("eigenvalue index must be nonnegative");
    const double k = n * pi / L;
    return k * k;
}

double mu_n(int n, double L) {
    require_length(L);
    if (n < 1) throw std::invalid_argument("mixed eigenvalue index starts at 1");
    const double k = (2 * n - 1) * pi / (2.0 * L);
    return k * k;
}

double beta1(double n, double L) {
    require_length(L);
    if (!(n > 0.0)) throw std::invalid_argument("beta1 requires n > 0");
    return 2.0 * pi * n * (n + 1.0) / L * cot(pi * n / (2.0 * (n + 1.0)));
}

double beta_inf(int n, double L) { return lambda_n(n + 1, L); }

double j_min(double M, const Interval& I) {
    const double l = I.length();
    require_admissible(M, l);
    if (M >= critical_level(l)) return 0.0;
    const double root = std::sqrt(M);
    return x_cot_x(root * l) / l;
}

double j_minimizer(double M, const Interval& I, double x) {
    require_admissible(M, I.length());
    if (!I.contains(x)) throw DomainError("evaluation point outside the interval");
    const double root = std::sqrt(M);
    return std::sin(root * (x - I.lo)) / std::sin(root * I.length());
}

double f_min(int r, double S) {
    if (r < 1 || !(S > 0.0) || !(r * pi > 2.0 * S)) {
        throw DomainError("cotangent-sum minimization requires r >= 1, S > 0 and r*pi > 2S");
    }
    return r * cot(S / r);
}

double yong_bound(double A, int k) {
    if (!(A > 0.0) || k < 0) throw std::invalid_argument("yong_bound requires A > 0 and k >= 0");
    const double root = std::sqrt(A);
    const double arg = root / (2.0 * (k + 1));
    if (!(arg < pi)) throw DomainError("yong_bound requires sqrt(A)/(2(k+1)) < pi");
    return A + 2.0 * (k + 1) * root * cot(arg);
}

}  // namespace neumann
