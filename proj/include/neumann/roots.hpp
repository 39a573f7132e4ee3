#ifndef NEUMANN_ROOTS_HPP
#define NEUMANN_ROOTS_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace neumann {

class BracketError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Illinois regula falsi with a bisection fallback whenever the bracket fails
// to halve. Requires f(lo) and f(hi) of opposite sign.
template <typename F>
double bracketed_root(F&& f, double lo, double hi, double xtol, int max_iter = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (std::signbit(flo) == std::signbit(fhi)) {
        throw BracketError("root not bracketed on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    int side = 0;
    double checkpoint = hi - lo;
    for (int it = 0; it < max_iter; ++it) {
        if (hi - lo <= xtol) break;
        double c = (lo * fhi - hi * flo) / (fhi - flo);
        const bool stalled = it % 3 == 2 && hi - lo > 0.5 * checkpoint;
        if (stalled || !(c > lo && c < hi)) c = 0.5 * (lo + hi);
        if (it % 3 == 2) checkpoint = hi - lo;
        const double fc = f(c);
        if (fc == 0.0) return c;
        if (std::signbit(fc) == std::signbit(fhi)) {
            hi = c;
            fhi = fc;
            if (side == -1) flo *= 0.5;
            side = -1;
        } else {
            lo = c;
            flo = fc;
            if (side == 1) fhi *= 0.5;
            side = 1;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace neumann

#endif  // NEUMANN_ROOTS_HPP
