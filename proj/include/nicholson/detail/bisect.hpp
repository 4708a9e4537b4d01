#pragma once

#include <cmath>

namespace nicholson::detail {

// Bisection on [lo, hi] where f(lo) and f(hi) have opposite signs. Stops when the
// bracket is narrower than abs_tol or cannot be split further.
template <class F>
double bisect(F&& f, double lo, double hi, double abs_tol) {
    const bool lo_positive = f(lo) > 0.0;
    for (int it = 0; it < 400 && hi - lo > abs_tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (!(lo < mid && mid < hi)) break;
        if ((f(mid) > 0.0) == lo_positive) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace nicholson::detail
