#ifndef AGMSTAR_ROOTS_HPP
#define AGMSTAR_ROOTS_HPP

#include <cmath>
#include <string>

#include "agmstar/errors.hpp"

namespace agmstar {

struct root_result {
    double root = 0.0;
    int iterations = 0;
};

namespace detail {

// Plain bisection with geometric midpoints for a monotone residual with a
// sign change on [lo, hi], 0 < lo < hi. The stop criterion is relative
// interval width, so roots spanning the whole binary64 range (down to
// subnormals) converge in ~60 steps.
//
// sign_lo/sign_hi are the endpoint signs (+1/-1/0). Callers whose
// endpoint signs are known analytically can skip evaluations that are
// expensive or outside a series budget.
template <class F>
root_result bisect_signed(F&& f, double lo, double hi, int sign_lo, int sign_hi, double rel_tol,
                          int max_iter)
{
    if (sign_lo == 0)
        return {lo, 0};
    if (sign_hi == 0)
        return {hi, 0};
    if (sign_lo == sign_hi)
        throw bracket_failure("bisect: endpoints do not straddle the root");

    int it = 0;
    while (hi - lo > rel_tol * hi) {
        if (it == max_iter)
            throw max_iterations_exceeded("bisect: interval still above tolerance after " +
                                          std::to_string(max_iter) + " iterations");
        double mid = std::sqrt(lo) * std::sqrt(hi);
        if (!(mid > lo && mid < hi))
            break; // interval is one ulp wide
        double fm = f(mid);
        ++it;
        if (fm == 0.0)
            return {mid, it};
        if ((fm > 0.0 ? 1 : -1) == sign_hi)
            hi = mid;
        else
            lo = mid;
    }
    return {std::sqrt(lo) * std::sqrt(hi), it};
}

} // namespace detail

} // namespace agmstar

#endif
