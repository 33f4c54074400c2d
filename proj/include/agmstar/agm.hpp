#ifndef AGMSTAR_AGM_HPP
#define AGMSTAR_AGM_HPP

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "agmstar/config.hpp"
#include "agmstar/errors.hpp"

namespace agmstar {

/// Iterate record of one arithmetic-geometric mean run. pairs[0] is the
/// input pair as given; from the first refinement on, pairs are ordered
/// larger-first and the intervals they span are nested.
struct agm_trace {
    std::vector<std::pair<double, double>> pairs;
    int iterations = 0;
    bool converged = false;
};

namespace detail {

inline double agm_core(double x, double y, const tolerance_config& cfg, agm_trace* trace)
{
    check_config(cfg);
    require_positive_finite(x, "x");
    require_positive_finite(y, "y");
    if (trace)
        trace->pairs.emplace_back(x, y);

    // Order-insensitive by construction, so agm(x,y) == agm(y,x) bit-exactly.
    double a = std::max(x, y);
    double b = std::min(x, y);

    // 0.5*a + 0.5*b never overflows and sqrt(a)*sqrt(b) keeps the
    // exponent in range for every finite positive pair, so no rescaling
    // is needed even for extreme operands.
    int it = 0;
    while (a - b > cfg.agm_rel_tol * a) {
        if (it == cfg.max_iter)
            throw max_iterations_exceeded("agm: pair gap still above tolerance after " +
                                          std::to_string(cfg.max_iter) + " iterations");
        double mid = 0.5 * a + 0.5 * b;
        double gm = std::sqrt(a) * std::sqrt(b);
        a = mid;
        b = gm;
        if (b > a)
            std::swap(a, b); // rounding can flip the order by one ulp near convergence
        ++it;
        if (trace)
            trace->pairs.emplace_back(a, b);
    }
    if (trace) {
        trace->iterations = it;
        trace->converged = true;
    }
    // midpoint as a - gap/2: exact for a == b and never rounds a positive
    // pair to 0 at the subnormal floor, unlike 0.5*a + 0.5*b
    return a - 0.5 * (a - b);
}

} // namespace detail

/// Arithmetic-geometric mean of two positive reals: the common limit of
/// x_n = (x_{n-1}+y_{n-1})/2, y_n = sqrt(x_{n-1} y_{n-1}).
inline double agm(double x, double y, const tolerance_config& cfg = {})
{
    return detail::agm_core(x, y, cfg, nullptr);
}

/// Same iteration, returning the full iterate list. The midpoint of the
/// final pair equals agm(x,y) within agm_rel_tol.
inline agm_trace agm_traced(double x, double y, const tolerance_config& cfg = {})
{
    agm_trace trace;
    detail::agm_core(x, y, cfg, &trace);
    return trace;
}

} // namespace agmstar

#endif
