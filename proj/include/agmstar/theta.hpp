#ifndef AGMSTAR_THETA_HPP
#define AGMSTAR_THETA_HPP

#include <cmath>

#include "agmstar/config.hpp"
#include "agmstar/detail/double_double.hpp"
#include "agmstar/errors.hpp"

namespace agmstar {

/// Hard cap on the nome |q|. The series converges on all of (-1,1) but
/// the term count grows like sqrt(1/ln(1/|q|)) and, on the negative
/// side, the alternating terms cancel to below any fixed compensation
/// precision, so the library refuses operands past this point.
inline constexpr double theta_q_max = 0.999;

/// Largest |q| at which the alternating series keeps enough accuracy for
/// identity work at the 1e-12 level in binary64 (see star backends).
inline constexpr double theta_q_safe = 0.9;

/// Smallest n >= 1 whose series term 2|q|^{n^2} falls below eps, i.e. the
/// first omitted index when theta truncates at tolerance eps:
/// n = ceil(sqrt(ln(eps/2)/ln|q|)).
inline int truncation_terms(double q, double eps)
{
    if (!(eps > 0.0) || !std::isfinite(eps))
        throw error("truncation_terms: eps must be a positive finite real");
    double a = std::fabs(q);
    if (a == 0.0)
        return 1;
    if (!(a < 1.0))
        throw domain_overflow("truncation_terms: |q| must be < 1, got " + detail::fmt_g17(q));

    double lt = std::log(0.5 * eps);
    double la = std::log(a);
    auto omitted_below = [&](int n) { return static_cast<double>(n) * n * la < lt; };
    if (omitted_below(1))
        return 1;
    double ratio = lt / la;
    if (ratio > 1e12) // |q| so close to 1 that the term count leaves int range
        throw domain_overflow("truncation_terms: |q| = " + detail::fmt_g17(a) +
                              " needs more series terms than this build supports");
    int n = std::max(1, static_cast<int>(std::ceil(std::sqrt(ratio))));
    while (!omitted_below(n))
        ++n;
    while (n > 1 && omitted_below(n - 1))
        --n;
    return n;
}

namespace detail {

// 1 + 2 sum_{n>=1} q^{n^2}, accumulated in double-double. Plain binary64
// summation loses ~7 digits to cancellation at q = -0.9, which is far too
// coarse for the Gauss identity agm(theta^2(q), theta^2(-q)) = 1 at the
// 1e-12 level; the compensated sum keeps the full binary64 result.
inline dd theta_sum_dd(double q, double series_eps)
{
    // Truncating deeper than the contract's bound is always valid; the
    // 1e-32 floor matches the accumulator's resolution.
    int n_stop = truncation_terms(q, std::min(series_eps, 1e-32));
    dd sum{1.0, 0.0};
    dd pw{q, 0.0};               // q^{n^2}
    dd q2 = mul(dd{q, 0.0}, q);
    dd fac = mul(q2, q);         // q^{2n+1}
    for (int n = 1; n < n_stop; ++n) {
        sum = add(sum, mul(pw, 2.0));
        pw = mul(pw, fac);
        fac = mul(fac, q2);
    }
    return sum;
}

inline void check_nome(double q)
{
    if (!(std::fabs(q) <= theta_q_max))
        throw domain_overflow("theta: |q| exceeds the supported nome cap " +
                              fmt_g17(theta_q_max) + ", got " + fmt_g17(q));
}

} // namespace detail

/// Jacobi theta series theta(q) = 1 + 2 sum_{n>=1} q^{n^2} on (-1,1),
/// truncated once the first omitted term is below series_eps. Strictly
/// increasing; theta(0) = 1. For q below about -0.96 the true value sinks
/// under the compensation floor and the result degrades toward 0.
inline double theta(double q, const tolerance_config& cfg = {})
{
    detail::check_config(cfg);
    detail::check_nome(q);
    double v = detail::to_double(detail::theta_sum_dd(q, cfg.series_eps));
    return v > 0.0 ? v : 0.0;
}

/// theta(q) squared, squared before rounding so no accuracy is lost.
inline double theta_sq(double q, const tolerance_config& cfg = {})
{
    detail::check_config(cfg);
    detail::check_nome(q);
    double v = detail::to_double(detail::sqr(detail::theta_sum_dd(q, cfg.series_eps)));
    return v > 0.0 ? v : 0.0;
}

namespace detail {

struct nome_root {
    double q = 0.0;
    int iterations = 0;
};

inline nome_root inverse_theta_sq_impl(double v, const tolerance_config& cfg)
{
    detail::check_config(cfg);
    if (!std::isfinite(v) || !(v > 0.0))
        throw domain_overflow("inverse_theta_sq: v must be a positive finite real, got " +
                              detail::fmt_g17(v));
    if (v == 1.0)
        return {0.0, 0}; // theta_sq(0) == 1 exactly

    double reach_hi = theta_sq(theta_q_max, cfg);
    double reach_lo = theta_sq(-theta_q_max, cfg);
    if (v > reach_hi || v < reach_lo)
        throw domain_overflow("inverse_theta_sq: v = " + detail::fmt_g17(v) +
                              " is outside the reachable theta_sq range [" +
                              detail::fmt_g17(reach_lo) + ", " + detail::fmt_g17(reach_hi) + "]");

    // Grow a monotone bracket outward from 0 by geometric steps toward
    // the relevant endpoint.
    double lo, hi;
    if (v > 1.0) {
        lo = 0.0;
        hi = 0.5;
        for (int k = 0; theta_sq(hi, cfg) < v; ++k) {
            lo = hi;
            hi = 0.5 * (hi + theta_q_max);
            if (k >= 80) {
                hi = theta_q_max; // range check above guarantees theta_sq(q_max) >= v
                break;
            }
        }
    } else {
        hi = 0.0;
        lo = -0.5;
        for (int k = 0; theta_sq(lo, cfg) > v; ++k) {
            hi = lo;
            lo = 0.5 * (lo - theta_q_max);
            if (k >= 80) {
                lo = -theta_q_max;
                break;
            }
        }
    }

    int it = 0;
    while (true) {
        double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi))
            break; // one ulp wide
        if (it == cfg.max_iter)
            throw max_iterations_exceeded(
                "inverse_theta_sq: bracket still above one ulp after " +
                std::to_string(cfg.max_iter) + " iterations");
        ++it;
        double fm = theta_sq(mid, cfg) - v;
        if (fm == 0.0)
            return {mid, it};
        if (fm < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    double rlo = std::fabs(theta_sq(lo, cfg) - v);
    double rhi = std::fabs(theta_sq(hi, cfg) - v);
    return {rlo <= rhi ? lo : hi, it};
}

} // namespace detail

/// Invert v = theta_sq(q) for q in [-q_max, q_max]. Monotonicity makes the
/// solution unique; bisection is run down to a one-ulp bracket and the
/// endpoint with the smaller theta_sq residual is returned, which is the
/// best q binary64 can represent (near q_max the slope is ~1000*v, so any
/// coarser stop would breach the residual contract).
inline double inverse_theta_sq(double v, const tolerance_config& cfg = {})
{
    return detail::inverse_theta_sq_impl(v, cfg).q;
}

} // namespace agmstar

#endif
