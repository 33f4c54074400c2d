#ifndef AGMSTAR_HYPERGEOMETRIC_HPP
#define AGMSTAR_HYPERGEOMETRIC_HPP

#include <cmath>

#include "agmstar/config.hpp"
#include "agmstar/errors.hpp"

namespace agmstar {

/// Series argument cap for F(1/2,1/2;1;z); the series diverges
/// logarithmically at z = 1, and this cap plus the term budget makes the
/// cost bound explicit instead of silent.
inline constexpr double hyp_z_max = 0.999999;

/// Term budget for one series evaluation.
inline constexpr long hyp_term_budget = 10'000'000;

/// Gauss hypergeometric series F(1/2,1/2;1;z) = sum t_n with t_0 = 1 and
/// t_{n+1} = t_n ((n+1/2)/(n+1))^2 z, truncated when |t_n| drops under
/// series_eps * |sum|. Neumaier-compensated so millions of terms near the
/// cap do not erode the sum.
inline double hyp_2f1_half(double z, const tolerance_config& cfg = {})
{
    detail::check_config(cfg);
    if (!(std::fabs(z) <= hyp_z_max))
        throw domain_overflow("hyp_2f1_half: |z| exceeds the series cap " +
                              detail::fmt_g17(hyp_z_max) + ", got " + detail::fmt_g17(z));

    double sum = 1.0;
    double comp = 0.0;
    double term = 1.0;
    for (long n = 0;; ++n) {
        double r = (static_cast<double>(n) + 0.5) / (static_cast<double>(n) + 1.0);
        term *= r * r * z;
        if (std::fabs(term) < cfg.series_eps * std::fabs(sum + comp))
            break;
        if (n == hyp_term_budget)
            throw max_iterations_exceeded("hyp_2f1_half: term budget exhausted at z = " +
                                          detail::fmt_g17(z));
        double t = sum + term;
        comp += std::fabs(sum) >= std::fabs(term) ? (sum - t) + term : (term - t) + sum;
        sum = t;
    }
    return sum + comp;
}

} // namespace agmstar

#endif
