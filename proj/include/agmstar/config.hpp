#ifndef AGMSTAR_CONFIG_HPP
#define AGMSTAR_CONFIG_HPP

#include <cmath>
#include <limits>

#include "agmstar/detail/format.hpp"
#include "agmstar/errors.hpp"

namespace agmstar {

/// Convergence thresholds and iteration caps, one knob per iterative
/// phase. Every public operation takes one (defaults are fine for
/// full-precision binary64 work).
struct tolerance_config {
    /// AGM iteration stops when |x_n - y_n| <= agm_rel_tol * x_n.
    double agm_rel_tol = 4.0 * std::numeric_limits<double>::epsilon();
    /// Relative width at which root bisections stop; also the scale of
    /// the residual contracts they promise.
    double root_abs_tol = 1e-13;
    /// Series are truncated when the next term drops below this
    /// (relative for the hypergeometric sum, absolute for theta).
    double series_eps = 1e-18;
    /// Relative refinement target of the adaptive quadrature.
    double quad_tol = 1e-12;
    /// Iteration cap applied to each phase independently.
    int max_iter = 64;
};

namespace detail {

inline void check_config(const tolerance_config& cfg)
{
    auto bad = [](double t) { return !(t > 0.0) || !std::isfinite(t); };
    if (bad(cfg.agm_rel_tol) || bad(cfg.root_abs_tol) || bad(cfg.series_eps) || bad(cfg.quad_tol))
        throw error("tolerance_config: all tolerances must be positive finite reals");
    if (cfg.max_iter < 1)
        throw error("tolerance_config: max_iter must be >= 1");
}

inline void require_positive_finite(double v, const char* name)
{
    if (!(std::isfinite(v) && v > 0.0))
        throw non_positive_input(std::string("operand ") + name +
                                 " must be a positive finite real, got " + fmt_g17(v));
}

} // namespace detail

} // namespace agmstar

#endif
