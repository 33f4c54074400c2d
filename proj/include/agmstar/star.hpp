#ifndef AGMSTAR_STAR_HPP
#define AGMSTAR_STAR_HPP

#include <cmath>
#include <limits>
#include <utility>

#include "agmstar/agm.hpp"
#include "agmstar/config.hpp"
#include "agmstar/errors.hpp"
#include "agmstar/hypergeometric.hpp"
#include "agmstar/roots.hpp"
#include "agmstar/theta.hpp"

namespace agmstar {

enum class star_backend { theta, agm_inverse, hypergeometric };

enum class star_method { automatic, theta, agm_inverse, hypergeometric };

inline const char* to_string(star_backend b)
{
    switch (b) {
    case star_backend::theta: return "theta";
    case star_backend::agm_inverse: return "agm-inverse";
    case star_backend::hypergeometric: return "hypergeometric";
    }
    return "?";
}

/// One star-operation evaluation. The defining property is
/// agm(1, value) = mean, restated by `residual` in each backend's own
/// terms. `nome` is the q with theta_sq(q) = 1/mean, or NaN when that is
/// not representable.
struct star_result {
    double value = 0.0;
    double mean = 0.0;
    double nome = std::numeric_limits<double>::quiet_NaN();
    star_backend backend = star_backend::theta;
    int iterations = 0;
    double residual = 0.0;
};

/// F(1/2,1/2;1;hyp_z_max), i.e. the largest right-hand side the
/// hypergeometric backend can reach before the solution drops under the
/// series cap. Equals 1/agm(1, 1e-3); 50-digit value rounded to binary64.
inline constexpr double hyp_reachable_max = 5.2801571547718663;

namespace detail {

inline double nome_or_nan(double mean, const tolerance_config& cfg)
{
    try {
        return inverse_theta_sq(1.0 / mean, cfg);
    } catch (const error&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

} // namespace detail

/// Direct backend: recover q from 1/agm(x,y) = theta_sq(q) and return
/// theta_sq(-q)/theta_sq(q). Refuses with domain_overflow once |q| would
/// exceed theta_q_safe, where the alternating series' accuracy budget
/// ends; callers should fall back to star_agm_inverse.
inline star_result star_theta(double x, double y, const tolerance_config& cfg = {})
{
    star_result out;
    out.backend = star_backend::theta;
    out.mean = agm(x, y, cfg);

    double v = 1.0 / out.mean;
    detail::nome_root nr = detail::inverse_theta_sq_impl(v, cfg); // domain_overflow if unreachable
    if (std::fabs(nr.q) > theta_q_safe)
        throw domain_overflow("star theta backend: required nome " + detail::fmt_g17(nr.q) +
                              " exceeds the accuracy cap " + detail::fmt_g17(theta_q_safe));
    out.nome = nr.q;
    out.iterations = nr.iterations;

    detail::dd num = detail::sqr(detail::theta_sum_dd(-nr.q, cfg.series_eps));
    detail::dd den = detail::sqr(detail::theta_sum_dd(nr.q, cfg.series_eps));
    out.value = detail::to_double(detail::div(num, den));
    out.residual = std::fabs(agm(1.0, out.value, cfg) - out.mean) / out.mean;
    return out;
}

/// Root-finding backend: with A = 1/agm(x,y), bisect for the B solving
/// agm(A, B) = 1 inside [max(ulp, 2-A), 1/A] (valid since
/// sqrt(AB) <= agm(A,B) <= (A+B)/2) and return the quotient B/A.
/// Midpoints are geometric so a fixed relative tolerance is reached in
/// ~55 steps even when B is subnormal.
inline star_result star_agm_inverse(double x, double y, const tolerance_config& cfg = {})
{
    star_result out;
    out.backend = star_backend::agm_inverse;
    out.mean = agm(x, y, cfg);

    double a_val = 1.0 / out.mean;
    if (!std::isfinite(a_val) || a_val == 0.0)
        throw domain_overflow("star agm-inverse backend: 1/agm(x,y) leaves binary64 range");

    constexpr double eps = std::numeric_limits<double>::epsilon();
    double lo = std::max(std::numeric_limits<double>::denorm_min(), (2.0 - a_val) * (1.0 - 8.0 * eps));
    double hi = out.mean * (1.0 + 8.0 * eps);
    auto g = [&](double b) { return agm(a_val, b, cfg) - 1.0; };

    double g_lo = g(lo);
    double g_hi = g(hi);
    if (g_lo > 0.0) {
        if (2.0 - a_val > 0.0)
            throw bracket_failure("star agm-inverse backend: analytic lower bound does not straddle");
        // A >= 2 and even the smallest positive double gives agm(A,B) > 1:
        // the true B (about 4A e^{-pi A/2}) is below binary64 range.
        throw domain_overflow("star agm-inverse backend: solution of agm(A,B) = 1 underflows "
                              "binary64 for agm(x,y) = " + detail::fmt_g17(out.mean));
    }
    if (g_hi < 0.0)
        throw bracket_failure("star agm-inverse backend: analytic upper bound does not straddle");

    double tol = std::max(cfg.root_abs_tol, 4.0 * eps);
    root_result r = detail::bisect_signed(g, lo, hi, g_lo == 0.0 ? 0 : -1, g_hi == 0.0 ? 0 : 1,
                                          tol, cfg.max_iter);
    out.iterations = r.iterations;
    out.value = r.root / a_val;
    if (!std::isfinite(out.value) || out.value <= 0.0)
        throw domain_overflow("star agm-inverse backend: value B/A leaves binary64 range for "
                              "agm(x,y) = " + detail::fmt_g17(out.mean));
    out.residual = std::fabs(agm(a_val, r.root, cfg) - 1.0);
    out.nome = detail::nome_or_nan(out.mean, cfg);
    return out;
}

/// Series backend for 0 < y <= x < 1: the value is the unique s in (0,1)
/// with F(1/2,1/2;1;1-s^2) = (1/x) F(1/2,1/2;1;1-y^2/x^2). The left side
/// is strictly decreasing in s, so the bracket signs are known without
/// evaluating at the endpoints (which would blow the series budget at the
/// z cap).
inline star_result star_hypergeom(double x, double y, const tolerance_config& cfg = {})
{
    detail::check_config(cfg);
    detail::require_positive_finite(x, "x");
    detail::require_positive_finite(y, "y");
    if (x < y)
        std::swap(x, y);
    if (!(x < 1.0))
        throw hypergeom_domain("star hypergeometric backend requires 0 < y <= x < 1, got x = " +
                               detail::fmt_g17(x));

    double r = y / x;
    double z_rhs = (1.0 - r) * (1.0 + r); // 1 - y^2/x^2 without cancellation
    double rhs = hyp_2f1_half(z_rhs, cfg) / x;
    if (rhs > hyp_reachable_max - 1e-9)
        throw domain_overflow("star hypergeometric backend: operands need a series argument "
                              "beyond the z cap (rhs = " + detail::fmt_g17(rhs) + ")");

    auto f = [&](double s) { return hyp_2f1_half((1.0 - s) * (1.0 + s), cfg) - rhs; };
    double lo = std::sqrt(1.0 - hyp_z_max) * (1.0 + 1e-12); // keep z(lo) under the cap
    double hi = 1.0;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    double tol = std::max(1e-2 * cfg.root_abs_tol, 4.0 * eps);
    root_result root = detail::bisect_signed(f, lo, hi, +1, -1, tol, cfg.max_iter);

    star_result out;
    out.backend = star_backend::hypergeometric;
    out.value = root.root;
    out.iterations = root.iterations;
    out.mean = agm(x, y, cfg);
    out.residual = std::fabs(f(root.root)) / rhs;
    out.nome = detail::nome_or_nan(out.mean, cfg);
    return out;
}

/// The binary operation x (star) y, whose mean is the AGM. Operands are
/// sorted first, making commutativity bit-exact. Automatic mode prefers
/// the direct theta definition and falls back to the agm-inverse
/// root-finder when the nome leaves its accuracy domain.
inline star_result star(double x, double y, star_method method = star_method::automatic,
                        const tolerance_config& cfg = {})
{
    detail::check_config(cfg);
    detail::require_positive_finite(x, "x");
    detail::require_positive_finite(y, "y");
    if (x < y)
        std::swap(x, y);

    switch (method) {
    case star_method::theta:
        return star_theta(x, y, cfg);
    case star_method::agm_inverse:
        return star_agm_inverse(x, y, cfg);
    case star_method::hypergeometric:
        return star_hypergeom(x, y, cfg);
    case star_method::automatic:
        break;
    }
    try {
        return star_theta(x, y, cfg);
    } catch (const domain_overflow&) {
        return star_agm_inverse(x, y, cfg);
    }
}

inline double star_value(double x, double y, const tolerance_config& cfg = {})
{
    return star(x, y, star_method::automatic, cfg).value;
}

/// Inverse element with respect to the operation: x * ((1/x) star (1/x)),
/// satisfying star(x, star_inverse(x)) = 1.
inline double star_inverse(double x, const tolerance_config& cfg = {})
{
    detail::require_positive_finite(x, "x");
    star_result r = star(1.0 / x, 1.0 / x, star_method::automatic, cfg);
    return x * r.value;
}

/// Solve star(x, y) = z for y: y = x * ((1/x) star (z/x)).
inline double solve_right(double x, double z, const tolerance_config& cfg = {})
{
    detail::require_positive_finite(x, "x");
    detail::require_positive_finite(z, "z");
    star_result r = star(1.0 / x, z / x, star_method::automatic, cfg);
    return x * r.value;
}

} // namespace agmstar

#endif
