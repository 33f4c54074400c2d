#ifndef AGMSTAR_ELLIPTIC_HPP
#define AGMSTAR_ELLIPTIC_HPP

#include <array>
#include <cmath>
#include <limits>

#include "agmstar/agm.hpp"
#include "agmstar/config.hpp"
#include "agmstar/errors.hpp"

namespace agmstar {

/// Largest operand ratio the quadrature route accepts; past this the
/// integrand's boundary layer at pi/2 is too thin for the refinement
/// budget.
inline constexpr double elliptic_quadrature_max_ratio = 1e6;

inline constexpr double pi = 3.14159265358979323846264338327950288;

namespace detail {

// 15-point Gauss-Legendre nodes/weights on [-1, 1], Newton-refined at 50
// digits and rounded to binary64.
inline constexpr std::array<std::array<double, 2>, 15> gauss_legendre_15 = {{
    {+9.87992518020485377e-01, 3.07532419961172691e-02},
    {+9.37273392400705951e-01, 7.03660474881081244e-02},
    {+8.48206583410427206e-01, 1.07159220467171939e-01},
    {+7.24417731360170070e-01, 1.39570677926154324e-01},
    {+5.70972172608538830e-01, 1.66269205816993920e-01},
    {+3.94151347077563385e-01, 1.86161000015562211e-01},
    {+2.01194093997434514e-01, 1.98431485327111579e-01},
    {+0.00000000000000000e+00, 2.02578241925561287e-01},
    {-2.01194093997434514e-01, 1.98431485327111579e-01},
    {-3.94151347077563385e-01, 1.86161000015562211e-01},
    {-5.70972172608538830e-01, 1.66269205816993920e-01},
    {-7.24417731360170070e-01, 1.39570677926154324e-01},
    {-8.48206583410427206e-01, 1.07159220467171939e-01},
    {-9.37273392400705951e-01, 7.03660474881081244e-02},
    {-9.87992518020485377e-01, 3.07532419961172691e-02},
}};

template <class F>
double gl15_panel(F&& f, double a, double b)
{
    double mid = 0.5 * (a + b);
    double half = 0.5 * (b - a);
    double s = 0.0;
    for (const auto& [x, w] : gauss_legendre_15)
        s += w * f(mid + half * x);
    return s * half;
}

struct quad_budget {
    long evals_left;
};

// Recursive interval halving: accept a panel once its estimate matches
// the sum of its halves to rel_tol of the panel's own mass. For a
// positive integrand the accepted corrections then total at most
// rel_tol times the integral. The width floor stops branches whose
// panels have shrunk to a few ulps of the abscissa, where node
// quantization noise dominates and further halving cannot help.
template <class F>
double adapt_panel(F&& f, double a, double b, double whole, double rel_tol, int depth_left,
                   quad_budget& budget)
{
    constexpr double eps = std::numeric_limits<double>::epsilon();
    double m = 0.5 * (a + b);
    double left = gl15_panel(f, a, m);
    double right = gl15_panel(f, m, b);
    budget.evals_left -= 2;
    double delta = (left + right) - whole;
    double tol = std::max(rel_tol, 32.0 * eps) * (std::fabs(left) + std::fabs(right));
    if (std::fabs(delta) <= tol || b - a <= 8.0 * eps * std::fabs(b))
        return left + right;
    if (depth_left == 0 || budget.evals_left <= 0)
        throw quadrature_not_converged("elliptic quadrature: refinement budget exhausted");
    return adapt_panel(f, a, m, left, rel_tol, depth_left - 1, budget) +
           adapt_panel(f, m, b, right, rel_tol, depth_left - 1, budget);
}

template <class F>
double integrate_adaptive(F&& f, double a, double b, double rel_tol, int max_depth)
{
    double whole = gl15_panel(f, a, b);
    quad_budget budget{1 << 18};
    return adapt_panel(f, a, b, whole, rel_tol, max_depth, budget);
}

} // namespace detail

/// Complete elliptic integral of the pair (x, y),
///   I(x,y) = integral_0^{pi/2} dphi / sqrt(x^2 cos^2 phi + y^2 sin^2 phi),
/// evaluated through Gauss' relation I(x,y) = pi / (2 agm(x,y)). The AGM
/// converges quadratically, so this is the production route.
inline double elliptic_integral(double x, double y, const tolerance_config& cfg = {})
{
    return 0.5 * pi / agm(x, y, cfg);
}

/// The same integral by adaptive Gauss-Legendre quadrature of the
/// integrand itself. Kept as an independent oracle for the AGM route.
/// Accurate to quad_tol relative for operand ratios up to ~1e4; beyond
/// that, abscissa quantization in the pi/2 boundary layer bounds the
/// achievable error at roughly ratio * machine epsilon (about 4e-12
/// relative at the 1e6 cap).
inline double elliptic_integral_quadrature(double x, double y, const tolerance_config& cfg = {})
{
    detail::check_config(cfg);
    detail::require_positive_finite(x, "x");
    detail::require_positive_finite(y, "y");
    if (x < y)
        std::swap(x, y); // the integral is symmetric; make that bit-exact
    double ratio = std::max(x, y) / std::min(x, y);
    if (ratio > elliptic_quadrature_max_ratio)
        throw domain_overflow("elliptic quadrature: operand ratio " + detail::fmt_g17(ratio) +
                              " exceeds the supported cap " +
                              detail::fmt_g17(elliptic_quadrature_max_ratio));

    auto integrand = [x, y](double phi) {
        return 1.0 / std::hypot(x * std::cos(phi), y * std::sin(phi));
    };
    return detail::integrate_adaptive(integrand, 0.0, 0.5 * pi, cfg.quad_tol, cfg.max_iter);
}

} // namespace agmstar

#endif
