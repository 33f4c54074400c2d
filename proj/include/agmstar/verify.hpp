#ifndef AGMSTAR_VERIFY_HPP
#define AGMSTAR_VERIFY_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "agmstar/agm.hpp"
#include "agmstar/config.hpp"
#include "agmstar/elliptic.hpp"
#include "agmstar/errors.hpp"
#include "agmstar/hypergeometric.hpp"
#include "agmstar/star.hpp"
#include "agmstar/theta.hpp"

namespace agmstar {

enum class identity_id {
    unit_A,
    diagonal_B,
    mean_C,
    cancel_D,
    distrib_E,
    inverse_F,
    gauss_eq4,
    defining_eq6,
    meanstep_eq7,
    integer_family,
    nonassoc_witness,
    cross_backend,
    elliptic_gauss,
    hyp_series_integral,
};

inline constexpr std::array<identity_id, 14> all_identities = {
    identity_id::unit_A,          identity_id::diagonal_B,
    identity_id::mean_C,          identity_id::cancel_D,
    identity_id::distrib_E,       identity_id::inverse_F,
    identity_id::gauss_eq4,       identity_id::defining_eq6,
    identity_id::meanstep_eq7,    identity_id::integer_family,
    identity_id::nonassoc_witness, identity_id::cross_backend,
    identity_id::elliptic_gauss,  identity_id::hyp_series_integral,
};

inline const char* to_string(identity_id id)
{
    switch (id) {
    case identity_id::unit_A: return "unit_A";
    case identity_id::diagonal_B: return "diagonal_B";
    case identity_id::mean_C: return "mean_C";
    case identity_id::cancel_D: return "cancel_D";
    case identity_id::distrib_E: return "distrib_E";
    case identity_id::inverse_F: return "inverse_F";
    case identity_id::gauss_eq4: return "gauss_eq4";
    case identity_id::defining_eq6: return "defining_eq6";
    case identity_id::meanstep_eq7: return "meanstep_eq7";
    case identity_id::integer_family: return "integer_family";
    case identity_id::nonassoc_witness: return "nonassoc_witness";
    case identity_id::cross_backend: return "cross_backend";
    case identity_id::elliptic_gauss: return "elliptic_gauss";
    case identity_id::hyp_series_integral: return "hyp_series_integral";
    }
    return "?";
}

inline std::optional<identity_id> identity_from_string(std::string_view s)
{
    for (identity_id id : all_identities)
        if (s == to_string(id))
            return id;
    return std::nullopt;
}

/// Pass tolerance of each identity. Monotonicity checks (B, D) use 0: the
/// recorded residual is the largest consecutive non-increase, negative
/// whenever the sequence is strictly increasing.
inline double identity_tolerance(identity_id id)
{
    switch (id) {
    case identity_id::unit_A: return 1e-10;
    case identity_id::diagonal_B: return 0.0;
    case identity_id::mean_C: return 1e-9;
    case identity_id::cancel_D: return 0.0;
    case identity_id::distrib_E: return 1e-8;
    case identity_id::inverse_F: return 1e-8;
    case identity_id::gauss_eq4: return 1e-12;
    case identity_id::defining_eq6: return 1e-10;
    case identity_id::meanstep_eq7: return 1e-9;
    case identity_id::integer_family: return 1e-7;
    case identity_id::nonassoc_witness: return 1e-3;
    case identity_id::cross_backend: return 1e-8;
    case identity_id::elliptic_gauss: return 1e-9;
    case identity_id::hyp_series_integral: return 1e-9;
    }
    return 0.0;
}

/// Per-identity outcome. For every identity except nonassoc_witness,
/// passed means max_residual <= tolerance and witness holds the
/// worst-offending (or erroring) operand tuple of a failure. For
/// nonassoc_witness, passed means a triple with defect above the
/// threshold was found, and witness is that triple.
struct identity_report {
    identity_id id = identity_id::unit_A;
    int samples = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::vector<double> witness;
};

inline bool operator==(const identity_report& a, const identity_report& b)
{
    return a.id == b.id && a.samples == b.samples && a.max_residual == b.max_residual &&
           a.tolerance == b.tolerance && a.passed == b.passed && a.witness == b.witness;
}

enum class grid_generator { log_grid, random_seeded };

/// Operand tuples (1 to 3 wide) the suite samples from, plus how they were
/// made. Seed-bearing grids regenerate identically from the same seed.
struct sample_grid {
    std::vector<std::vector<double>> points;
    grid_generator generator = grid_generator::log_grid;
    std::uint64_t seed = 0;
};

inline constexpr std::uint64_t default_grid_seed = 987654321u;

namespace detail {

inline std::vector<double> log_space(double lo, double hi, int n)
{
    std::vector<double> v(static_cast<std::size_t>(n));
    double llo = std::log(lo);
    double lhi = std::log(hi);
    for (int i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i)] = std::exp(llo + (lhi - llo) * i / (n - 1));
    v.front() = lo;
    v.back() = hi;
    return v;
}

} // namespace detail

/// Built-in verification grid: 7x7 log pairs on [0.05, 20] (theta-backend
/// domain), 7x7 log pairs on [0.005, 1000] (agm-inverse fallback; the
/// lower bound keeps star values representable), 64 log singles, 5^3
/// structured triples on [0.2, 5], 8x8 pairs inside (0,1) for the
/// hypergeometric backend, and 64 seeded random tuples.
inline sample_grid default_grid(std::uint64_t seed = default_grid_seed)
{
    sample_grid g;
    g.generator = grid_generator::random_seeded;
    g.seed = seed;

    auto theta_axis = detail::log_space(0.05, 20.0, 7);
    for (double x : theta_axis)
        for (double y : theta_axis)
            g.points.push_back({x, y});

    auto wide_axis = detail::log_space(0.005, 1000.0, 7);
    for (double x : wide_axis)
        for (double y : wide_axis)
            g.points.push_back({x, y});

    for (double x : detail::log_space(0.05, 20.0, 64))
        g.points.push_back({x});

    auto triple_axis = detail::log_space(0.2, 5.0, 5);
    for (double a : triple_axis)
        for (double x : triple_axis)
            for (double y : triple_axis)
                g.points.push_back({a, x, y});

    auto hyp_axis = detail::log_space(0.35, 0.95, 8);
    for (double x : hyp_axis)
        for (double y : hyp_axis)
            g.points.push_back({x, y});

    // 64 random tuples. Raw engine words are mapped to [0,1) by hand so
    // the sequence does not depend on the standard library's
    // distribution implementation.
    std::mt19937_64 rng(seed);
    auto u01 = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    auto log_uniform = [&](double lo, double hi) {
        return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * u01());
    };
    for (int i = 0; i < 24; ++i)
        g.points.push_back({log_uniform(0.05, 20.0), log_uniform(0.05, 20.0)});
    for (int i = 0; i < 16; ++i)
        g.points.push_back({log_uniform(0.005, 1000.0), log_uniform(0.005, 1000.0)});
    for (int i = 0; i < 24; ++i)
        g.points.push_back({log_uniform(0.2, 5.0), log_uniform(0.2, 5.0), log_uniform(0.2, 5.0)});
    return g;
}

// ---- standalone residual evaluators -------------------------------------

inline double residual_unit_law(double x, const tolerance_config& cfg = {})
{
    return std::fabs(star_value(1.0, x, cfg) - x) / x;
}

// negative when the diagonal map is strictly increasing over (x_lo, x_hi)
inline double residual_diagonal_pair(double x_lo, double x_hi, const tolerance_config& cfg = {})
{
    double d_lo = star_value(x_lo, x_lo, cfg);
    double d_hi = star_value(x_hi, x_hi, cfg);
    return (d_lo - d_hi) / std::fabs(d_hi);
}

inline double residual_mean_property(double x, double y, const tolerance_config& cfg = {})
{
    star_result r = star(x, y, star_method::automatic, cfg);
    double diag = star_value(r.mean, r.mean, cfg);
    return std::fabs(r.value - diag) / std::fabs(r.value);
}

inline double residual_cancellation_pair(double a, double x_lo, double x_hi,
                                         const tolerance_config& cfg = {})
{
    double s_lo = star_value(a, x_lo, cfg);
    double s_hi = star_value(a, x_hi, cfg);
    return (s_lo - s_hi) / std::fabs(s_hi);
}

inline double residual_distributive(double a, double x, double y, const tolerance_config& cfg = {})
{
    double lhs = star_value(a * x, a * y, cfg);
    double rhs = star_value(a, a * star_value(x, y, cfg), cfg);
    return std::fabs(lhs - rhs) / std::fabs(lhs);
}

inline double residual_inverse_element(double x, const tolerance_config& cfg = {})
{
    return std::fabs(star_value(x, star_inverse(x, cfg), cfg) - 1.0);
}

inline double residual_solve_right(double x, double y, const tolerance_config& cfg = {})
{
    double z = star_value(x, y, cfg);
    return std::fabs(solve_right(x, z, cfg) - y) / y;
}

inline double residual_gauss_identity(double q, const tolerance_config& cfg = {})
{
    return std::fabs(agm(theta_sq(q, cfg), theta_sq(-q, cfg), cfg) - 1.0);
}

inline double residual_defining_property(double x, double y, const tolerance_config& cfg = {})
{
    star_result r = star(x, y, star_method::automatic, cfg);
    return std::fabs(agm(1.0, r.value, cfg) - r.mean) / r.mean;
}

inline double residual_mean_step(double x, double y, const tolerance_config& cfg = {})
{
    double v1 = star_value(x, y, cfg);
    double v2 = star_value(0.5 * x + 0.5 * y, std::sqrt(x) * std::sqrt(y), cfg);
    return std::fabs(v1 - v2) / std::fabs(v1);
}

inline double residual_half_step(double x, const tolerance_config& cfg = {})
{
    return std::fabs(star_value(0.5 * x + 0.5, std::sqrt(x), cfg) - x) / x;
}

inline double residual_integer_identity(int n, const tolerance_config& cfg = {})
{
    double x = 2.0 * n + 1.0;
    double y = 2.0 * static_cast<double>(n) * n + 2.0 * n + 1.0;
    double target = x * x;
    return std::fabs(star_value(x, y, cfg) - target) / target;
}

inline double residual_associativity(double x, double y, double z, const tolerance_config& cfg = {})
{
    double lhs = star_value(star_value(x, y, cfg), z, cfg);
    double rhs = star_value(x, star_value(y, z, cfg), cfg);
    return std::fabs(lhs - rhs) / std::fabs(lhs);
}

/// Largest relative disagreement between the backends applicable to
/// (x, y); backends whose domain excludes the pair are skipped.
inline double residual_cross_backend(double x, double y, const tolerance_config& cfg = {})
{
    double ref = star_agm_inverse(x, y, cfg).value;
    double v_min = ref;
    double v_max = ref;
    try {
        double v = star_theta(x, y, cfg).value;
        v_min = std::min(v_min, v);
        v_max = std::max(v_max, v);
    } catch (const domain_overflow&) {
    }
    if (x < 1.0 && y < 1.0) {
        try {
            double v = star_hypergeom(x, y, cfg).value;
            v_min = std::min(v_min, v);
            v_max = std::max(v_max, v);
        } catch (const domain_overflow&) {
        }
    }
    return (v_max - v_min) / ref;
}

inline double residual_elliptic_agm_relation(double x, double y, const tolerance_config& cfg = {})
{
    return std::fabs(elliptic_integral_quadrature(x, y, cfg) - elliptic_integral(x, y, cfg));
}

inline double residual_hyp_series_vs_integral(double z, const tolerance_config& cfg = {})
{
    return std::fabs(hyp_2f1_half(z, cfg) -
                     (2.0 / pi) * elliptic_integral_quadrature(1.0, std::sqrt(1.0 - z), cfg));
}

/// Re-evaluate one identity residual for a standalone operand tuple, with
/// the same semantics the suite uses (so recorded witnesses reproduce).
inline double evaluate_identity_residual(identity_id id, std::span<const double> ops,
                                         const tolerance_config& cfg = {})
{
    auto need = [&](std::size_t n) {
        if (ops.size() != n)
            throw error(std::string("evaluate_identity_residual: ") + to_string(id) +
                        " expects " + std::to_string(n) + " operands, got " +
                        std::to_string(ops.size()));
    };
    switch (id) {
    case identity_id::unit_A:
        need(1);
        return residual_unit_law(ops[0], cfg);
    case identity_id::diagonal_B:
        need(2);
        return residual_diagonal_pair(ops[0], ops[1], cfg);
    case identity_id::mean_C:
        need(2);
        return residual_mean_property(ops[0], ops[1], cfg);
    case identity_id::cancel_D:
        need(3);
        return residual_cancellation_pair(ops[0], ops[1], ops[2], cfg);
    case identity_id::distrib_E:
        need(3);
        return residual_distributive(ops[0], ops[1], ops[2], cfg);
    case identity_id::inverse_F:
        if (ops.size() == 1)
            return residual_inverse_element(ops[0], cfg);
        need(2);
        return residual_solve_right(ops[0], ops[1], cfg);
    case identity_id::gauss_eq4:
        need(1);
        return residual_gauss_identity(ops[0], cfg);
    case identity_id::defining_eq6:
        need(2);
        return residual_defining_property(ops[0], ops[1], cfg);
    case identity_id::meanstep_eq7:
        if (ops.size() == 1)
            return residual_half_step(ops[0], cfg);
        need(2);
        return residual_mean_step(ops[0], ops[1], cfg);
    case identity_id::integer_family:
        need(1);
        return residual_integer_identity(static_cast<int>(ops[0]), cfg);
    case identity_id::nonassoc_witness:
        need(3);
        return residual_associativity(ops[0], ops[1], ops[2], cfg);
    case identity_id::cross_backend:
        need(2);
        return residual_cross_backend(ops[0], ops[1], cfg);
    case identity_id::elliptic_gauss:
        need(2);
        return residual_elliptic_agm_relation(ops[0], ops[1], cfg);
    case identity_id::hyp_series_integral:
        need(1);
        return residual_hyp_series_vs_integral(ops[0], cfg);
    }
    throw error("evaluate_identity_residual: unknown identity");
}

namespace detail {

// Accumulates one identity over its samples. A sample that throws marks
// the identity failed with the offending tuple as witness but never
// aborts the suite.
class identity_eval {
public:
    identity_eval(identity_id id, double tolerance)
    {
        r_.id = id;
        r_.tolerance = tolerance;
    }

    template <class F>
    void sample(std::initializer_list<double> ops, F&& residual_fn)
    {
        if (errored_)
            return;
        ++r_.samples;
        try {
            double res = residual_fn();
            if (!std::isfinite(res))
                throw error("non-finite residual");
            if (r_.samples == 1 || res > r_.max_residual) {
                r_.max_residual = res;
                r_.witness.assign(ops);
            }
        } catch (const std::exception&) {
            errored_ = true;
            r_.max_residual = std::numeric_limits<double>::max();
            r_.witness.assign(ops);
        }
    }

    bool errored() const { return errored_; }
    double current_max() const { return r_.max_residual; }
    int samples() const { return r_.samples; }

    identity_report finish(bool pass_when_exceeds = false)
    {
        if (errored_) {
            r_.passed = false;
            return r_;
        }
        r_.passed = pass_when_exceeds ? r_.max_residual > r_.tolerance
                                      : r_.max_residual <= r_.tolerance;
        if (r_.passed && !pass_when_exceeds)
            r_.witness.clear();
        return r_;
    }

private:
    identity_report r_;
    bool errored_ = false;
};

} // namespace detail

/// Run every identity over the grid and return one report per identity,
/// in all_identities order. Deterministic for a given grid and config;
/// per-sample errors fail their identity without touching the others.
/// tolerance_override, when set, replaces every per-identity tolerance.
inline std::vector<identity_report> run_suite(const sample_grid& grid,
                                              const tolerance_config& cfg = {},
                                              std::optional<double> tolerance_override = {})
{
    detail::check_config(cfg);
    if (grid.points.empty())
        throw error("run_suite: the sample grid is empty");

    std::vector<double> singles;
    std::vector<std::array<double, 2>> pairs;
    std::vector<std::array<double, 3>> triples;
    for (const auto& t : grid.points) {
        for (double v : t)
            if (!(std::isfinite(v) && v > 0.0))
                throw error("run_suite: grid operands must be positive finite reals");
        switch (t.size()) {
        case 1: singles.push_back(t[0]); break;
        case 2: pairs.push_back({t[0], t[1]}); break;
        case 3: triples.push_back({t[0], t[1], t[2]}); break;
        default: throw error("run_suite: grid tuples must have 1 to 3 operands");
        }
    }

    std::vector<double> sorted_singles = singles;
    std::sort(sorted_singles.begin(), sorted_singles.end());
    sorted_singles.erase(std::unique(sorted_singles.begin(), sorted_singles.end()),
                         sorted_singles.end());

    auto tol = [&](identity_id id) {
        return tolerance_override ? *tolerance_override : identity_tolerance(id);
    };
    std::vector<identity_report> out;
    out.reserve(all_identities.size());

    {
        detail::identity_eval ev(identity_id::unit_A, tol(identity_id::unit_A));
        for (double x : singles)
            ev.sample({x}, [&] { return residual_unit_law(x, cfg); });
        out.push_back(ev.finish());
    }
    {
        detail::identity_eval ev(identity_id::diagonal_B, tol(identity_id::diagonal_B));
        for (std::size_t i = 0; i + 1 < sorted_singles.size(); ++i)
            ev.sample({sorted_singles[i], sorted_singles[i + 1]}, [&] {
                return residual_diagonal_pair(sorted_singles[i], sorted_singles[i + 1], cfg);
            });
        out.push_back(ev.finish());
    }
    {
        detail::identity_eval ev(identity_id::mean_C, tol(identity_id::mean_C));
        for (const auto& p : pairs)
            ev.sample({p[0], p[1]}, [&] { return residual_mean_property(p[0], p[1], cfg); });
        out.push_back(ev.finish());
    }
    {
        detail::identity_eval ev(identity_id::cancel_D, tol(identity_id::cancel_D));
        for (double a : {0.5, 2.0, 10.0})
            for (std::size_t i = 0; i + 1 < sorted_singles.size(); ++i)
                ev.sample({a, sorted_singles[i], sorted_singles[i + 1]}, [&] {
                    return residual_cancellation_pair(a, sorted_singles[i], sorted_singles[i + 1],
                                                      cfg);
                });
        out.push_back(ev.finish());
    }
    {
        detail::identity_eval ev(identity_id::distrib_E, tol(identity_id::distrib_E));
        for (const auto& t : triples)
            ev.sample({t[0], t[1], t[2]},
                      [&] { return residual_distributive(t[0], t[1], t[2], cfg); });
        out.push_back(ev.finish());
    }
    {
        detail::identity_eval ev(identity_id::inverse_F, tol(identity_id::inverse_F));
        for (double x : singles)
            ev.sample({x}, [&] { return residual_inverse_element(x, cfg); });
        for (const auto& p : pairs)
            ev.sample({p[0], p[1]}, [&] { return residual_solve_right(p[0], p[1], cfg); });
        out.push_back(ev.finish());
    }
    {
        // Fixed 25-point nome grid over [-0.9, 0.9]: the identity is about
        // q itself, not the operand tuples.
        detail::identity_eval ev(identity_id::gauss_eq4, tol(identity_id::gauss_eq4));
        for (int k = 0; k < 25; ++k) {
            double q = -0.9 + 1.8 * k / 24.0;
            ev.sample({q}, [&] { return residual_gauss_identity(q, cfg); });
        }
        out.push_back(ev.finish());
    }
    {
        detail::identity_eval ev(identity_id::defining_eq6, tol(identity_id::defining_eq6));
        for (const auto& p : pairs)
            ev.sample({p[0], p[1]}, [&] { return residual_defining_property(p[0], p[1], cfg); });
        out.push_back(ev.finish());
    }
    {
        detail::identity_eval ev(identity_id::meanstep_eq7, tol(identity_id::meanstep_eq7));
        for (const auto& p : pairs)
            ev.sample({p[0], p[1]}, [&] { return residual_mean_step(p[0], p[1], cfg); });
        for (double x : singles)
            ev.sample({x}, [&] { return residual_half_step(x, cfg); });
        out.push_back(ev.finish());
    }
    {
        detail::identity_eval ev(identity_id::integer_family, tol(identity_id::integer_family));
        for (int n = 1; n <= 10; ++n)
            ev.sample({static_cast<double>(n)}, [&] { return residual_integer_identity(n, cfg); });
        out.push_back(ev.finish());
    }
    {
        // report the first triple whose associativity defect exceeds the
        // threshold
        detail::identity_eval ev(identity_id::nonassoc_witness,
                                 tol(identity_id::nonassoc_witness));
        for (const auto& t : triples) {
            ev.sample({t[0], t[1], t[2]},
                      [&] { return residual_associativity(t[0], t[1], t[2], cfg); });
            if (!ev.errored() && ev.samples() > 0 && ev.current_max() > tol(identity_id::nonassoc_witness))
                break;
        }
        out.push_back(ev.finish(true));
    }
    {
        detail::identity_eval ev(identity_id::cross_backend, tol(identity_id::cross_backend));
        for (const auto& p : pairs)
            ev.sample({p[0], p[1]}, [&] { return residual_cross_backend(p[0], p[1], cfg); });
        out.push_back(ev.finish());
    }
    {
        detail::identity_eval ev(identity_id::elliptic_gauss, tol(identity_id::elliptic_gauss));
        for (const auto& p : pairs) {
            double ratio = std::max(p[0], p[1]) / std::min(p[0], p[1]);
            if (ratio <= 1e3)
                ev.sample({p[0], p[1]},
                          [&] { return residual_elliptic_agm_relation(p[0], p[1], cfg); });
        }
        out.push_back(ev.finish());
    }
    {
        // fixed 25-point argument grid over [0, 0.9]
        detail::identity_eval ev(identity_id::hyp_series_integral,
                                 tol(identity_id::hyp_series_integral));
        for (int k = 0; k < 25; ++k) {
            double z = 0.9 * k / 24.0;
            ev.sample({z}, [&] { return residual_hyp_series_vs_integral(z, cfg); });
        }
        out.push_back(ev.finish());
    }
    return out;
}

} // namespace agmstar

#endif
