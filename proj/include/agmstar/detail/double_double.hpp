#ifndef AGMSTAR_DETAIL_DOUBLE_DOUBLE_HPP
#define AGMSTAR_DETAIL_DOUBLE_DOUBLE_HPP

#include <cmath>

namespace agmstar::detail {

// Minimal error-free-transformation arithmetic: a value is carried as an
// unevaluated sum hi + lo with |lo| <= ulp(hi)/2. Used where a plain
// binary64 sum would cancel catastrophically (alternating theta series).

struct dd {
    double hi = 0.0;
    double lo = 0.0;
};

inline dd two_sum(double a, double b)
{
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

// requires |a| >= |b| or a == 0
inline dd fast_two_sum(double a, double b)
{
    double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_prod(double a, double b)
{
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd add(dd a, dd b)
{
    dd s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return fast_two_sum(s.hi, s.lo);
}

inline dd add(dd a, double b)
{
    dd s = two_sum(a.hi, b);
    s.lo += a.lo;
    return fast_two_sum(s.hi, s.lo);
}

inline dd mul(dd a, dd b)
{
    dd p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return fast_two_sum(p.hi, p.lo);
}

inline dd mul(dd a, double b)
{
    dd p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return fast_two_sum(p.hi, p.lo);
}

inline dd sqr(dd a)
{
    dd p = two_prod(a.hi, a.hi);
    p.lo += 2.0 * a.hi * a.lo;
    return fast_two_sum(p.hi, p.lo);
}

inline dd div(dd a, dd b)
{
    double q0 = a.hi / b.hi;
    dd r = add(a, mul(b, -q0));
    double q1 = r.hi / b.hi;
    r = add(r, mul(b, -q1));
    double q2 = r.hi / b.hi;
    dd q = fast_two_sum(q0, q1);
    return add(q, q2);
}

inline double to_double(dd a)
{
    return a.hi + a.lo;
}

} // namespace agmstar::detail

#endif
