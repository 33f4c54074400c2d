#ifndef AGMSTAR_DETAIL_FORMAT_HPP
#define AGMSTAR_DETAIL_FORMAT_HPP

#include <cstdio>
#include <string>

namespace agmstar::detail {

/// Render a double with 17 significant digits, enough for binary64
/// values to re-parse to the identical bit pattern.
inline std::string fmt_g17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace agmstar::detail

#endif
