#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <system_error>

namespace ntlab {

inline constexpr int kSignificantDigits = 10;

/// Locale-independent rendering with ten significant digits, choosing fixed or
/// scientific notation like printf's %g: 1.644934067, 0.000212, 1e+20.
inline std::string format_real(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, kSignificantDigits);
    if (res.ec != std::errc())
        return "nan";
    return std::string(buf, res.ptr);
}

inline std::string format_integer(std::int64_t v)
{
    return std::to_string(v);
}

} // namespace ntlab
