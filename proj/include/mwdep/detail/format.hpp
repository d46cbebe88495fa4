#pragma once

#include <charconv>
#include <stdexcept>
#include <string>

namespace mwdep::detail {

/// Shortest decimal representation that round-trips the double exactly.
inline std::string format_number(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_number(const std::string& s) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last) {
        throw std::invalid_argument("bad numeric value: '" + s + "'");
    }
    return v;
}

} // namespace mwdep::detail
