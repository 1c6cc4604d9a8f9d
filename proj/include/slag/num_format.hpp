#pragma once

#include <cstdio>
#include <string>

namespace slag {

// JSON values carry 17 significant digits (round-trip exact), CSV carries 10.
inline std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string fmt_g10(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace slag
