#pragma once

#include <cstdio>
#include <string>

namespace puc {

/// Round-trip formatting: 17 significant digits.
inline std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace puc
