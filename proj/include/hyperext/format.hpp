#pragma once

#include <cstdio>
#include <string>

namespace hyperext {

// Numbers in every text output use 12 significant digits.
inline std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace hyperext
