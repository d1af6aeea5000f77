#pragma once

#include <cstdio>
#include <string>

namespace liquifbm {

// Fixed 15-significant-digit text form used by every CSV/JSON writer.
inline std::string fmt15(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of negative zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

}  // namespace liquifbm
