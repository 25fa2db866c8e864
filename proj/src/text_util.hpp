#pragma once

#include <cstdio>
#include <string>

namespace cogarith::detail {

// 6-decimal fixed notation, C locale; shared by every CSV writer.
inline std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

} // namespace cogarith::detail
