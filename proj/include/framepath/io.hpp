#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>

#include "framepath/errors.hpp"

namespace framepath {

// Full-precision decimal rendering (17 significant digits round-trips a
// double exactly).
inline std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return std::string(buf);
}

inline std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open '" + path + "' for writing");
    return out;
}

}  // namespace framepath
