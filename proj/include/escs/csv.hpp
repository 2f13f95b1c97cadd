#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

// Deterministic CSV formatting helpers. Report columns use 6 significant
// digits; trajectory exports keep full precision.

namespace escs::csv {

inline std::string format_sig6(double v) {
    if (v == 0.0) v = 0.0;  // canonicalize -0
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

inline std::string format_full(double v) {
    if (v == 0.0) v = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class IoError : public std::runtime_error {
  public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

inline std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    return out;
}

}  // namespace escs::csv
