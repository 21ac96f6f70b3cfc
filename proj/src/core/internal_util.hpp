#pragma once

#include <cmath>

namespace rmt::util {

// x^e for x >= 0, fast when 4e is an integer (the K grids in use are
// multiples of 1/4 after the |.|^2 halving).
inline double pow_quarter(double x, double e) {
    const double e4 = 4.0 * e;
    const double r = std::round(e4);
    if (std::abs(e4 - r) < 1e-9 && r >= 0.0 && r < 512.0) {
        long q = static_cast<long>(r);
        double out = 1.0;
        if (q & 1) out *= std::sqrt(std::sqrt(x));
        if (q & 2) out *= std::sqrt(x);
        double acc = 1.0, b = x;
        long ip = q >> 2;
        while (ip) {
            if (ip & 1) acc *= b;
            b *= b;
            ip >>= 1;
        }
        return out * acc;
    }
    return std::pow(x, e);
}

}  // namespace rmt::util
