#include "special.hpp"

#include <cmath>

#include "errors.hpp"

namespace rmt::special {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kLnSqrt2Pi = 0.91893853320467274178032973640561764;

// Lanczos g = 7, n = 9 coefficient set.
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) {
        throw Error(ErrorKind::domain, "log_gamma: argument must be positive");
    }
    if (x < 0.5) {
        // Reflection keeps the series argument away from the poles.
        return std::log(kPi / std::sin(kPi * x)) - log_gamma(1.0 - x);
    }
    const double z = x - 1.0;
    double series = kLanczos[0];
    for (int i = 1; i < 9; ++i) {
        series += kLanczos[i] / (z + i);
    }
    const double t = z + 7.5;
    return kLnSqrt2Pi + (z + 0.5) * std::log(t) - t + std::log(series);
}

double gamma_q(double a, double x) {
    if (!(a > 0.0) || x < 0.0) {
        throw Error(ErrorKind::domain, "gamma_q: requires a > 0, x >= 0");
    }
    if (x == 0.0) return 1.0;
    const double lg = log_gamma(a);
    if (x < a + 1.0) {
        // P(a,x) by series, Q = 1 - P.
        double term = 1.0 / a;
        double sum = term;
        double ap = a;
        for (int i = 0; i < 600; ++i) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-16) break;
        }
        const double p = sum * std::exp(-x + a * std::log(x) - lg);
        return 1.0 - p;
    }
    // Lentz continued fraction for Q(a,x).
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 600; ++i) {
        const double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - lg) * h;
}

double chi_squared_sf(double statistic, int dof) {
    if (dof <= 0) {
        throw Error(ErrorKind::domain, "chi_squared_sf: dof must be positive");
    }
    if (statistic <= 0.0) return 1.0;
    return gamma_q(0.5 * dof, 0.5 * statistic);
}

double log_odd_double_factorial(int m) {
    if (m < 0) {
        throw Error(ErrorKind::domain, "log_odd_double_factorial: m must be >= 0");
    }
    if (m == 0) return 0.0;  // (-1)!! = 1 by convention
    // (2m-1)!! = (2m)! / (2^m m!)
    return log_gamma(2.0 * m + 1.0) - m * std::log(2.0) - log_gamma(m + 1.0);
}

double log_binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) {
        throw Error(ErrorKind::domain, "log_binomial: requires 0 <= k <= n");
    }
    return log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0);
}

}  // namespace rmt::special
