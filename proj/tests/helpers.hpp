#pragma once

// Test-only oracles, independent of the implementation paths they check.

#include <cmath>
#include <vector>

#include "linalg.hpp"
#include "rng.hpp"

namespace test_helpers {

// Number of eigenvalues of the symmetric tridiagonal (d, e) strictly below
// x, by Sturm sequence count.
inline int sturm_count_below(const std::vector<double>& d,
                             const std::vector<double>& e, double x) {
    const int n = static_cast<int>(d.size());
    int count = 0;
    double q = d[0] - x;
    if (q < 0.0) ++count;
    for (int i = 1; i < n; ++i) {
        const double e2 = e[i - 1] * e[i - 1];
        if (q == 0.0) q = 1e-300;
        q = d[i] - x - e2 / q;
        if (q < 0.0) ++count;
    }
    return count;
}

// All eigenvalues by bisection, ascending; independent of the QL path.
inline std::vector<double> bisection_eigenvalues(const std::vector<double>& d,
                                                 const std::vector<double>& e,
                                                 double tol = 1e-13) {
    const int n = static_cast<int>(d.size());
    double lo = d[0], hi = d[0];
    for (int i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(e[i - 1]);
        if (i + 1 < n) r += std::abs(e[i]);
        lo = std::min(lo, d[i] - r);
        hi = std::max(hi, d[i] + r);
    }
    lo -= 1.0;
    hi += 1.0;
    std::vector<double> out(n);
    for (int k = 0; k < n; ++k) {
        double a = lo, b = hi;
        // smallest x with count_below(x) >= k+1
        for (int it = 0; it < 200 && b - a > tol * std::max(1.0, std::abs(b)); ++it) {
            const double mid = 0.5 * (a + b);
            if (sturm_count_below(d, e, mid) >= k + 1) {
                b = mid;
            } else {
                a = mid;
            }
        }
        out[k] = 0.5 * (a + b);
    }
    return out;
}

// Exact E|P'/P(z)|^2 for the unitary ensemble via moments of traces:
// sum_{k>=0} min(k+1, N) z^(2k), summed in closed form past k = N-1.
inline double unitary_second_moment_power_sum(int n, double a) {
    const double z = 1.0 - a / n;
    const double z2 = z * z;
    double sum = 0.0;
    double z2k = 1.0;
    for (int k = 0; k <= n - 2; ++k) {
        sum += (k + 1) * z2k;
        z2k *= z2;
    }
    sum += n * z2k / (1.0 - z2);  // tail from k = n-1
    return sum;
}

inline rmt::linalg::ComplexMatrix random_hermitian(int n, std::uint64_t seed) {
    rmt::rng::RngStream stream(seed, 0);
    rmt::linalg::ComplexMatrix m(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            const auto [re, im] = stream.gaussian_pair();
            if (i == j) {
                m.at(i, i) = re;
            } else {
                m.at(i, j) = {re, im};
                m.at(j, i) = {re, -im};
            }
        }
    }
    return m;
}

inline rmt::linalg::ComplexMatrix random_complex(int n, std::uint64_t seed) {
    rmt::rng::RngStream stream(seed, 0);
    rmt::linalg::ComplexMatrix m(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const auto [re, im] = stream.gaussian_pair();
            m.at(i, j) = {re, im};
        }
    }
    return m;
}

}  // namespace test_helpers
