#include "densities.hpp"

#include <cmath>

#include "errors.hpp"

namespace rmt::densities {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTwoPi = 2.0 * kPi;

using ensembles::Family;

// det via LU with partial pivoting; m is tiny (<= 8).
double det_small(std::vector<double> a, int m) {
    double det = 1.0;
    for (int k = 0; k < m; ++k) {
        int piv = k;
        for (int i = k + 1; i < m; ++i) {
            if (std::abs(a[i * m + k]) > std::abs(a[piv * m + k])) piv = i;
        }
        if (piv != k) {
            for (int j = 0; j < m; ++j) std::swap(a[k * m + j], a[piv * m + j]);
            det = -det;
        }
        const double akk = a[k * m + k];
        if (akk == 0.0) return 0.0;
        det *= akk;
        for (int i = k + 1; i < m; ++i) {
            const double f = a[i * m + k] / akk;
            for (int j = k + 1; j < m; ++j) a[i * m + j] -= f * a[k * m + j];
        }
    }
    return det;
}

}  // namespace

double sine_kernel(int n, double x) {
    const double s = std::sin(0.5 * x);
    if (std::abs(s) >= 1e-6) {
        return std::sin(0.5 * n * x) / s;
    }
    // x is within ~2e-6 of a multiple of 2pi; expand there.
    const long long m = std::llround(x / kTwoPi);
    const double delta = x - kTwoPi * static_cast<double>(m);
    const bool odd = (m & 1LL) != 0 && ((n - 1) & 1) != 0;  // parity of m(N-1)
    const double nn = n;
    return (odd ? -1.0 : 1.0) * nn * (1.0 - (nn * nn - 1.0) * delta * delta / 24.0);
}

double one_level_density(Family family, int n, double theta) {
    switch (family) {
        case Family::unitary:
            return n / kTwoPi;
        case Family::so_even:
            return (sine_kernel(2 * n - 1, 0.0) + sine_kernel(2 * n - 1, 2.0 * theta)) /
                   kTwoPi;
        case Family::so_odd:
            return (sine_kernel(2 * n, 0.0) - sine_kernel(2 * n, 2.0 * theta)) /
                   kTwoPi;
        case Family::usp:
            return (sine_kernel(2 * n + 1, 0.0) - sine_kernel(2 * n + 1, 2.0 * theta)) /
                   kTwoPi;
    }
    throw Error(ErrorKind::usage, "one_level_density: unknown family");
}

double m_level_density_unitary(int n, const std::vector<double>& thetas) {
    const int m = static_cast<int>(thetas.size());
    if (m < 1 || m > 8) {
        throw Error(ErrorKind::usage, "m_level_density_unitary: need 1 <= m <= 8");
    }
    std::vector<double> a(static_cast<size_t>(m) * m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            a[i * m + j] = sine_kernel(n, thetas[i] - thetas[j]);
        }
    }
    return det_small(std::move(a), m) / std::pow(kTwoPi, m);
}

double cluster_prob_bound(int n, double c, int m) {
    if (m < 1 || !(c > 0.0)) {
        throw Error(ErrorKind::usage, "cluster_prob_bound: need m >= 1, c > 0");
    }
    return n / kTwoPi * m * std::pow(c / kPi, m - 1);
}

double cluster_prob_bound_usp(int n, double c, int m, double theta) {
    if (m < 1 || !(c > 0.0)) {
        throw Error(ErrorKind::usage, "cluster_prob_bound_usp: need m >= 1, c > 0");
    }
    const double nn = n;
    return 2.0 * nn * nn * nn * theta * theta / (3.0 * kPi) * m *
           std::pow(c * c * c, m - 1);
}

double cluster_window_prob_bound(double c, int m) {
    if (m < 1 || !(c > 0.0)) {
        throw Error(ErrorKind::usage, "cluster_window_prob_bound: need m >= 1, c > 0");
    }
    return std::pow(c / kPi, m);
}

void angle_range(Family family, double* lo, double* hi) {
    if (family == Family::unitary) {
        *lo = -kPi;
        *hi = kPi;
    } else {
        *lo = 0.0;
        *hi = kPi;
    }
}

DensityCurve empirical_density(const std::vector<ensembles::AngleSample>& samples,
                               int bins) {
    if (samples.empty()) {
        throw Error(ErrorKind::usage, "empirical_density: no samples");
    }
    if (bins < 1) throw Error(ErrorKind::usage, "empirical_density: bins >= 1");
    const Family family = samples.front().family;
    const int n = samples.front().n;
    for (const auto& s : samples) {
        if (s.family != family || s.n != n) {
            throw Error(ErrorKind::usage,
                        "empirical_density: mixed families or sizes");
        }
    }
    double lo, hi;
    angle_range(family, &lo, &hi);
    const double width = (hi - lo) / bins;
    DensityCurve curve;
    curve.family = family;
    curve.n = n;
    curve.draws = static_cast<long>(samples.size());
    curve.edges.resize(bins + 1);
    for (int b = 0; b <= bins; ++b) curve.edges[b] = lo + b * width;
    curve.grid.resize(bins);
    for (int b = 0; b < bins; ++b) curve.grid[b] = lo + (b + 0.5) * width;
    std::vector<double> counts(bins, 0.0);
    for (const auto& s : samples) {
        for (const double theta : s.angles) {
            int b = static_cast<int>((theta - lo) / width);
            if (b < 0) b = 0;
            if (b >= bins) b = bins - 1;
            counts[b] += 1.0;
        }
    }
    const double draws = static_cast<double>(samples.size());
    const double total = draws * n;
    curve.values.resize(bins);
    curve.stderrs.resize(bins);
    for (int b = 0; b < bins; ++b) {
        const double p = counts[b] / total;
        curve.values[b] = counts[b] / (draws * width);
        curve.stderrs[b] = std::sqrt(total * p * (1.0 - p)) / (draws * width);
    }
    return curve;
}

DensityCurve exact_density_curve(Family family, int n, int bins) {
    double lo, hi;
    angle_range(family, &lo, &hi);
    const double width = (hi - lo) / bins;
    DensityCurve curve;
    curve.family = family;
    curve.n = n;
    curve.edges.resize(bins + 1);
    for (int b = 0; b <= bins; ++b) curve.edges[b] = lo + b * width;
    curve.grid.resize(bins);
    curve.values.resize(bins);
    // 5-point Gauss-Legendre bin averages
    static const double gx[5] = {-0.906179845938664, -0.538469310105683, 0.0,
                                 0.538469310105683, 0.906179845938664};
    static const double gw[5] = {0.236926885056189, 0.478628670499366,
                                 0.568888888888889, 0.478628670499366,
                                 0.236926885056189};
    for (int b = 0; b < bins; ++b) {
        const double c = lo + (b + 0.5) * width;
        curve.grid[b] = c;
        double acc = 0.0;
        for (int g = 0; g < 5; ++g) {
            acc += gw[g] * one_level_density(family, n, c + 0.5 * width * gx[g]);
        }
        curve.values[b] = 0.5 * acc;
    }
    return curve;
}

WindowCountDistribution window_count_distribution(
    const std::vector<ensembles::AngleSample>& samples, double c) {
    if (samples.empty()) {
        throw Error(ErrorKind::usage, "window_count_distribution: no samples");
    }
    WindowCountDistribution out;
    out.draws = static_cast<long>(samples.size());
    long nonempty = 0;
    long exactly_one = 0;
    for (const auto& s : samples) {
        const double window = c / s.n;
        int count = 0;
        for (const double theta : s.angles) {
            if (std::abs(theta) < window) ++count;
        }
        if (count >= static_cast<int>(out.histogram.size())) {
            out.histogram.resize(count + 1, 0);
        }
        ++out.histogram[count];
        if (count >= 1) ++nonempty;
        if (count == 1) ++exactly_one;
    }
    out.p_exactly_one =
        nonempty > 0 ? static_cast<double>(exactly_one) / nonempty
                     : std::nan("");
    return out;
}

}  // namespace rmt::densities
