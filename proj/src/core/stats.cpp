#include "stats.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "special.hpp"

namespace rmt::stats {

double kolmogorov_q(double lambda) {
    if (lambda < 0.18) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 200; ++j) {
        const double term = sign * std::exp(-2.0 * j * j * lambda * lambda);
        sum += term;
        if (std::abs(term) < 1e-18) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test(std::vector<double> data, const std::function<double(double)>& cdf) {
    if (data.empty()) throw Error(ErrorKind::usage, "ks_test: empty sample");
    std::sort(data.begin(), data.end());
    const double n = static_cast<double>(data.size());
    double d = 0.0;
    for (size_t i = 0; i < data.size(); ++i) {
        const double f = cdf(data[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    const double sn = std::sqrt(n);
    const double lambda = (sn + 0.12 + 0.11 / sn) * d;
    return KsResult{d, kolmogorov_q(lambda)};
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) {
        throw Error(ErrorKind::usage, "ks_two_sample: empty sample");
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na -
                                 static_cast<double>(j) / nb));
    }
    const double ne = std::sqrt(na * nb / (na + nb));
    const double lambda = (ne + 0.12 + 0.11 / ne) * d;
    return KsResult{d, kolmogorov_q(lambda)};
}

double chi_squared_p(const std::vector<double>& observed,
                     const std::vector<double>& expected, int extra_constraints) {
    if (observed.size() != expected.size() || observed.empty()) {
        throw Error(ErrorKind::usage, "chi_squared_p: size mismatch");
    }
    double stat = 0.0;
    for (size_t i = 0; i < observed.size(); ++i) {
        if (!(expected[i] > 0.0)) {
            throw Error(ErrorKind::usage, "chi_squared_p: expected counts must be positive");
        }
        const double diff = observed[i] - expected[i];
        stat += diff * diff / expected[i];
    }
    const int dof = static_cast<int>(observed.size()) - extra_constraints;
    return special::chi_squared_sf(stat, dof);
}

MeanStderr mean_stderr(const std::vector<double>& xs) {
    if (xs.empty()) throw Error(ErrorKind::usage, "mean_stderr: empty sample");
    const double n = static_cast<double>(xs.size());
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= n;
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= (n > 1 ? n - 1 : 1);
    return MeanStderr{mean, std::sqrt(var / n)};
}

}  // namespace rmt::stats
