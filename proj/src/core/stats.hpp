#pragma once

#include <functional>
#include <vector>

namespace rmt::stats {

// Two-sided Kolmogorov asymptotic survival function Q(lambda).
double kolmogorov_q(double lambda);

// One-sample KS test of sorted data against a CDF; returns the p-value
// from the asymptotic distribution with the Stephens small-sample factor.
struct KsResult {
    double statistic;
    double p_value;
};
KsResult ks_test(std::vector<double> data, const std::function<double(double)>& cdf);

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

// Chi-squared p-value for observed vs expected counts (expected > 0).
double chi_squared_p(const std::vector<double>& observed,
                     const std::vector<double>& expected, int extra_constraints = 0);

// Mean / standard error of the mean over a sample.
struct MeanStderr {
    double mean;
    double stderr_;
};
MeanStderr mean_stderr(const std::vector<double>& xs);

}  // namespace rmt::stats
