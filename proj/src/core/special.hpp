#pragma once

namespace rmt::special {

// ln Gamma(x) for x > 0, Lanczos approximation (g = 7, 9 terms).
// Relative accuracy ~1e-14 of max(1, |ln Gamma|) across [0.5, 50].
double log_gamma(double x);

// Regularized upper incomplete gamma Q(a, x) = Gamma(a,x)/Gamma(a).
// Series for x < a+1, continued fraction otherwise.
double gamma_q(double a, double x);

// Survival function of the chi-squared distribution with k dof.
double chi_squared_sf(double statistic, int dof);

// ln of the double factorial (2m-1)!! for m >= 0, via log_gamma.
double log_odd_double_factorial(int m);

// ln of binomial(n, k) via log_gamma.
double log_binomial(int n, int k);

}  // namespace rmt::special
