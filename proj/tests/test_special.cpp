#include <doctest.h>

#include <cmath>

#include "errors.hpp"
#include "special.hpp"

using namespace rmt::special;

namespace {

// Stirling-series oracle for ln Gamma, valid for large-ish x; the error is
// bounded by the first omitted term.
double stirling_lgamma(double x, double* error_bound) {
    // B_2k / (2k (2k-1)) for k = 1..7
    static const double coeff[7] = {
        1.0 / 12.0,      -1.0 / 360.0,      1.0 / 1260.0,  -1.0 / 1680.0,
        1.0 / 1188.0,    -691.0 / 360360.0, 1.0 / 156.0,
    };
    const double half_log_two_pi = 0.91893853320467274178;
    double value = (x - 0.5) * std::log(x) - x + half_log_two_pi;
    double xp = x;
    for (int k = 0; k < 7; ++k) {
        value += coeff[k] / xp;
        xp *= x * x;
    }
    *error_bound = 3617.0 / 122400.0 / xp;  // next term magnitude
    return value;
}

}  // namespace

TEST_CASE("log_gamma at half-integer and integer anchors") {
    CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(M_PI)).epsilon(1e-14));
    CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(log_gamma(2.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
    CHECK(log_gamma(1.5) ==
          doctest::Approx(std::log(0.5 * std::sqrt(M_PI))).epsilon(1e-13));
}

TEST_CASE("log_gamma against the Stirling oracle") {
    for (const double x : {7.5, 10.0, 12.25, 20.0, 33.0, 50.0}) {
        double bound = 0.0;
        const double oracle = stirling_lgamma(x, &bound);
        const double got = log_gamma(x);
        const double tol = bound + 1e-13 * std::max(1.0, std::abs(oracle));
        CHECK(std::abs(got - oracle) <= tol);
    }
}

TEST_CASE("log_gamma recurrence on a grid") {
    for (double x = 0.5; x <= 40.0; x += 0.37) {
        const double lhs = log_gamma(x + 1.0) - log_gamma(x);
        CHECK(lhs == doctest::Approx(std::log(x)).epsilon(1e-12));
    }
}

TEST_CASE("log_gamma domain error") {
    CHECK_THROWS_AS(log_gamma(0.0), rmt::Error);
    CHECK_THROWS_AS(log_gamma(-1.5), rmt::Error);
}

TEST_CASE("double factorial and binomial helpers") {
    CHECK(std::exp(log_odd_double_factorial(0)) == doctest::Approx(1.0));
    CHECK(std::exp(log_odd_double_factorial(1)) == doctest::Approx(1.0));
    CHECK(std::exp(log_odd_double_factorial(2)) == doctest::Approx(3.0));
    CHECK(std::exp(log_odd_double_factorial(3)) == doctest::Approx(15.0));
    CHECK(std::exp(log_odd_double_factorial(5)) == doctest::Approx(945.0));
    CHECK(std::exp(log_binomial(6, 3)) == doctest::Approx(20.0));
    CHECK(std::exp(log_binomial(0, 0)) == doctest::Approx(1.0));
}

TEST_CASE("regularized incomplete gamma anchors") {
    // Q(1, x) = exp(-x)
    CHECK(gamma_q(1.0, 2.5) == doctest::Approx(std::exp(-2.5)).epsilon(1e-12));
    // chi-squared with 2 dof: sf(x) = exp(-x/2)
    CHECK(chi_squared_sf(3.0, 2) == doctest::Approx(std::exp(-1.5)).epsilon(1e-12));
    // monotone in x
    CHECK(gamma_q(3.0, 1.0) > gamma_q(3.0, 2.0));
    CHECK(gamma_q(2.0, 0.0) == doctest::Approx(1.0));
}
