#include "theory.hpp"

#include <cmath>

#include "errors.hpp"
#include "quadrature.hpp"
#include "special.hpp"

namespace rmt::theory {

namespace {

using ensembles::Family;
using special::log_gamma;

constexpr double kPi = 3.14159265358979323846264338327950288;

void require_valid(const MomentQuery& q) {
    if (q.n < 1 || !(q.a > 0.0) || !(q.a < q.n)) {
        throw Error(ErrorKind::domain, "moment query requires n >= 1, 0 < a < n");
    }
    if (!k_valid(q.family, q.k)) {
        throw Error(ErrorKind::validity,
                    std::string("K out of range for ") +
                        ensembles::family_name(q.family) + ": requires " +
                        k_threshold(q.family));
    }
}

// integral_U^inf u^-p (1 + u^-2)^-s du as a binomial series; converges
// geometrically for U >= 2, p > 1.
double tail_series(double p, double s, double big_u) {
    double coeff = 1.0;
    double sum = 0.0;
    const double u2 = 1.0 / (big_u * big_u);
    double upow = std::pow(big_u, 1.0 - p);
    for (int j = 0; j < 400; ++j) {
        const double term = coeff * upow / (p + 2.0 * j - 1.0);
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
        coeff *= -(s + j) / (j + 1.0);
        upow *= u2;
    }
    return sum;
}

}  // namespace

bool k_valid(Family family, double k) {
    switch (family) {
        case Family::unitary: return k > 1.0;
        case Family::so_even: return k > 1.0;
        case Family::usp: return k > 3.0;
        case Family::so_odd: return k > 0.0;
    }
    return false;
}

const char* k_threshold(Family family) {
    switch (family) {
        case Family::unitary: return "K>1";
        case Family::so_even: return "K>1";
        case Family::usp: return "K>3";
        case Family::so_odd: return "K>0";
    }
    return "?";
}

Prediction predict(const MomentQuery& q) {
    require_valid(q);
    const double n = q.n;
    const double k = q.k;
    const double log_n_over_a = std::log(n / q.a);
    switch (q.family) {
        case Family::unitary: {
            const double lv = std::log(n / (2.0 * kPi)) + (k - 1.0) * log_n_over_a +
                              0.5 * std::log(kPi) + log_gamma((k - 1.0) / 2.0) -
                              log_gamma(k / 2.0);
            return Prediction{std::exp(lv), true, "theorem-unitary"};
        }
        case Family::so_even: {
            const double lv = std::log(2.0 * n / kPi) + k * std::log(2.0) +
                              (k - 1.0) * log_n_over_a +
                              std::log(std::sqrt(kPi) / 2.0) +
                              log_gamma(k - 0.5) - log_gamma(k);
            return Prediction{std::exp(lv), true, "theorem-so-even"};
        }
        case Family::usp: {
            const double lv = std::log(2.0 / (3.0 * kPi)) + 3.0 * std::log(n) +
                              k * std::log(2.0) + (k - 3.0) * log_n_over_a +
                              std::log(std::sqrt(kPi) / 4.0) +
                              log_gamma(k - 1.5) - log_gamma(k);
            return Prediction{std::exp(lv), true, "theorem-usp"};
        }
        case Family::so_odd: {
            const double lead = std::pow(n / q.a, k);
            const double corr = 1.0 - k * q.a;
            if (!(corr > 0.0)) {
                throw Error(ErrorKind::validity,
                            "so-odd two-term prediction needs K*a < 1");
            }
            return Prediction{lead * corr, true, "two-term-so-odd"};
        }
    }
    throw Error(ErrorKind::usage, "predict: unknown family");
}

double integer_moment(Family family, int k_int, int n, double a) {
    if (n < 1 || !(a > 0.0) || !(a < n)) {
        throw Error(ErrorKind::domain, "integer_moment requires n >= 1, 0 < a < n");
    }
    const double nn = n;
    switch (family) {
        case Family::unitary: {
            if (k_int < 1) {
                throw Error(ErrorKind::validity,
                            "unitary integer moment requires K >= 1");
            }
            // N^(2K) / (2a)^(2K-1) * binom(2K-2, K-1); this is the
            // 2K-th absolute moment.
            const double lv = 2.0 * k_int * std::log(nn) -
                              (2.0 * k_int - 1.0) * std::log(2.0 * a) +
                              special::log_binomial(2 * k_int - 2, k_int - 1);
            return std::exp(lv);
        }
        case Family::so_even: {
            if (k_int < 2) {
                throw Error(ErrorKind::validity,
                            "so-even integer moment requires K >= 2");
            }
            // 2 N^K a^(1-K) (2K-3)!!/(K-1)!
            const double lv = std::log(2.0) + k_int * std::log(nn) +
                              (1.0 - k_int) * std::log(a) +
                              special::log_odd_double_factorial(k_int - 1) -
                              log_gamma(k_int);
            return std::exp(lv);
        }
        case Family::so_odd: {
            if (k_int < 1) {
                throw Error(ErrorKind::validity,
                            "so-odd integer moment requires K >= 1");
            }
            // (N/a)^K - K N^K / a^(K-1)
            return std::pow(nn / a, k_int) * (1.0 - k_int * a);
        }
        case Family::usp: {
            if (k_int < 4) {
                throw Error(ErrorKind::validity,
                            "usp integer moment requires K >= 4");
            }
            // (2/3) N^K a^(3-K) (2K-5)!!/(K-1)!
            const double lv = std::log(2.0 / 3.0) + k_int * std::log(nn) +
                              (3.0 - k_int) * std::log(a) +
                              special::log_odd_double_factorial(k_int - 2) -
                              log_gamma(k_int);
            return std::exp(lv);
        }
    }
    throw Error(ErrorKind::usage, "integer_moment: unknown family");
}

double limit_integral(const MomentQuery& q) {
    require_valid(q);
    const double b = q.a / q.n;
    const double k = q.k;
    const double n = q.n;
    constexpr double split = 2.0;
    switch (q.family) {
        case Family::unitary: {
            // (N/2pi) int_-inf^inf ((a/N)^2 + t^2)^(-K/2) dt
            //   = (N/pi) b^(1-K) int_0^inf (1+u^2)^(-K/2) du
            auto f = [k](double u) { return std::pow(1.0 + u * u, -k / 2.0); };
            const double head = quad::integrate(f, 0.0, split, 1e-12, 0.0).value;
            const double tail = tail_series(k, k / 2.0, split);
            return n / kPi * std::pow(b, 1.0 - k) * (head + tail);
        }
        case Family::so_even: {
            // (2N/pi) int_0^inf (2b/(b^2+t^2))^K dt
            //   = (2N/pi) 2^K b^(1-K) int_0^inf (1+u^2)^-K du
            auto f = [k](double u) { return std::pow(1.0 + u * u, -k); };
            const double head = quad::integrate(f, 0.0, split, 1e-12, 0.0).value;
            const double tail = tail_series(2.0 * k, k, split);
            return 2.0 * n / kPi * std::pow(2.0, k) * std::pow(b, 1.0 - k) *
                   (head + tail);
        }
        case Family::usp: {
            // (2N^3/3pi) int_0^inf (2b/(b^2+t^2))^K t^2 dt
            //   = (2N^3/3pi) 2^K b^(3-K) int_0^inf u^2 (1+u^2)^-K du
            auto f = [k](double u) { return u * u * std::pow(1.0 + u * u, -k); };
            const double head = quad::integrate(f, 0.0, split, 1e-12, 0.0).value;
            const double tail = tail_series(2.0 * k - 2.0, k, split);
            return 2.0 * n * n * n / (3.0 * kPi) * std::pow(2.0, k) *
                   std::pow(b, 3.0 - k) * (head + tail);
        }
        case Family::so_odd:
            throw Error(ErrorKind::usage,
                        "limit_integral: no theorem integral for so-odd");
    }
    throw Error(ErrorKind::usage, "limit_integral: unknown family");
}

}  // namespace rmt::theory
