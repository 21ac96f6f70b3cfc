#include <doctest.h>

#include <cmath>

#include "errors.hpp"
#include "theory.hpp"

using namespace rmt;
using ensembles::Family;
using theory::MomentQuery;

TEST_CASE("unitary prediction anchors") {
    // K = 2 collapses to N^2/(2a)
    const double p = theory::predict({Family::unitary, 100, 0.01, 2.0}).value;
    CHECK(p == doctest::Approx(5e5).epsilon(1e-12));
    const double p2 = theory::predict({Family::unitary, 10, 0.1, 2.0}).value;
    CHECK(p2 == doctest::Approx(100.0 / 0.2).epsilon(1e-12));
}

TEST_CASE("usp prediction anchor at K=4") {
    const double n = 10.0, a = 0.1;
    const double p = theory::predict({Family::usp, 10, a, 4.0}).value;
    CHECK(p == doctest::Approx(n * n * n * n / (3.0 * a)).epsilon(1e-12));
}

TEST_CASE("so-odd two-term prediction") {
    const double p = theory::predict({Family::so_odd, 64, 0.01, 2.0}).value;
    CHECK(p == doctest::Approx(std::pow(6400.0, 2.0) * 0.98).epsilon(1e-12));
}

TEST_CASE("validity thresholds throw named errors") {
    CHECK_THROWS_WITH_AS(theory::predict({Family::usp, 10, 0.1, 2.0}).value,
                         doctest::Contains("K>3"), rmt::Error);
    CHECK_THROWS_WITH_AS(theory::predict({Family::unitary, 10, 0.1, 1.0}).value,
                         doctest::Contains("K>1"), rmt::Error);
    CHECK_THROWS_WITH_AS(theory::predict({Family::so_even, 10, 0.1, 0.7}).value,
                         doctest::Contains("K>1"), rmt::Error);
    CHECK_NOTHROW(theory::predict({Family::so_odd, 10, 0.1, 0.5}));
}

TEST_CASE("integer moment anchors") {
    CHECK(theory::integer_moment(Family::unitary, 1, 10, 0.1) ==
          doctest::Approx(100.0 / 0.2).epsilon(1e-12));
    // K_int = 2: N^4 / (4 a^3)
    CHECK(theory::integer_moment(Family::unitary, 2, 10, 0.1) ==
          doctest::Approx(1e4 / (4.0 * 1e-3)).epsilon(1e-12));
    // usp K=4, N=10, a=0.1: (2/3) 1e5 * (3/6)
    CHECK(theory::integer_moment(Family::usp, 4, 10, 0.1) ==
          doctest::Approx(2.0 / 3.0 * 1e5 * 0.5).epsilon(1e-12));
    CHECK_THROWS_AS(theory::integer_moment(Family::usp, 3, 10, 0.1), rmt::Error);
    CHECK_THROWS_AS(theory::integer_moment(Family::so_even, 1, 10, 0.1),
                    rmt::Error);
}

TEST_CASE("gamma closed forms match integer-moment formulas") {
    for (int m = 1; m <= 6; ++m) {
        const double p = theory::predict({Family::unitary, 64, 0.05, 2.0 * m}).value;
        const double f = theory::integer_moment(Family::unitary, m, 64, 0.05);
        CHECK(std::abs(p - f) / f < 1e-10);
    }
    for (int k = 4; k <= 8; ++k) {
        const double p =
            theory::predict({Family::usp, 50, 0.02, static_cast<double>(k)}).value;
        const double f = theory::integer_moment(Family::usp, k, 50, 0.02);
        CHECK(std::abs(p - f) / f < 1e-10);
    }
    for (int k = 2; k <= 8; ++k) {
        const double p =
            theory::predict({Family::so_even, 50, 0.02, static_cast<double>(k)})
                .value;
        const double f = theory::integer_moment(Family::so_even, k, 50, 0.02);
        CHECK(std::abs(p - f) / f < 1e-10);
    }
}

TEST_CASE("limit integrals match the closed forms") {
    SUBCASE("unitary K=2 is the Cauchy integral") {
        const MomentQuery q{Family::unitary, 50, 0.1, 2.0};
        CHECK(theory::limit_integral(q) ==
              doctest::Approx(50.0 * 50.0 / 0.2).epsilon(1e-10));
    }
    SUBCASE("so-even K=2 via the pi/4 integral") {
        const MomentQuery q{Family::so_even, 50, 0.1, 2.0};
        CHECK(theory::limit_integral(q) ==
              doctest::Approx(2.0 * 50.0 * 50.0 / 0.1).epsilon(1e-10));
    }
    SUBCASE("non-integer K against the Gamma form") {
        const MomentQuery q{Family::unitary, 50, 0.05, 2.5};
        const double integral = theory::limit_integral(q);
        const double closed = theory::predict(q).value;
        CHECK(std::abs(integral - closed) / closed < 1e-8);
    }
    SUBCASE("slow tails near the validity edge") {
        for (const double k : {1.2, 1.05}) {
            const MomentQuery q{Family::unitary, 50, 0.1, k};
            const double integral = theory::limit_integral(q);
            const double closed = theory::predict(q).value;
            CHECK(std::abs(integral - closed) / closed < 1e-8);
        }
    }
}

TEST_CASE("scaling law: g(K) independent of a and N") {
    const double k = 3.3;
    auto g = [k](int n, double a) {
        return theory::predict({Family::unitary, n, a, k}).value /
               (n * std::pow(n / a, k - 1.0));
    };
    const double base = g(50, 0.1);
    CHECK(g(200, 0.1) == doctest::Approx(base).epsilon(1e-12));
    CHECK(g(50, 0.01) == doctest::Approx(base).epsilon(1e-12));
    CHECK(g(128, 0.003) == doctest::Approx(base).epsilon(1e-12));
    // usp: a^(3-K) scaling
    const double k2 = 4.4;
    auto gu = [k2](int n, double a) {
        return theory::predict({Family::usp, n, a, k2}).value /
               (std::pow(static_cast<double>(n), 3.0) *
                std::pow(n / a, k2 - 3.0));
    };
    CHECK(gu(50, 0.1) == doctest::Approx(gu(200, 0.02)).epsilon(1e-12));
}
