#include <doctest.h>

#include <cmath>
#include <complex>

#include "errors.hpp"
#include "helpers.hpp"
#include "linalg.hpp"

using namespace rmt::linalg;
using test_helpers::bisection_eigenvalues;

namespace {

double unitarity_residual(const ComplexMatrix& q) {
    const int n = q.size();
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            cplx acc = 0.0;
            for (int k = 0; k < n; ++k) acc += std::conj(q.at(k, i)) * q.at(k, j);
            if (i == j) acc -= 1.0;
            worst = std::max(worst, std::abs(acc));
        }
    }
    return worst;
}

}  // namespace

TEST_CASE("qr of the identity") {
    const auto qr = householder_qr(ComplexMatrix::identity(4));
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(qr.r.at(i, i)) == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK(unitarity_residual(qr.q) < 1e-14);
}

TEST_CASE("qr reconstructs a permutation-like matrix") {
    ComplexMatrix m(2);
    m.at(0, 1) = 1.0;
    m.at(1, 0) = 1.0;
    const auto qr = householder_qr(m);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            cplx acc = 0.0;
            for (int k = 0; k < 2; ++k) acc += qr.q.at(i, k) * qr.r.at(k, j);
            CHECK(std::abs(acc - m.at(i, j)) < 1e-14);
        }
    }
}

TEST_CASE("qr properties on random gaussian input across sizes") {
    for (const int n : {3, 8, 32, 64, 128, 256}) {
        const ComplexMatrix m = test_helpers::random_complex(n, 1000 + n);
        const auto qr = householder_qr(m);
        CHECK(unitarity_residual(qr.q) <= n * 1e-13);
        // R upper triangular
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < i; ++j) {
                CHECK(std::abs(qr.r.at(i, j)) == 0.0);
            }
        }
        // reconstruction, relative to the largest entry
        const double scale = max_abs(m);
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                cplx acc = 0.0;
                for (int k = 0; k < n; ++k) acc += qr.q.at(i, k) * qr.r.at(k, j);
                worst = std::max(worst, std::abs(acc - m.at(i, j)));
            }
        }
        CHECK(worst <= n * 1e-13 * scale);
    }
}

TEST_CASE("phase_normalize fixes column phases") {
    ComplexMatrix q = ComplexMatrix::identity(2);
    ComplexMatrix r(2);
    SUBCASE("positive diagonal untouched") {
        r.at(0, 0) = 2.0;
        r.at(1, 1) = 3.0;
        const auto out = phase_normalize({q, r});
        CHECK(std::abs(out.at(0, 0) - cplx(1.0)) < 1e-15);
        CHECK(std::abs(out.at(1, 1) - cplx(1.0)) < 1e-15);
    }
    SUBCASE("negative entry flips the column") {
        r.at(0, 0) = -1.0;
        r.at(1, 1) = 1.0;
        const auto out = phase_normalize({q, r});
        CHECK(std::abs(out.at(0, 0) - cplx(-1.0)) < 1e-15);
        CHECK(std::abs(out.at(1, 1) - cplx(1.0)) < 1e-15);
    }
    SUBCASE("imaginary phase is conjugated onto the column") {
        r.at(0, 0) = cplx(0.0, 1.0);
        r.at(1, 1) = 1.0;
        const auto out = phase_normalize({q, r});
        CHECK(std::abs(out.at(0, 0) - cplx(0.0, -1.0)) < 1e-15);
    }
    SUBCASE("zero diagonal is a degenerate input") {
        r.at(0, 0) = 0.0;
        r.at(1, 1) = 1.0;
        CHECK_THROWS_AS(phase_normalize({q, r}), rmt::Error);
    }
}

TEST_CASE("real qr tracks the determinant sign") {
    rmt::rng::RngStream stream(77, 0);
    for (int rep = 0; rep < 20; ++rep) {
        const int n = 5;
        RealMatrix m(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) m.at(i, j) = stream.gaussian_pair().first;
        }
        const auto qr = householder_qr_real(m);
        // det via LU on q
        RealMatrix a = qr.q;
        double det = 1.0;
        for (int k = 0; k < n; ++k) {
            int piv = k;
            for (int i = k + 1; i < n; ++i) {
                if (std::abs(a.at(i, k)) > std::abs(a.at(piv, k))) piv = i;
            }
            if (piv != k) {
                for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(piv, j));
                det = -det;
            }
            det *= a.at(k, k);
            for (int i = k + 1; i < n; ++i) {
                const double f = a.at(i, k) / a.at(k, k);
                for (int j = k + 1; j < n; ++j) a.at(i, j) -= f * a.at(k, j);
            }
        }
        CHECK(det * qr.det_sign > 0.9);  // |det q| = 1
        for (int j = 0; j < n; ++j) CHECK(qr.r.at(j, j) >= 0.0);
    }
}

TEST_CASE("hermitian eigensolver on fixed small cases") {
    SUBCASE("diagonal") {
        ComplexMatrix m(3);
        m.at(0, 0) = 3.0;
        m.at(1, 1) = 1.0;
        m.at(2, 2) = 2.0;
        const auto eig = eig_hermitian(m);
        CHECK(eig.values[0] == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(eig.values[1] == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(eig.values[2] == doctest::Approx(3.0).epsilon(1e-14));
    }
    SUBCASE("pauli x") {
        ComplexMatrix m(2);
        m.at(0, 1) = 1.0;
        m.at(1, 0) = 1.0;
        const auto eig = eig_hermitian(m);
        CHECK(eig.values[0] == doctest::Approx(-1.0).epsilon(1e-14));
        CHECK(eig.values[1] == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("hermitian eigensolver: residuals, trace, bisection oracle") {
    for (const int n : {6, 16, 48}) {
        const ComplexMatrix m = test_helpers::random_hermitian(n, 300 + n);
        const auto eig = eig_hermitian(m);
        // ascending
        for (int j = 1; j < n; ++j) CHECK(eig.values[j] >= eig.values[j - 1]);
        // residual per pair
        const double scale = max_abs(m);
        for (int j = 0; j < n; ++j) {
            double worst = 0.0;
            for (int i = 0; i < n; ++i) {
                cplx acc = 0.0;
                for (int k = 0; k < n; ++k) acc += m.at(i, k) * eig.vectors.at(k, j);
                acc -= eig.values[j] * eig.vectors.at(i, j);
                worst = std::max(worst, std::abs(acc));
            }
            CHECK(worst <= n * 1e-12 * scale);
        }
        // trace identity
        double tr = 0.0;
        for (int i = 0; i < n; ++i) tr += std::real(m.at(i, i));
        double sum = 0.0;
        for (const double v : eig.values) sum += v;
        CHECK(sum == doctest::Approx(tr).epsilon(1e-12));
    }
}

TEST_CASE("hermitian eigenvalues match the sturm bisection oracle") {
    const int n = 6;
    const ComplexMatrix m = test_helpers::random_hermitian(n, 901);
    const auto eig = eig_hermitian(m);
    // Oracle route: characteristic polynomial roots of the tridiagonal
    // form, located by bisection with Sturm counts. The tridiagonal form
    // is rebuilt here through an independent Lanczos-style iteration.
    std::vector<std::vector<cplx>> basis;
    std::vector<double> alpha, beta;
    std::vector<cplx> v(n, 0.0), w(n);
    v[0] = 1.0;
    for (int step = 0; step < n; ++step) {
        basis.push_back(v);
        // w = M v
        for (int i = 0; i < n; ++i) {
            cplx acc = 0.0;
            for (int k = 0; k < n; ++k) acc += m.at(i, k) * v[k];
            w[i] = acc;
        }
        double a = 0.0;
        for (int i = 0; i < n; ++i) a += std::real(std::conj(v[i]) * w[i]);
        alpha.push_back(a);
        for (int i = 0; i < n; ++i) w[i] -= a * v[i];
        if (step > 0) {
            for (int i = 0; i < n; ++i) w[i] -= beta.back() * basis[step - 1][i];
        }
        // full reorthogonalization for numerical honesty
        for (const auto& b : basis) {
            cplx proj = 0.0;
            for (int i = 0; i < n; ++i) proj += std::conj(b[i]) * w[i];
            for (int i = 0; i < n; ++i) w[i] -= proj * b[i];
        }
        double norm = 0.0;
        for (int i = 0; i < n; ++i) norm += std::norm(w[i]);
        norm = std::sqrt(norm);
        if (step + 1 < n) {
            beta.push_back(norm);
            for (int i = 0; i < n; ++i) v[i] = w[i] / norm;
        }
    }
    const auto oracle = bisection_eigenvalues(alpha, beta, 1e-13);
    for (int j = 0; j < n; ++j) {
        CHECK(eig.values[j] == doctest::Approx(oracle[j]).epsilon(1e-10));
    }
}

TEST_CASE("tridiagonal eigenvalues: fixed cases and bisection oracle") {
    SUBCASE("single entry") {
        const auto vals = eig_sym_tridiag({{0.0}, {}});
        CHECK(vals.size() == 1);
        CHECK(vals[0] == doctest::Approx(0.0));
    }
    SUBCASE("two by two") {
        const auto vals = eig_sym_tridiag({{0.0, 0.0}, {1.0}});
        CHECK(vals[0] == doctest::Approx(-1.0).epsilon(1e-14));
        CHECK(vals[1] == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("random 5x5 vs bisection") {
        rmt::rng::RngStream stream(55, 1);
        std::vector<double> d(5), e(4);
        for (auto& x : d) x = stream.gaussian_pair().first;
        for (auto& x : e) x = stream.gaussian_pair().first;
        const auto vals = eig_sym_tridiag({d, e});
        const auto oracle = bisection_eigenvalues(d, e, 1e-14);
        for (int j = 0; j < 5; ++j) {
            CHECK(vals[j] == doctest::Approx(oracle[j]).epsilon(1e-12));
        }
    }
}

TEST_CASE("real symmetric eigenvalues match complex path") {
    const int n = 12;
    rmt::rng::RngStream stream(4242, 0);
    RealMatrix m(n);
    ComplexMatrix mc(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            const double g = stream.gaussian_pair().first;
            m.at(i, j) = g;
            m.at(j, i) = g;
            mc.at(i, j) = g;
            mc.at(j, i) = g;
        }
    }
    const auto real_vals = eig_real_symmetric_values(m);
    const auto cplx_vals = eig_hermitian(mc).values;
    for (int j = 0; j < n; ++j) {
        CHECK(real_vals[j] == doctest::Approx(cplx_vals[j]).epsilon(1e-11));
    }
}
