#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "errors.hpp"

namespace rmt::linalg {

namespace {

constexpr double kEps = 2.220446049250313e-16;

double hypot2(double a, double b) { return std::hypot(a, b); }

// Implicit-shift QL on (d, e) in place; e has n entries with e[n-1] unused.
// If vectors != nullptr the rotations are accumulated into its columns.
void ql_implicit(std::vector<double>& d, std::vector<double>& e,
                 ComplexMatrix* vectors) {
    const int n = static_cast<int>(d.size());
    if (n <= 1) return;
    e[n - 1] = 0.0;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= kEps * dd) break;
            }
            if (m != l) {
                if (iter++ == 50) {
                    throw Error(ErrorKind::solver_failure,
                                "tridiagonal QL: no convergence in 50 sweeps");
                }
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = hypot2(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = hypot2(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (vectors) {
                        const int nn = vectors->size();
                        for (int k = 0; k < nn; ++k) {
                            cplx* row = vectors->row(k);
                            const cplx t = row[i + 1];
                            row[i + 1] = s * row[i] + c * t;
                            row[i] = c * row[i] - s * t;
                        }
                    }
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

void sort_eigen(std::vector<double>& d, ComplexMatrix* vectors) {
    const int n = static_cast<int>(d.size());
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&d](int a, int b) { return d[a] < d[b]; });
    std::vector<double> ds(n);
    for (int j = 0; j < n; ++j) ds[j] = d[idx[j]];
    d = std::move(ds);
    if (vectors) {
        ComplexMatrix sorted(n);
        for (int i = 0; i < n; ++i) {
            const cplx* src = vectors->row(i);
            cplx* dst = sorted.row(i);
            for (int j = 0; j < n; ++j) dst[j] = src[idx[j]];
        }
        *vectors = std::move(sorted);
    }
}

}  // namespace

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

RealMatrix RealMatrix::identity(int n) {
    RealMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

ComplexQR householder_qr(const ComplexMatrix& m) {
    const int n = m.size();
    ComplexMatrix a = m;
    ComplexMatrix q = ComplexMatrix::identity(n);
    std::vector<cplx> u(n);
    for (int k = 0; k < n - 1; ++k) {
        double norm2 = 0.0;
        for (int i = k; i < n; ++i) norm2 += std::norm(a.at(i, k));
        const double norm = std::sqrt(norm2);
        if (norm == 0.0) continue;
        const cplx x0 = a.at(k, k);
        const double ax0 = std::abs(x0);
        const cplx phase = ax0 > 0.0 ? x0 / ax0 : cplx(1.0, 0.0);
        // v = x + phase * ||x|| * e1; then (I - tau v v~) x = -phase ||x|| e1
        const int len = n - k;
        for (int i = 0; i < len; ++i) u[i] = a.at(k + i, k);
        u[0] += phase * norm;
        const double unorm2 = 2.0 * (norm2 + norm * ax0);
        if (unorm2 == 0.0) continue;
        const double tau = 2.0 / unorm2;
        // A <- H A on the trailing block
        a.at(k, k) = -phase * norm;
        for (int i = k + 1; i < n; ++i) a.at(i, k) = 0.0;
        for (int j = k + 1; j < n; ++j) {
            cplx w = 0.0;
            for (int i = 0; i < len; ++i) w += std::conj(u[i]) * a.at(k + i, j);
            w *= tau;
            for (int i = 0; i < len; ++i) a.at(k + i, j) -= w * u[i];
        }
        // Q <- Q H
        for (int i = 0; i < n; ++i) {
            cplx* qrow = q.row(i);
            cplx s = 0.0;
            for (int l = 0; l < len; ++l) s += qrow[k + l] * u[l];
            s *= tau;
            for (int l = 0; l < len; ++l) qrow[k + l] -= s * std::conj(u[l]);
        }
    }
    return ComplexQR{std::move(q), std::move(a)};
}

ComplexMatrix phase_normalize(const ComplexQR& qr) {
    const int n = qr.q.size();
    ComplexMatrix out = qr.q;
    for (int j = 0; j < n; ++j) {
        const cplx rjj = qr.r.at(j, j);
        const double mag = std::abs(rjj);
        if (mag == 0.0) {
            throw Error(ErrorKind::degenerate_input,
                        "phase_normalize: zero diagonal entry in R");
        }
        const cplx scale = std::conj(rjj / mag);
        for (int i = 0; i < n; ++i) out.at(i, j) *= scale;
    }
    return out;
}

RealQR householder_qr_real(const RealMatrix& m) {
    const int n = m.size();
    RealMatrix a = m;
    RealMatrix q = RealMatrix::identity(n);
    std::vector<double> u(n);
    int det_sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        double norm2 = 0.0;
        for (int i = k; i < n; ++i) norm2 += a.at(i, k) * a.at(i, k);
        const double norm = std::sqrt(norm2);
        if (norm == 0.0) continue;
        const double sign = a.at(k, k) >= 0.0 ? 1.0 : -1.0;
        const int len = n - k;
        for (int i = 0; i < len; ++i) u[i] = a.at(k + i, k);
        u[0] += sign * norm;
        const double unorm2 = 2.0 * (norm2 + norm * std::abs(a.at(k, k)));
        if (unorm2 == 0.0) continue;
        const double tau = 2.0 / unorm2;
        det_sign = -det_sign;  // one reflection
        a.at(k, k) = -sign * norm;
        for (int i = k + 1; i < n; ++i) a.at(i, k) = 0.0;
        for (int j = k + 1; j < n; ++j) {
            double w = 0.0;
            for (int i = 0; i < len; ++i) w += u[i] * a.at(k + i, j);
            w *= tau;
            for (int i = 0; i < len; ++i) a.at(k + i, j) -= w * u[i];
        }
        for (int i = 0; i < n; ++i) {
            double* qrow = q.row(i);
            double s = 0.0;
            for (int l = 0; l < len; ++l) s += qrow[k + l] * u[l];
            s *= tau;
            for (int l = 0; l < len; ++l) qrow[k + l] -= s * u[l];
        }
    }
    // Make the R diagonal nonnegative: Q <- Q D, R <- D R with D = diag(signs).
    for (int j = 0; j < n; ++j) {
        if (a.at(j, j) < 0.0) {
            det_sign = -det_sign;
            for (int l = j; l < n; ++l) a.at(j, l) = -a.at(j, l);
            for (int i = 0; i < n; ++i) q.at(i, j) = -q.at(i, j);
        }
    }
    return RealQR{std::move(q), std::move(a), det_sign};
}

HermitianEigen eig_hermitian(const ComplexMatrix& m) {
    const int n = m.size();
    ComplexMatrix a = m;
    ComplexMatrix w = ComplexMatrix::identity(n);
    std::vector<cplx> u(n), p(n);
    // Householder similarity reduction to Hermitian tridiagonal form,
    // reading/writing the lower triangle.
    for (int k = 0; k < n - 2; ++k) {
        const int len = n - 1 - k;
        double norm2 = 0.0;
        for (int i = 0; i < len; ++i) norm2 += std::norm(a.at(k + 1 + i, k));
        const double norm = std::sqrt(norm2);
        if (norm == 0.0) continue;
        const cplx x0 = a.at(k + 1, k);
        const double ax0 = std::abs(x0);
        const cplx phase = ax0 > 0.0 ? x0 / ax0 : cplx(1.0, 0.0);
        for (int i = 0; i < len; ++i) u[i] = a.at(k + 1 + i, k);
        u[0] += phase * norm;
        const double unorm2 = 2.0 * (norm2 + norm * ax0);
        if (unorm2 == 0.0) continue;
        const double tau = 2.0 / unorm2;
        a.at(k + 1, k) = -phase * norm;
        for (int i = k + 2; i < n; ++i) a.at(i, k) = 0.0;
        // p = tau * A22 * u  (A22 Hermitian, lower triangle stored)
        for (int i = 0; i < len; ++i) {
            cplx s = 0.0;
            const int gi = k + 1 + i;
            for (int j = 0; j <= i; ++j) s += a.at(gi, k + 1 + j) * u[j];
            for (int j = i + 1; j < len; ++j) s += std::conj(a.at(k + 1 + j, gi)) * u[j];
            p[i] = tau * s;
        }
        // K = tau/2 * u~ p  (real since A is Hermitian)
        double kk = 0.0;
        for (int i = 0; i < len; ++i) kk += std::real(std::conj(u[i]) * p[i]);
        kk *= 0.5 * tau;
        for (int i = 0; i < len; ++i) p[i] -= kk * u[i];
        // A22 <- A22 - u p~ - p u~ (lower triangle)
        for (int i = 0; i < len; ++i) {
            const int gi = k + 1 + i;
            for (int j = 0; j <= i; ++j) {
                a.at(gi, k + 1 + j) -=
                    u[i] * std::conj(p[j]) + p[i] * std::conj(u[j]);
            }
        }
        // W <- W H
        for (int i = 0; i < n; ++i) {
            cplx* wrow = w.row(i);
            cplx s = 0.0;
            for (int l = 0; l < len; ++l) s += wrow[k + 1 + l] * u[l];
            s *= tau;
            for (int l = 0; l < len; ++l) wrow[k + 1 + l] -= s * std::conj(u[l]);
        }
    }
    // Absorb subdiagonal phases so the tridiagonal matrix is real.
    std::vector<double> d(n), e(n, 0.0);
    cplx cum(1.0, 0.0);
    d[0] = std::real(a.at(0, 0));
    for (int k = 0; k + 1 < n; ++k) {
        const cplx t = a.at(k + 1, k);
        const double mag = std::abs(t);
        e[k] = mag;
        if (mag > 0.0) cum *= t / mag;
        if (std::real(cum) != 1.0 || std::imag(cum) != 0.0) {
            for (int i = 0; i < n; ++i) w.at(i, k + 1) *= cum;
        }
        d[k + 1] = std::real(a.at(k + 1, k + 1));
    }
    ql_implicit(d, e, &w);
    sort_eigen(d, &w);
    return HermitianEigen{std::move(d), std::move(w)};
}

std::vector<double> eig_real_symmetric_values(const RealMatrix& m) {
    const int n = m.size();
    RealMatrix a = m;
    std::vector<double> u(n), p(n);
    for (int k = 0; k < n - 2; ++k) {
        const int len = n - 1 - k;
        double norm2 = 0.0;
        for (int i = 0; i < len; ++i) norm2 += a.at(k + 1 + i, k) * a.at(k + 1 + i, k);
        const double norm = std::sqrt(norm2);
        if (norm == 0.0) continue;
        const double x0 = a.at(k + 1, k);
        const double sign = x0 >= 0.0 ? 1.0 : -1.0;
        for (int i = 0; i < len; ++i) u[i] = a.at(k + 1 + i, k);
        u[0] += sign * norm;
        const double unorm2 = 2.0 * (norm2 + norm * std::abs(x0));
        if (unorm2 == 0.0) continue;
        const double tau = 2.0 / unorm2;
        a.at(k + 1, k) = -sign * norm;
        for (int i = k + 2; i < n; ++i) a.at(i, k) = 0.0;
        for (int i = 0; i < len; ++i) {
            double s = 0.0;
            const int gi = k + 1 + i;
            for (int j = 0; j <= i; ++j) s += a.at(gi, k + 1 + j) * u[j];
            for (int j = i + 1; j < len; ++j) s += a.at(k + 1 + j, gi) * u[j];
            p[i] = tau * s;
        }
        double kk = 0.0;
        for (int i = 0; i < len; ++i) kk += u[i] * p[i];
        kk *= 0.5 * tau;
        for (int i = 0; i < len; ++i) p[i] -= kk * u[i];
        for (int i = 0; i < len; ++i) {
            const int gi = k + 1 + i;
            for (int j = 0; j <= i; ++j) {
                a.at(gi, k + 1 + j) -= u[i] * p[j] + p[i] * u[j];
            }
        }
    }
    std::vector<double> d(n), e(n, 0.0);
    d[0] = a.at(0, 0);
    for (int k = 0; k + 1 < n; ++k) {
        e[k] = a.at(k + 1, k);
        d[k + 1] = a.at(k + 1, k + 1);
    }
    ql_implicit(d, e, nullptr);
    std::sort(d.begin(), d.end());
    return d;
}

std::vector<double> eig_sym_tridiag(const RealSymTridiag& t) {
    const int n = static_cast<int>(t.diag.size());
    std::vector<double> d = t.diag;
    std::vector<double> e(n, 0.0);
    for (int i = 0; i + 1 < n; ++i) e[i] = t.offdiag[i];
    ql_implicit(d, e, nullptr);
    std::sort(d.begin(), d.end());
    return d;
}

double max_abs(const ComplexMatrix& m) {
    double best = 0.0;
    const int n = m.size();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) best = std::max(best, std::abs(m.at(i, j)));
    }
    return best;
}

double max_abs_real(const RealMatrix& m) {
    double best = 0.0;
    const int n = m.size();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) best = std::max(best, std::abs(m.at(i, j)));
    }
    return best;
}

}  // namespace rmt::linalg
