#include "oracle.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "densities.hpp"
#include "errors.hpp"
#include "internal_util.hpp"
#include "quadrature.hpp"

namespace rmt::oracle {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

using ensembles::Family;

void gauss_legendre(int m, std::vector<double>& x, std::vector<double>& w) {
    x.assign(m, 0.0);
    w.assign(m, 0.0);
    for (int i = 0; i < (m + 1) / 2; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (m + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < m; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = m * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        x[i] = -z;
        x[m - 1 - i] = z;
        w[i] = w[m - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
}

using util::pow_quarter;

struct AxisData {
    std::vector<double> qw;      // quadrature weight x single-angle weight
    std::vector<double> x;       // cos(theta)
    std::vector<double> s;       // sin(theta)
    std::vector<double> t_re;    // log-derivative term at z
    std::vector<double> t_im;
};

AxisData build_axis(Family family, int n, double a, int m) {
    const double z = 1.0 - a / n;
    double lo, hi;
    densities::angle_range(family, &lo, &hi);
    std::vector<double> gx, gw;
    gauss_legendre(m, gx, gw);
    AxisData ax;
    ax.qw.resize(m);
    ax.x.resize(m);
    ax.s.resize(m);
    ax.t_re.resize(m);
    ax.t_im.resize(m);
    for (int i = 0; i < m; ++i) {
        const double theta = 0.5 * (hi + lo) + 0.5 * (hi - lo) * gx[i];
        const double jac = 0.5 * (hi - lo) * gw[i];
        const double c = std::cos(theta);
        const double sn = std::sin(theta);
        ax.x[i] = c;
        ax.s[i] = sn;
        double single = 1.0;
        if (family == Family::usp) {
            single = sn * sn;
        } else if (family == Family::so_odd) {
            const double sh = std::sin(0.5 * theta);
            single = sh * sh;
        }
        ax.qw[i] = jac * single;
        if (family == Family::unitary) {
            const std::complex<double> term = 1.0 / (z - std::polar(1.0, theta));
            ax.t_re[i] = term.real();
            ax.t_im[i] = term.imag();
        } else {
            ax.t_re[i] = 2.0 * (z - c) / (z * z - 2.0 * z * c + 1.0);
            ax.t_im[i] = 0.0;
        }
    }
    return ax;
}

// Ratio of int |L|^K w to int w at one quadrature order.
double weyl_ratio(Family family, int n, double a, double k, int m) {
    const AxisData ax = build_axis(family, n, a, m);
    const double kh = 0.5 * k;
    const double fixed = family == Family::so_odd ? -static_cast<double>(n) / a : 0.0;
    const bool unitary = family == Family::unitary;
    double num = 0.0, den = 0.0;
    if (n == 1) {
        for (int i = 0; i < m; ++i) {
            const double re = ax.t_re[i] + fixed;
            const double im = ax.t_im[i];
            const double l2 = re * re + im * im;
            num += ax.qw[i] * pow_quarter(l2, kh);
            den += ax.qw[i];
        }
    } else if (n == 2) {
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                double pw;
                if (unitary) {
                    pw = 2.0 - 2.0 * (ax.x[i] * ax.x[j] + ax.s[i] * ax.s[j]);
                } else {
                    const double d = ax.x[i] - ax.x[j];
                    pw = d * d;
                }
                const double q = ax.qw[i] * ax.qw[j] * pw;
                const double re = ax.t_re[i] + ax.t_re[j] + fixed;
                const double im = ax.t_im[i] + ax.t_im[j];
                const double l2 = re * re + im * im;
                num += q * pow_quarter(l2, kh);
                den += q;
            }
        }
    } else {
        // pairwise weights as a table to keep the inner loop lean
        std::vector<double> pw(static_cast<size_t>(m) * m);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                if (unitary) {
                    pw[i * static_cast<size_t>(m) + j] =
                        2.0 - 2.0 * (ax.x[i] * ax.x[j] + ax.s[i] * ax.s[j]);
                } else {
                    const double d = ax.x[i] - ax.x[j];
                    pw[i * static_cast<size_t>(m) + j] = d * d;
                }
            }
        }
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                const double pij = pw[i * static_cast<size_t>(m) + j];
                if (pij == 0.0) continue;
                const double qij = ax.qw[i] * ax.qw[j] * pij;
                const double re_ij = ax.t_re[i] + ax.t_re[j] + fixed;
                const double im_ij = ax.t_im[i] + ax.t_im[j];
                const double* pwi = pw.data() + i * static_cast<size_t>(m);
                const double* pwj = pw.data() + j * static_cast<size_t>(m);
                for (int l = 0; l < m; ++l) {
                    const double q = qij * ax.qw[l] * pwi[l] * pwj[l];
                    const double re = re_ij + ax.t_re[l];
                    const double im = im_ij + ax.t_im[l];
                    const double l2 = re * re + im * im;
                    num += q * pow_quarter(l2, kh);
                    den += q;
                }
            }
        }
    }
    return num / den;
}

}  // namespace

OracleResult weyl_moment(Family family, int n, double a, double k,
                         double rel_tol) {
    if (n < 1 || n > 3) {
        throw Error(ErrorKind::usage, "weyl_moment: n must be 1..3");
    }
    if (!(a > 0.0) || !(a < n)) {
        throw Error(ErrorKind::domain, "weyl_moment: requires 0 < a < n");
    }
    double prev = 0.0;
    bool have_prev = false;
    const int max_order = n == 3 ? 512 : 2048;
    for (int m = 32; m <= max_order; m *= 2) {
        const double value = weyl_ratio(family, n, a, k, m);
        if (have_prev) {
            const double err = std::abs(value - prev);
            if (err <= rel_tol * std::abs(value)) {
                return OracleResult{value, err};
            }
        }
        prev = value;
        have_prev = true;
    }
    throw QuadratureError("weyl_moment: quadrature did not stabilize", prev, -1.0);
}

OracleResult second_moment_exact_unitary(int n, double a, double rel_tol,
                                         double rotation) {
    if (n < 1 || n > 64) {
        throw Error(ErrorKind::usage, "second_moment_exact_unitary: n must be 1..64");
    }
    if (!(a > 0.0) || !(a < n)) {
        throw Error(ErrorKind::domain, "second_moment_exact_unitary: 0 < a < n");
    }
    const double z = 1.0 - a / n;
    const double lo = rotation - kPi;
    const double hi = rotation + kPi;
    auto g_re = [z](double t) {
        const double den = z * z - 2.0 * z * std::cos(t) + 1.0;
        return (z - std::cos(t)) / den;
    };
    auto g_im = [z](double t) {
        const double den = z * z - 2.0 * z * std::cos(t) + 1.0;
        return std::sin(t) / den;
    };
    // 1-level part
    auto f1 = [n, z](double t) {
        return n / (2.0 * kPi) / (z * z - 2.0 * z * std::cos(t) + 1.0);
    };
    const quad::QuadResult one = quad::integrate(f1, lo, hi, 0.25 * rel_tol, 0.0);
    // 2-level part; rho2 vanishes quadratically on the diagonal and the
    // integrand is bounded, so iterated adaptive panels suffice.
    const double scale = one.value;  // sets absolute tolerances
    const double inner_abs = rel_tol * scale / (2.0 * kPi) / 64.0;
    auto h = [&](double t) {
        const double gre = g_re(t);
        const double gim = g_im(t);
        auto inner = [&](double s) {
            const double sk = densities::sine_kernel(n, t - s);
            const double rho2 =
                (static_cast<double>(n) * n - sk * sk) / (4.0 * kPi * kPi);
            return rho2 * (gre * g_re(s) + gim * g_im(s));
        };
        return quad::integrate(inner, lo, hi, 1e-9, inner_abs, 20000).value;
    };
    const quad::QuadResult two =
        quad::integrate(h, lo, hi, 0.0, 0.25 * rel_tol * scale, 20000);
    return OracleResult{one.value + two.value, one.abs_error + two.abs_error};
}

}  // namespace rmt::oracle
