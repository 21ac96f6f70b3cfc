#include "logderiv.hpp"

#include <cmath>
#include <vector>

#include "errors.hpp"

namespace rmt::logderiv {

namespace {

using cplx = std::complex<double>;

struct KahanReal {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

struct KahanComplex {
    KahanReal re, im;
    void add(const cplx& x) {
        re.add(x.real());
        im.add(x.imag());
    }
    cplx value() const { return {re.sum, im.sum}; }
};

inline cplx unitary_term(double z, double theta) {
    return 1.0 / (z - std::polar(1.0, theta));
}

inline double paired_term(double z, double theta) {
    const double c = std::cos(theta);
    return 2.0 * (z - c) / (z * z - 2.0 * z * c + 1.0);
}

// Visit stored angles in ascending |theta| order; angles are sorted, so
// for the unitary range (-pi, pi] this is a two-pointer walk outward from
// zero, and for paired families it is the stored order.
template <typename Visit>
void for_angles_by_abs(const std::vector<double>& angles, Visit visit) {
    const int n = static_cast<int>(angles.size());
    int pos = 0;
    while (pos < n && angles[pos] < 0.0) ++pos;
    int neg = pos - 1;
    while (neg >= 0 || pos < n) {
        if (neg < 0) {
            visit(angles[pos++]);
        } else if (pos >= n) {
            visit(angles[neg--]);
        } else if (-angles[neg] <= angles[pos]) {
            visit(angles[neg--]);
        } else {
            visit(angles[pos++]);
        }
    }
}

}  // namespace

EvalPoint make_eval_point(double a, int n) {
    if (n < 1 || !(a > 0.0) || !(a < n)) {
        throw Error(ErrorKind::domain,
                    "eval point requires n >= 1 and 0 < a < n (so 0 < z < 1)");
    }
    return EvalPoint{a, n};
}

Cutoff cutoff_c(double a, double k) {
    if (!(k > 1.0)) {
        throw Error(ErrorKind::domain,
                    "cutoff_c: these restrictions of c require K>1");
    }
    if (!(a > 0.0) || !(a < 1.0)) {
        throw Error(ErrorKind::domain, "cutoff_c: requires 0 < a < 1");
    }
    return Cutoff{std::pow(a, (k - 1.0) / (2.0 * k)), k};
}

CutoffDiagnostics cutoff_diagnostics(double a, double k) {
    const Cutoff co = cutoff_c(a, k);
    return CutoffDiagnostics{co.c, a / co.c,
                             std::pow(co.c, -k) * std::pow(a, k - 1.0)};
}

std::complex<double> log_deriv(const ensembles::AngleSample& sample,
                               const EvalPoint& p) {
    const double z = p.z();
    if (sample.family == ensembles::Family::unitary) {
        KahanComplex acc;
        for_angles_by_abs(sample.angles,
                          [&](double theta) { acc.add(unitary_term(z, theta)); });
        return acc.value();
    }
    KahanReal acc;
    for (const double theta : sample.angles) acc.add(paired_term(z, theta));
    if (sample.family == ensembles::Family::so_odd) {
        acc.add(1.0 / (z - 1.0));  // fixed eigenvalue at 1
    }
    return {acc.sum, 0.0};
}

Decomposition decompose(const ensembles::AngleSample& sample, const EvalPoint& p,
                        const Cutoff& cutoff) {
    const double z = p.z();
    const double z0 = p.z0();
    const double window = cutoff.c / p.n;
    Decomposition out{};
    int count = 0;
    if (sample.family == ensembles::Family::unitary) {
        KahanComplex full, m, x1, x2, x3;
        for_angles_by_abs(sample.angles, [&](double theta) {
            const cplx v1 = unitary_term(z, theta);
            const cplx v0 = unitary_term(z0, theta);
            full.add(v1);
            x1.add(v0);
            if (std::abs(theta) < window) {
                m.add(v1);
                x3.add(v0);
                ++count;
            } else {
                x2.add(v1 - v0);
            }
        });
        out.full = full.value();
        out.m_term = m.value();
        out.x1 = x1.value();
        out.x2 = x2.value();
        out.x3 = x3.value();
    } else {
        KahanReal full, m, x1, x2, x3;
        for (const double theta : sample.angles) {
            const double v1 = paired_term(z, theta);
            const double v0 = paired_term(z0, theta);
            full.add(v1);
            x1.add(v0);
            // the conjugate partner lies in the window iff the
            // representative does
            if (theta < window) {
                m.add(v1);
                x3.add(v0);
                ++count;
            } else {
                x2.add(v1 - v0);
            }
        }
        if (sample.family == ensembles::Family::so_odd) {
            const double v1 = 1.0 / (z - 1.0);
            const double v0 = 1.0 / (z0 - 1.0);
            full.add(v1);
            x1.add(v0);
            m.add(v1);  // angle 0 is always inside the window
            x3.add(v0);
        }
        out.full = {full.sum, 0.0};
        out.m_term = {m.sum, 0.0};
        out.x1 = {x1.sum, 0.0};
        out.x2 = {x2.sum, 0.0};
        out.x3 = {x3.sum, 0.0};
    }
    out.e_term = out.x1 + out.x2 - out.x3;
    out.window_count = count;
    return out;
}

}  // namespace rmt::logderiv
