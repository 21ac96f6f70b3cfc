#pragma once

#include <complex>

#include "ensembles.hpp"

namespace rmt::logderiv {

// Evaluation point z = 1 - a/n just inside the unit circle, with the
// reference point z0 = 1 - 1/n.
struct EvalPoint {
    double a;
    int n;
    double z() const { return 1.0 - a / n; }
    double z0() const { return 1.0 - 1.0 / n; }
};

EvalPoint make_eval_point(double a, int n);  // enforces 0 < a/n < 1

// Window cutoff c with its moment order; angles with |theta| < c/n are
// "near" z. The default choice c = a^((K-1)/(2K)) needs K > 1.
struct Cutoff {
    double c;
    double k;
};

struct CutoffDiagnostics {
    double c;          // should be o(1)
    double a_over_c;   // should be o(1)
    double c3_ratio;   // c^-K * a^(K-1), should be o(1)
};

Cutoff cutoff_c(double a, double k);
CutoffDiagnostics cutoff_diagnostics(double a, double k);

// P'/P(z) = sum over eigenvalues of 1/(z - z_j). Paired families sum
// conjugate pairs, giving a real value; SO(2n+1) includes the fixed
// eigenvalue at 1, contributing 1/(z-1) = -n/a.
std::complex<double> log_deriv(const ensembles::AngleSample& sample,
                               const EvalPoint& p);

// Split of P'/P(z) into the window main term M and E = X1 + X2 - X3:
//   M  = sum_{|theta_j| <  c/n} 1/(z  - z_j)
//   X1 = P'/P(z0)
//   X2 = sum_{|theta_j| >= c/n} (1/(z - z_j) - 1/(z0 - z_j))
//   X3 = sum_{|theta_j| <  c/n} 1/(z0 - z_j)
// full = M + E holds identically; window_count counts stored angles in
// the window (the implicit SO(2n+1) eigenvalue contributes terms but is
// not counted).
struct Decomposition {
    std::complex<double> full;
    std::complex<double> m_term;
    std::complex<double> x1;
    std::complex<double> x2;
    std::complex<double> x3;
    std::complex<double> e_term;
    int window_count;
};

Decomposition decompose(const ensembles::AngleSample& sample, const EvalPoint& p,
                        const Cutoff& cutoff);

}  // namespace rmt::logderiv
