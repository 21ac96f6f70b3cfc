#pragma once

#include "ensembles.hpp"

namespace rmt::oracle {

struct OracleResult {
    double value;
    double est_quadrature_error;
};

// Brute-force E|P'/P(1 - a/n)|^K over the joint eigenangle density from
// the Weyl integration formula (unnormalized weights; the normalization
// cancels in the ratio). Tensor Gauss-Legendre with order doubling until
// the ratio is stable to rel_tol. n <= 3.
OracleResult weyl_moment(ensembles::Family family, int n, double a, double k,
                         double rel_tol = 1e-7);

// Exact finite-N second moment for the unitary family via the 1- and
// 2-level densities,
//   E|P'/P(z)|^2 = int rho1 |z-e^it|^-2 dt
//                + int int rho2(t,s) Re[(z-e^it)^-1 conj((z-e^is)^-1)] dt ds
// with rho1 = N/2pi and rho2 = (N^2 - S_N(t-s)^2)/(2pi)^2. The optional
// rotation shifts the (periodic) integration window; the value is
// invariant under it.
OracleResult second_moment_exact_unitary(int n, double a, double rel_tol = 1e-6,
                                         double rotation = 0.0);

}  // namespace rmt::oracle
