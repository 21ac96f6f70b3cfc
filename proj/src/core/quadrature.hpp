#pragma once

#include <functional>

namespace rmt::quad {

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;  // estimated bound, not guaranteed
    int panels = 0;
};

using Integrand = std::function<double(double)>;

// Adaptive Gauss-Kronrod (G7/K15) on [lo, hi]. Stops when the summed panel
// error estimate drops below max(abs_tol, rel_tol * |integral|); throws
// QuadratureError (carrying the best estimate) at the subdivision cap.
QuadResult integrate(const Integrand& f, double lo, double hi, double rel_tol,
                     double abs_tol = 0.0, int max_panels = 4000);

// [lo, +inf) via the rational substitution t = lo + u/(1-u).
QuadResult integrate_semi_infinite(const Integrand& f, double lo, double rel_tol,
                                   double abs_tol = 0.0, int max_panels = 4000);

// (-inf, +inf), split at zero with the same substitution on each side.
QuadResult integrate_real_line(const Integrand& f, double rel_tol,
                               double abs_tol = 0.0, int max_panels = 4000);

// Single non-adaptive K15 panel; used as the building block and exposed
// for tests.
void kronrod15(const Integrand& f, double lo, double hi, double* result,
               double* error_estimate);

}  // namespace rmt::quad
