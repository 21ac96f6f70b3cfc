#pragma once

#include <string>

#include "ensembles.hpp"

namespace rmt::theory {

// Moment query for E|P'/P(1 - a/N)|^K. Validity floors: unitary and
// SO(2N) need K > 1, USp(2N) needs K > 3, SO(2N+1) needs K > 0 (and
// Ka < 1 so the two-term expansion stays positive).
struct MomentQuery {
    ensembles::Family family;
    int n;
    double a;
    double k;
};

struct Prediction {
    double value;
    bool valid;
    std::string form;
};

bool k_valid(ensembles::Family family, double k);
// Human-readable validity threshold, e.g. "K>1".
const char* k_threshold(ensembles::Family family);

// Leading-order closed forms of the asymptotic moments:
//   unitary: (N/2pi) (N/a)^(K-1) sqrt(pi) G((K-1)/2)/G(K/2)
//   SO(2N):  (2N/pi) 2^K (N/a)^(K-1) (sqrt(pi)/2) G(K-1/2)/G(K)
//   USp(2N): (2N^3/3pi) 2^K (N/a)^(K-3) (sqrt(pi)/4) G(K-3/2)/G(K)
//   SO(2N+1): (N/a)^K (1 - K a), the two leading terms
// Throws a validity error outside the K range.
Prediction predict(const MomentQuery& q);

// Magnitudes of the integer-moment formulas. Note the unitary formula is
// for the 2K-th moment: integer_moment(unitary, m) = E|P'/P|^(2m).
// SO(2N) is implemented with exponent a^(1-K), the form consistent with
// its own real-moment closed form.
double integer_moment(ensembles::Family family, int k_int, int n, double a);

// Numerical evaluation of the limit integrals behind predict(); agrees
// with the Gamma closed form to ~1e-10 relative. Computed from the scaled
// integrand via adaptive quadrature on [0,2] plus a convergent binomial
// tail series, so slow algebraic tails (K close to 1) lose no accuracy.
double limit_integral(const MomentQuery& q);

}  // namespace rmt::theory
