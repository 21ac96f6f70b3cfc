#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rng.hpp"

namespace rmt::ensembles {

// The four classical compact group families. n is the number of free
// eigenangles (the matrix sizes are n, 2n, 2n+1, 2n respectively).
enum class Family { unitary, so_even, so_odd, usp };

enum class Backend { dense, tridiag };

struct EnsembleSpec {
    Family family;
    int n;
};

// One draw of eigenangles, sorted ascending. Unitary angles live in
// (-pi, pi]; the paired families store only the representative angle of
// each conjugate pair, in (0, pi). SO(2n+1) additionally has a fixed
// eigenvalue at angle 0 which is implicit, never stored.
struct AngleSample {
    Family family;
    int n;
    std::vector<double> angles;
};

AngleSample sample_unitary(int n, rng::RngStream& stream);

// Haar SO(2n) via real Ginibre + sign-normalized QR (det fixed by a
// reflection of the last column), angles from the symmetric part.
AngleSample sample_so_even_dense(int n, rng::RngStream& stream);

// n points on (-1,1) with density prop. to
//   prod_{j<k} (x_k - x_j)^2 prod_j (1-x_j)^exp_minus (1+x_j)^exp_plus,
// from the tridiagonal beta=2 Jacobi chain built from Beta variates.
std::vector<double> sample_jacobi_beta2(int n, double exp_minus, double exp_plus,
                                        rng::RngStream& stream);

AngleSample sample_so_even(int n, rng::RngStream& stream,
                           Backend backend = Backend::tridiag);
AngleSample sample_so_odd(int n, rng::RngStream& stream);
AngleSample sample_usp(int n, rng::RngStream& stream);

AngleSample sample(const EnsembleSpec& spec, rng::RngStream& stream,
                   Backend backend);

// Number of arccos endpoint clamps observed so far (process-wide).
std::uint64_t clamp_count();

const char* family_name(Family f);
bool parse_family(const std::string& name, Family* out);
bool backend_available(Family f, Backend b);
Backend default_backend(Family f);
const char* backend_name(Backend b);
bool parse_backend(const std::string& name, Backend* out);

}  // namespace rmt::ensembles
