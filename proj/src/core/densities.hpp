#pragma once

#include <vector>

#include "ensembles.hpp"

namespace rmt::densities {

// S_N(x) = sin(Nx/2)/sin(x/2), the Dirichlet (sine) kernel, with the
// removable singularities at multiples of 2pi evaluated by series.
double sine_kernel(int n, double x);

// Exact finite-N 1-level density of the stored eigenangles, per unit
// angle. Unitary is flat N/2pi on (-pi, pi]; the paired families are the
// standard determinantal densities on (0, pi):
//   SO(2N):   [ (2N-1) + sin((2N-1)t)/sin t ] / 2pi
//   SO(2N+1): [  2N    - sin(2N t)   /sin t ] / 2pi
//   USp(2N):  [ (2N+1) - sin((2N+1)t)/sin t ] / 2pi
double one_level_density(ensembles::Family family, int n, double theta);

// Ordered m-tuple correlation density det[S_N(t_k - t_j)] / (2pi)^m for
// the unitary ensemble; m <= 8.
double m_level_density_unitary(int n, const std::vector<double>& thetas);

// Per-unit-dtheta clustering bound: probability density of "exactly m
// eigenangles in [-c/N, c/N] with one at theta":
//   (N/2pi) m (c/pi)^(m-1).
double cluster_prob_bound(int n, double c, int m);

// USp variant with the theta^2-weighted near-zero density.
double cluster_prob_bound_usp(int n, double c, int m, double theta);

// Upper bound for Pr(exactly m stored angles in the window), integrating
// the clustering bound over the window: (c/pi)^m for the unitary family.
double cluster_window_prob_bound(double c, int m);

struct DensityCurve {
    ensembles::Family family;
    int n;
    std::vector<double> grid;     // bin centers
    std::vector<double> edges;    // bin edges (grid.size() + 1)
    std::vector<double> values;   // density per unit angle
    std::vector<double> stderrs;  // binomial standard errors (empirical only)
    long draws = 0;
};

// Histogram density from draws; all samples must share family and n.
DensityCurve empirical_density(const std::vector<ensembles::AngleSample>& samples,
                               int bins);

// Bin-averaged exact density on the same grid, for comparison.
DensityCurve exact_density_curve(ensembles::Family family, int n, int bins);

// Fundamental angle range of the stored angles.
void angle_range(ensembles::Family family, double* lo, double* hi);

struct WindowCountDistribution {
    std::vector<long> histogram;  // histogram[m] = draws with m angles in window
    long draws = 0;
    // empirical P(exactly one | at least one); NaN if no window was hit
    double p_exactly_one;
};

// Counts stored angles with |theta| < c/n per draw.
WindowCountDistribution window_count_distribution(
    const std::vector<ensembles::AngleSample>& samples, double c);

}  // namespace rmt::densities
