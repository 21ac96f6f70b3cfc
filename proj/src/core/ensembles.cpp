#include "ensembles.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "errors.hpp"
#include "linalg.hpp"

namespace rmt::ensembles {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

std::atomic<std::uint64_t> g_clamp_count{0};

double clamp_unit(double x) {
    if (x < 0.0) {
        g_clamp_count.fetch_add(1, std::memory_order_relaxed);
        return 0.0;
    }
    if (x > 1.0) {
        g_clamp_count.fetch_add(1, std::memory_order_relaxed);
        return 1.0;
    }
    return x;
}

// Marsaglia-Tsang; shapes below one are lifted with the standard boost.
double gamma_variate(rng::RngStream& stream, double shape) {
    if (shape < 1.0) {
        const double g = gamma_variate(stream, shape + 1.0);
        return g * std::pow(stream.uniform_pos(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / (3.0 * std::sqrt(d));
    for (;;) {
        double x, v;
        do {
            x = stream.gaussian_pair().first;
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = stream.uniform_pos();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double beta_variate(rng::RngStream& stream, double alpha, double beta) {
    const double x = gamma_variate(stream, alpha);
    const double y = gamma_variate(stream, beta);
    return x / (x + y);
}

// Eigenvalues in (0,1), ascending, of the beta=2 Jacobi chain with weight
// lambda^a (1-lambda)^b. Canonical-moment parametrization: independent
//   p_{2j-1} ~ Beta(n-j+a+1, n-j+b+1)        j = 1..n
//   p_{2j}   ~ Beta(n-j,     n-j+a+b+1)      j = 1..n-1
// and the chain zeta_1 = p_1, zeta_k = (1-p_{k-1}) p_k feeding the Jacobi
// matrix entries d_j = zeta_{2j-2} + zeta_{2j-1}, off_j^2 = zeta_{2j-1} zeta_{2j}.
std::vector<double> jacobi_lambda(int n, double a, double b,
                                  rng::RngStream& stream) {
    std::vector<double> p(2 * n);  // p[1..2n-1] used
    for (int j = 1; j <= n; ++j) {
        p[2 * j - 1] = beta_variate(stream, (n - j) + a + 1.0, (n - j) + b + 1.0);
    }
    for (int j = 1; j <= n - 1; ++j) {
        p[2 * j] = beta_variate(stream, static_cast<double>(n - j),
                                (n - j) + a + b + 1.0);
    }
    std::vector<double> zeta(2 * n);
    zeta[1] = p[1];
    for (int k = 2; k <= 2 * n - 1; ++k) zeta[k] = (1.0 - p[k - 1]) * p[k];
    linalg::RealSymTridiag t;
    t.diag.resize(n);
    t.offdiag.resize(n - 1);
    t.diag[0] = zeta[1];
    for (int j = 2; j <= n; ++j) t.diag[j - 1] = zeta[2 * j - 2] + zeta[2 * j - 1];
    for (int j = 1; j <= n - 1; ++j) {
        t.offdiag[j - 1] = std::sqrt(zeta[2 * j - 1] * zeta[2 * j]);
    }
    return linalg::eig_sym_tridiag(t);
}

// Jacobi weight exponents on (1-x) and (1+x) for the cos-mapped eigenangle
// laws (Weyl integration formula).
void tridiag_exponents(Family f, double* exp_minus, double* exp_plus) {
    switch (f) {
        case Family::so_even: *exp_minus = -0.5; *exp_plus = -0.5; return;
        case Family::so_odd:  *exp_minus = +0.5; *exp_plus = -0.5; return;
        case Family::usp:     *exp_minus = +0.5; *exp_plus = +0.5; return;
        default:
            throw Error(ErrorKind::usage, "no tridiagonal model for this family");
    }
}

AngleSample sample_tridiag(Family f, int n, rng::RngStream& stream) {
    double em, ep;
    tridiag_exponents(f, &em, &ep);
    // lambda = (1-cos theta)/2 = sin^2(theta/2); ascending lambda is
    // ascending theta, and the asin form stays accurate near theta = 0.
    const std::vector<double> lam = jacobi_lambda(n, em, ep, stream);
    AngleSample s{f, n, std::vector<double>(n)};
    for (int i = 0; i < n; ++i) {
        s.angles[i] = 2.0 * std::asin(std::sqrt(clamp_unit(lam[i])));
    }
    return s;
}

}  // namespace

AngleSample sample_unitary(int n, rng::RngStream& stream) {
    if (n < 1) throw Error(ErrorKind::usage, "sample_unitary: n must be >= 1");
    linalg::ComplexMatrix g(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const auto [re, im] = stream.gaussian_pair();
            g.at(i, j) = linalg::cplx(re, im);
        }
    }
    const linalg::ComplexQR qr = linalg::householder_qr(g);
    const linalg::ComplexMatrix q = linalg::phase_normalize(qr);
    // cos(theta_j) are the eigenvalues of the Hermitian part; the shared
    // eigenvectors recover sin(theta_j) from the anti-Hermitian part.
    linalg::ComplexMatrix h(n);
    linalg::ComplexMatrix aim(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            const linalg::cplx qij = q.at(i, j);
            const linalg::cplx qji = std::conj(q.at(j, i));
            h.at(i, j) = 0.5 * (qij + qji);
            aim.at(i, j) = linalg::cplx(0.0, -0.5) * (qij - qji);
        }
    }
    linalg::HermitianEigen eig = linalg::eig_hermitian(h);
    AngleSample s{Family::unitary, n, std::vector<double>(n)};
    std::vector<linalg::cplx> av(n);
    for (int j = 0; j < n; ++j) {
        // av = Aim * v_j, reading the stored lower triangle
        for (int i = 0; i < n; ++i) {
            linalg::cplx acc = 0.0;
            for (int l = 0; l <= i; ++l) acc += aim.at(i, l) * eig.vectors.at(l, j);
            for (int l = i + 1; l < n; ++l) {
                acc += std::conj(aim.at(l, i)) * eig.vectors.at(l, j);
            }
            av[i] = acc;
        }
        double sj = 0.0;
        for (int i = 0; i < n; ++i) {
            sj += std::real(std::conj(eig.vectors.at(i, j)) * av[i]);
        }
        double theta = std::atan2(sj, eig.values[j]);
        if (theta <= -kPi) theta = kPi;  // range is (-pi, pi]
        s.angles[j] = theta;
    }
    std::sort(s.angles.begin(), s.angles.end());
    return s;
}

AngleSample sample_so_even_dense(int n, rng::RngStream& stream) {
    if (n < 1) throw Error(ErrorKind::usage, "sample_so_even_dense: n must be >= 1");
    const int m = 2 * n;  // even
    linalg::RealMatrix g(m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; j += 2) {
            const auto [g1, g2] = stream.gaussian_pair();
            g.at(i, j) = g1;
            g.at(i, j + 1) = g2;
        }
    }
    linalg::RealQR qr = linalg::householder_qr_real(g);
    if (qr.det_sign < 0) {
        // Right translation by a fixed reflection carries the det = -1
        // coset's Haar measure onto SO(2n).
        for (int i = 0; i < m; ++i) qr.q.at(i, m - 1) = -qr.q.at(i, m - 1);
    }
    linalg::RealMatrix sym(m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j <= i; ++j) {
            sym.at(i, j) = 0.5 * (qr.q.at(i, j) + qr.q.at(j, i));
        }
    }
    const std::vector<double> vals = linalg::eig_real_symmetric_values(sym);
    // Spectrum is {cos theta_j, each twice}; consecutive sorted values pair up.
    AngleSample s{Family::so_even, n, std::vector<double>(n)};
    for (int j = 0; j < n; ++j) {
        const double lo = vals[2 * j];
        const double hi = vals[2 * j + 1];
        if (std::abs(hi - lo) > 1e-8) {
            throw Error(ErrorKind::sampler_integrity,
                        "sample_so_even_dense: eigenvalue pairing failure");
        }
        double c = 0.5 * (lo + hi);
        if (c < -1.0 || c > 1.0) {
            g_clamp_count.fetch_add(1, std::memory_order_relaxed);
            c = std::clamp(c, -1.0, 1.0);
        }
        // ascending cos is descending theta
        s.angles[n - 1 - j] = std::acos(c);
    }
    return s;
}

std::vector<double> sample_jacobi_beta2(int n, double exp_minus, double exp_plus,
                                        rng::RngStream& stream) {
    if (n < 1) throw Error(ErrorKind::usage, "sample_jacobi_beta2: n must be >= 1");
    if (exp_minus <= -1.0 || exp_plus <= -1.0) {
        throw Error(ErrorKind::domain,
                    "sample_jacobi_beta2: exponents must exceed -1");
    }
    const std::vector<double> lam = jacobi_lambda(n, exp_minus, exp_plus, stream);
    // x = 1 - 2*lambda, returned ascending
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) {
        x[i] = std::clamp(1.0 - 2.0 * lam[n - 1 - i], -1.0, 1.0);
    }
    return x;
}

AngleSample sample_so_even(int n, rng::RngStream& stream, Backend backend) {
    if (backend == Backend::dense) return sample_so_even_dense(n, stream);
    return sample_tridiag(Family::so_even, n, stream);
}

AngleSample sample_so_odd(int n, rng::RngStream& stream) {
    return sample_tridiag(Family::so_odd, n, stream);
}

AngleSample sample_usp(int n, rng::RngStream& stream) {
    return sample_tridiag(Family::usp, n, stream);
}

AngleSample sample(const EnsembleSpec& spec, rng::RngStream& stream,
                   Backend backend) {
    if (!backend_available(spec.family, backend)) {
        throw Error(ErrorKind::usage,
                    std::string("no ") + backend_name(backend) +
                        " backend for ensemble " + family_name(spec.family));
    }
    switch (spec.family) {
        case Family::unitary: return sample_unitary(spec.n, stream);
        case Family::so_even: return sample_so_even(spec.n, stream, backend);
        case Family::so_odd: return sample_so_odd(spec.n, stream);
        case Family::usp: return sample_usp(spec.n, stream);
    }
    throw Error(ErrorKind::usage, "sample: unknown family");
}

std::uint64_t clamp_count() { return g_clamp_count.load(std::memory_order_relaxed); }

const char* family_name(Family f) {
    switch (f) {
        case Family::unitary: return "u";
        case Family::so_even: return "so-even";
        case Family::so_odd: return "so-odd";
        case Family::usp: return "usp";
    }
    return "?";
}

bool parse_family(const std::string& name, Family* out) {
    if (name == "u" || name == "unitary") *out = Family::unitary;
    else if (name == "so-even") *out = Family::so_even;
    else if (name == "so-odd") *out = Family::so_odd;
    else if (name == "usp") *out = Family::usp;
    else return false;
    return true;
}

bool backend_available(Family f, Backend b) {
    switch (f) {
        case Family::unitary: return b == Backend::dense;
        case Family::so_even: return true;
        case Family::so_odd: return b == Backend::tridiag;
        case Family::usp: return b == Backend::tridiag;
    }
    return false;
}

Backend default_backend(Family f) {
    return f == Family::unitary ? Backend::dense : Backend::tridiag;
}

const char* backend_name(Backend b) {
    return b == Backend::dense ? "dense" : "tridiag";
}

bool parse_backend(const std::string& name, Backend* out) {
    if (name == "dense") *out = Backend::dense;
    else if (name == "tridiag") *out = Backend::tridiag;
    else return false;
    return true;
}

}  // namespace rmt::ensembles
