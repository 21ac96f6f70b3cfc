#pragma once

#include <complex>
#include <vector>

namespace rmt::linalg {

using cplx = std::complex<double>;

// Dense square matrix, row-major.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n) {}
    static ComplexMatrix identity(int n);

    int size() const { return n_; }
    cplx& at(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    const cplx& at(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
    cplx* row(int i) { return a_.data() + static_cast<size_t>(i) * n_; }
    const cplx* row(int i) const { return a_.data() + static_cast<size_t>(i) * n_; }

private:
    int n_ = 0;
    std::vector<cplx> a_;
};

class RealMatrix {
public:
    RealMatrix() = default;
    explicit RealMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n) {}
    static RealMatrix identity(int n);

    int size() const { return n_; }
    double& at(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    const double& at(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
    double* row(int i) { return a_.data() + static_cast<size_t>(i) * n_; }
    const double* row(int i) const { return a_.data() + static_cast<size_t>(i) * n_; }

private:
    int n_ = 0;
    std::vector<double> a_;
};

struct RealSymTridiag {
    std::vector<double> diag;     // n entries
    std::vector<double> offdiag;  // n-1 entries
};

struct ComplexQR {
    ComplexMatrix q;
    ComplexMatrix r;
};

struct RealQR {
    RealMatrix q;
    RealMatrix r;
    int det_sign;  // det(q) after sign normalization, +1 or -1
};

// Householder QR of a square complex matrix; Q unitary, R upper triangular.
ComplexQR householder_qr(const ComplexMatrix& m);

// Rescale Q's columns by conj(R_jj/|R_jj|) so the R diagonal becomes real
// positive. With Gaussian input this makes Q exactly Haar distributed.
// Throws degenerate-input if some R_jj is zero.
ComplexMatrix phase_normalize(const ComplexQR& qr);

// Real Householder QR with the R diagonal normalized positive; det_sign
// tracks det(Q) exactly through the reflections and sign flips.
RealQR householder_qr_real(const RealMatrix& m);

struct HermitianEigen {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // columns, matching order
};

// Householder tridiagonalization followed by implicit-shift QL with
// accumulated transforms. Input must be Hermitian; only the lower triangle
// is read. Throws solver-failure after 50 sweeps on one eigenvalue.
HermitianEigen eig_hermitian(const ComplexMatrix& m);

// Eigenvalues only, ascending; same reduction without accumulation.
std::vector<double> eig_real_symmetric_values(const RealMatrix& m);

std::vector<double> eig_sym_tridiag(const RealSymTridiag& t);

double max_abs(const ComplexMatrix& m);
double max_abs_real(const RealMatrix& m);

}  // namespace rmt::linalg
