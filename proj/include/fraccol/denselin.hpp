#pragma once

#include <complex>
#include <span>
#include <vector>

#include "fraccol/densemat.hpp"

namespace fraccol {

/// Partially pivoted LU factorization, stored packed (L below the diagonal,
/// unit diagonal implied; U on and above).
class LuFactors {
  public:
    /// Factor PA = LU. Throws SingularMatrixError when a pivot drops below
    /// 1e-300 in magnitude (the offending column index is reported).
    explicit LuFactors(DenseMatrix a);

    int size() const { return lu_.rows(); }

    /// Solve A x = b in place.
    void solve(std::span<double> b) const;

    /// Determinant of A as the signed product of pivots.
    double determinant() const;

  private:
    DenseMatrix lu_;
    std::vector<int> perm_;
    int sign_;
};

/// Solve A X = B for one or more right-hand-side columns.
DenseMatrix lu_solve(const DenseMatrix& a, const DenseMatrix& b);
std::vector<double> lu_solve(const DenseMatrix& a, std::vector<double> b);

/// Determinant via partially pivoted LU.
double lu_det(const DenseMatrix& a);

/// Eigenvalues of a real square matrix (n <= 64): diagonal balancing,
/// Householder reduction to Hessenberg form, then Francis double-shift QR.
/// Complex eigenvalues come out in exact conjugate pairs; the result is
/// sorted by (re, im). Throws ConvergenceError after 60*n QR sweeps.
std::vector<std::complex<double>> eigenvalues(const DenseMatrix& a);

/// Eigenvalues of a symmetric matrix by cyclic Jacobi sweeps, ascending.
/// The input is symmetrized as (S + S^T)/2 first.
std::vector<double> symmetric_eigenvalues(const DenseMatrix& s);

struct SymmetricPsdReport {
    bool psd;
    double min_eigenvalue;
};

/// Tests whether the symmetric part (S + S^T)/2 is positive semidefinite:
/// true iff its minimum eigenvalue is >= -tol.
SymmetricPsdReport symmetric_part_psd(const DenseMatrix& s, double tol);

}  // namespace fraccol
