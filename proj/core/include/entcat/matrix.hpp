#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace entcat {

using cxd = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

inline bool all_finite(const CMat& m) { return m.allFinite(); }
inline bool all_finite(const CVec& v) { return v.allFinite(); }

inline CMat dagger(const CMat& m) { return m.adjoint(); }

inline double max_abs(const CMat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const CMat& m, double eps) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= eps;
}

// Kronecker product in the i-major index convention used throughout:
// row index of a (x) b is row_a * b.rows() + row_b.
inline CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

struct HermitianEig {
  RVec eigenvalues;   // real, descending
  CMat eigenvectors;  // columns, matching order
};

// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.
// Rejects non-Hermitian input.
HermitianEig hermitian_eig(const CMat& m);

// PSD square root via hermitian_eig. Eigenvalues below the rejection
// threshold throw; tiny negatives from roundoff are clamped to zero.
CMat sqrtm_psd(const CMat& m);

}  // namespace entcat
