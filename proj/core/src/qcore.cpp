#include "entcat/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "entcat/config.hpp"

namespace entcat {

HermitianEig hermitian_eig(const CMat& m) {
  if (!is_hermitian(m, tol().eig_hermitian))
    throw std::invalid_argument("hermitian_eig: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMat> es((m + m.adjoint()) / 2.0);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eig: solver failed");
  // Eigen returns ascending order; flip to descending.
  const Eigen::Index n = m.rows();
  HermitianEig out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.eigenvalues(i) = es.eigenvalues()(n - 1 - i);
    out.eigenvectors.col(i) = es.eigenvectors().col(n - 1 - i);
  }
  return out;
}

CMat sqrtm_psd(const CMat& m) {
  HermitianEig eig = hermitian_eig(m);
  RVec v = eig.eigenvalues;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) < tol().clamp_reject)
      throw std::invalid_argument("sqrtm_psd: eigenvalue below rejection threshold");
    v(i) = std::sqrt(std::max(v(i), 0.0));
  }
  return eig.eigenvectors * v.asDiagonal() * eig.eigenvectors.adjoint();
}

double uhlmann_fidelity(const DensityMatrix& sigma, const DensityMatrix& rho) {
  if (sigma.dimA() != rho.dimA() || sigma.dimB() != rho.dimB())
    throw std::invalid_argument("uhlmann_fidelity: dimension mismatch");
  const CMat s = sqrtm_psd(sigma.matrix());
  const CMat inner = s * rho.matrix() * s;
  HermitianEig eig = hermitian_eig((inner + inner.adjoint()) / 2.0);
  double root_sum = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
    root_sum += std::sqrt(std::max(eig.eigenvalues(i), 0.0));
  return std::clamp(root_sum * root_sum, 0.0, 1.0);
}

double trace_distance(const DensityMatrix& sigma, const DensityMatrix& rho) {
  if (sigma.dimA() != rho.dimA() || sigma.dimB() != rho.dimB())
    throw std::invalid_argument("trace_distance: dimension mismatch");
  HermitianEig eig = hermitian_eig(sigma.matrix() - rho.matrix());
  double sum = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
    sum += std::abs(eig.eigenvalues(i));
  return std::clamp(0.5 * sum, 0.0, 1.0);
}

void validate_kraus_set(const std::vector<KrausPair>& kraus, int dim_a, int dim_b) {
  if (kraus.empty()) throw std::invalid_argument("kraus set: empty");
  CMat sum_a = CMat::Zero(dim_a, dim_a);
  CMat sum_b = CMat::Zero(dim_b, dim_b);
  for (const auto& k : kraus) {
    if (k.a_op.cols() != dim_a || k.b_op.cols() != dim_b)
      throw std::invalid_argument("kraus set: operator column mismatch");
    if (k.a_op.rows() != kraus.front().a_op.rows() ||
        k.b_op.rows() != kraus.front().b_op.rows())
      throw std::invalid_argument("kraus set: inconsistent output dimensions");
    sum_a += k.a_op.adjoint() * k.a_op;
    sum_b += k.b_op.adjoint() * k.b_op;
  }
  Eigen::SelfAdjointEigenSolver<CMat> ea(sum_a, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<CMat> eb(sum_b, Eigen::EigenvaluesOnly);
  if (ea.eigenvalues().maxCoeff() > 1.0 + tol().kraus ||
      eb.eigenvalues().maxCoeff() > 1.0 + tol().kraus)
    throw std::invalid_argument("kraus set: sub-normalization violated");
}

MapResult apply_separable_map(const DensityMatrix& state,
                              const std::vector<KrausPair>& kraus,
                              bool normalize) {
  validate_kraus_set(kraus, state.dimA(), state.dimB());
  const int da_out = static_cast<int>(kraus.front().a_op.rows());
  const int db_out = static_cast<int>(kraus.front().b_op.rows());
  CMat acc = CMat::Zero(static_cast<Eigen::Index>(da_out) * db_out,
                        static_cast<Eigen::Index>(da_out) * db_out);
  for (const auto& k : kraus) {
    const CMat op = kron(k.a_op, k.b_op);
    acc += op * state.matrix() * op.adjoint();
  }
  MapResult res;
  res.dim_a = da_out;
  res.dim_b = db_out;
  res.probability = acc.trace().real();
  if (normalize) {
    if (res.probability <= tol().degenerate_branch)
      throw std::runtime_error("apply_separable_map: degenerate branch");
    acc /= res.probability;
    // Symmetrize away roundoff so the result passes DensityMatrix validation.
    acc = (acc + acc.adjoint().eval()) / 2.0;
  }
  res.matrix = std::move(acc);
  return res;
}

}  // namespace entcat
