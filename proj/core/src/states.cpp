#include "entcat/states.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

#include "entcat/config.hpp"

namespace entcat {

PureState::PureState(int dim_a, int dim_b, CVec amplitudes)
    : dim_a_(dim_a), dim_b_(dim_b), amp_(std::move(amplitudes)) {
  if (dim_a_ < 1 || dim_b_ < 1)
    throw std::invalid_argument("PureState: dimensions must be positive");
  if (amp_.size() != static_cast<Eigen::Index>(dim_a_) * dim_b_)
    throw std::invalid_argument("PureState: amplitude length mismatch");
  if (!all_finite(amp_)) throw std::invalid_argument("PureState: non-finite amplitude");
  const double n2 = amp_.squaredNorm();
  if (std::abs(n2 - 1.0) > tol().norm)
    throw std::invalid_argument("PureState: not normalized");
}

CMat PureState::coefficient_matrix() const {
  CMat m(dim_a_, dim_b_);
  for (int i = 0; i < dim_a_; ++i)
    for (int j = 0; j < dim_b_; ++j) m(i, j) = amp_(i * dim_b_ + j);
  return m;
}

cxd PureState::overlap(const PureState& other) const {
  if (dim_a_ != other.dim_a_ || dim_b_ != other.dim_b_)
    throw std::invalid_argument("PureState::overlap: dimension mismatch");
  return amp_.dot(other.amp_);
}

DensityMatrix::DensityMatrix(int dim_a, int dim_b, CMat matrix)
    : dim_a_(dim_a), dim_b_(dim_b), mat_(std::move(matrix)) {
  const Eigen::Index d = static_cast<Eigen::Index>(dim_a_) * dim_b_;
  if (dim_a_ < 1 || dim_b_ < 1)
    throw std::invalid_argument("DensityMatrix: dimensions must be positive");
  if (mat_.rows() != d || mat_.cols() != d)
    throw std::invalid_argument("DensityMatrix: size mismatch");
  if (!all_finite(mat_)) throw std::invalid_argument("DensityMatrix: non-finite entry");
  if (!is_hermitian(mat_, tol().hermitian))
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  if (std::abs(mat_.trace().real() - 1.0) > tol().trace_one ||
      std::abs(mat_.trace().imag()) > tol().trace_one)
    throw std::invalid_argument("DensityMatrix: trace differs from 1");
  Eigen::SelfAdjointEigenSolver<CMat> es(mat_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < tol().psd_floor)
    throw std::invalid_argument("DensityMatrix: negative eigenvalue");
}

DensityMatrix to_density(const PureState& psi) {
  CMat m = psi.amplitudes() * psi.amplitudes().adjoint();
  return DensityMatrix(psi.dimA(), psi.dimB(), std::move(m));
}

namespace {

void check_joint_dim(long dim) {
  if (dim > kMaxJointDimension)
    throw std::invalid_argument("tensor_product: joint dimension exceeds cap");
}

// Index permutation taking the naive product order
// ((i1,j1),(i2,j2)) -> regrouped ((i1,i2),(j1,j2)).
std::vector<Eigen::Index> regroup_map(int da1, int db1, int da2, int db2) {
  std::vector<Eigen::Index> map(static_cast<std::size_t>(da1) * db1 * da2 * db2);
  for (int i1 = 0; i1 < da1; ++i1)
    for (int j1 = 0; j1 < db1; ++j1)
      for (int i2 = 0; i2 < da2; ++i2)
        for (int j2 = 0; j2 < db2; ++j2) {
          const Eigen::Index naive =
              ((static_cast<Eigen::Index>(i1) * db1 + j1) * da2 + i2) * db2 + j2;
          const Eigen::Index grouped =
              (static_cast<Eigen::Index>(i1) * da2 + i2) *
                  (static_cast<Eigen::Index>(db1) * db2) +
              (static_cast<Eigen::Index>(j1) * db2 + j2);
          map[static_cast<std::size_t>(naive)] = grouped;
        }
  return map;
}

}  // namespace

PureState tensor_product(const PureState& x, const PureState& y) {
  const long da = static_cast<long>(x.dimA()) * y.dimA();
  const long db = static_cast<long>(x.dimB()) * y.dimB();
  check_joint_dim(da * db);
  const auto map = regroup_map(x.dimA(), x.dimB(), y.dimA(), y.dimB());
  CVec amp(da * db);
  for (Eigen::Index p = 0; p < x.amplitudes().size(); ++p)
    for (Eigen::Index q = 0; q < y.amplitudes().size(); ++q) {
      const Eigen::Index naive = p * y.amplitudes().size() + q;
      amp(map[static_cast<std::size_t>(naive)]) =
          x.amplitudes()(p) * y.amplitudes()(q);
    }
  return PureState(static_cast<int>(da), static_cast<int>(db), std::move(amp));
}

DensityMatrix tensor_product(const DensityMatrix& x, const DensityMatrix& y) {
  const long da = static_cast<long>(x.dimA()) * y.dimA();
  const long db = static_cast<long>(x.dimB()) * y.dimB();
  check_joint_dim(da * db);
  const auto map = regroup_map(x.dimA(), x.dimB(), y.dimA(), y.dimB());
  const Eigen::Index d = da * db;
  CMat out = CMat::Zero(d, d);
  const Eigen::Index dy = y.matrix().rows();
  for (Eigen::Index p = 0; p < x.matrix().rows(); ++p)
    for (Eigen::Index pp = 0; pp < x.matrix().rows(); ++pp)
      for (Eigen::Index q = 0; q < dy; ++q)
        for (Eigen::Index qq = 0; qq < dy; ++qq)
          out(map[static_cast<std::size_t>(p * dy + q)],
              map[static_cast<std::size_t>(pp * dy + qq)]) =
              x.matrix()(p, pp) * y.matrix()(q, qq);
  return DensityMatrix(static_cast<int>(da), static_cast<int>(db), std::move(out));
}

CMat partial_trace_B(const DensityMatrix& rho) {
  const int da = rho.dimA(), db = rho.dimB();
  CMat out = CMat::Zero(da, da);
  for (int i = 0; i < da; ++i)
    for (int ip = 0; ip < da; ++ip)
      for (int j = 0; j < db; ++j)
        out(i, ip) += rho.matrix()(i * db + j, ip * db + j);
  return out;
}

CMat partial_trace_A(const DensityMatrix& rho) {
  const int da = rho.dimA(), db = rho.dimB();
  CMat out = CMat::Zero(db, db);
  for (int j = 0; j < db; ++j)
    for (int jp = 0; jp < db; ++jp)
      for (int i = 0; i < da; ++i)
        out(j, jp) += rho.matrix()(i * db + j, i * db + jp);
  return out;
}

DensityMatrix trace_out_ancilla(const DensityMatrix& rho, int dim_at, int dim_bt) {
  if (rho.dimA() % dim_at != 0 || rho.dimB() % dim_bt != 0)
    throw std::invalid_argument("trace_out_ancilla: incompatible factor dimensions");
  const int da = rho.dimA() / dim_at;
  const int db = rho.dimB() / dim_bt;
  const int dbfull = rho.dimB();
  CMat out = CMat::Zero(static_cast<Eigen::Index>(da) * db,
                        static_cast<Eigen::Index>(da) * db);
  for (int i = 0; i < da; ++i)
    for (int ip = 0; ip < da; ++ip)
      for (int j = 0; j < db; ++j)
        for (int jp = 0; jp < db; ++jp) {
          cxd s = 0.0;
          for (int a = 0; a < dim_at; ++a)
            for (int b = 0; b < dim_bt; ++b)
              s += rho.matrix()((i * dim_at + a) * dbfull + (j * dim_bt + b),
                                (ip * dim_at + a) * dbfull + (jp * dim_bt + b));
          out(i * db + j, ip * db + jp) = s;
        }
  return DensityMatrix(da, db, std::move(out));
}

Spectrum schmidt_spectrum(const PureState& psi) {
  Eigen::JacobiSVD<CMat> svd(psi.coefficient_matrix());
  const auto& sv = svd.singularValues();
  std::vector<double> vals(static_cast<std::size_t>(sv.size()));
  for (Eigen::Index i = 0; i < sv.size(); ++i) vals[static_cast<std::size_t>(i)] = sv(i) * sv(i);
  return Spectrum(std::move(vals));
}

}  // namespace entcat
