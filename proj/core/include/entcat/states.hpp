#pragma once

#include <utility>
#include <vector>

#include "entcat/matrix.hpp"
#include "entcat/spectrum.hpp"

namespace entcat {

// Bipartite pure state. Amplitudes in the basis |i>_A (x) |j>_B, i-major,
// so amplitude index = i * dimB + j. Normalized within tolerance.
class PureState {
 public:
  PureState(int dim_a, int dim_b, CVec amplitudes);

  int dimA() const { return dim_a_; }
  int dimB() const { return dim_b_; }
  const CVec& amplitudes() const { return amp_; }

  // Amplitudes reshaped to a dimA x dimB coefficient matrix.
  CMat coefficient_matrix() const;

  cxd overlap(const PureState& other) const;  // <this|other>

 private:
  int dim_a_;
  int dim_b_;
  CVec amp_;
};

// Hermitian, PSD, trace-one matrix on a tagged bipartite space.
class DensityMatrix {
 public:
  DensityMatrix(int dim_a, int dim_b, CMat matrix);

  int dimA() const { return dim_a_; }
  int dimB() const { return dim_b_; }
  int dim() const { return dim_a_ * dim_b_; }
  const CMat& matrix() const { return mat_; }

 private:
  int dim_a_;
  int dim_b_;
  CMat mat_;
};

// A pair of local operators (A_i, B_i); a_op acts on the A-side factor,
// b_op on the B-side factor. Rectangular operators are allowed.
struct KrausPair {
  CMat a_op;
  CMat b_op;
};

DensityMatrix to_density(const PureState& psi);

// Tensor product with the (A,At | B,Bt) regrouping: A-side factors are
// grouped together and B-side factors are grouped together, so partial
// traces over the joint B side stay meaningful.
PureState tensor_product(const PureState& x, const PureState& y);
DensityMatrix tensor_product(const DensityMatrix& x, const DensityMatrix& y);

// Reduced matrices; dimA x dimA (resp. dimB x dimB), Hermitian PSD trace-one.
CMat partial_trace_B(const DensityMatrix& rho);
CMat partial_trace_A(const DensityMatrix& rho);

// Undo an (A,At | B,Bt) grouping: trace out the trailing At and Bt factors
// of sizes dim_at and dim_bt.
DensityMatrix trace_out_ancilla(const DensityMatrix& rho, int dim_at, int dim_bt);

// Squared singular values of the coefficient matrix, as a Spectrum.
Spectrum schmidt_spectrum(const PureState& psi);

}  // namespace entcat
