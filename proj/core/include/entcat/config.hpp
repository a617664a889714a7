#pragma once

namespace entcat {

// Central tolerance configuration. Majorization verdicts are sensitive to
// these numbers, so every module reads them from this one record instead of
// scattering literals.
struct Tolerances {
  double norm = 1e-10;             // pure-state normalization
  double hermitian = 1e-10;        // entrywise Hermiticity of density matrices
  double psd_floor = -1e-10;       // smallest admissible density eigenvalue
  double trace_one = 1e-10;
  double majorization = 1e-10;     // prefix-sum slack
  double spectrum_sum = 1e-9;
  double kraus = 1e-8;             // sub-normalization slack for Kraus sets
  double eig_hermitian = 1e-8;     // Hermiticity rejection for the eigensolver
  double clamp_reject = -1e-8;     // PSD clamping rejection before square roots
  double degenerate_branch = 1e-12;
  double tie = 1e-12;              // strict-order tie threshold for products
};

inline const Tolerances& tol() {
  static const Tolerances t;
  return t;
}

// Joint Hilbert-space dimensions never exceed this cap.
inline constexpr int kMaxJointDimension = 4096;

}  // namespace entcat
