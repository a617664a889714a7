#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace entcat {

// Ordered probability vector (Schmidt-coefficient squares or marginal
// eigenvalues). Values are sorted nonincreasing and clamped to [0,1];
// the sum must be 1 within tolerance.
class Spectrum {
 public:
  Spectrum() = default;
  // Sorts, clamps, and validates the sum.
  explicit Spectrum(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  // Zero-padded copy of length at least n.
  std::vector<double> padded(std::size_t n) const;

  // Number of entries above the tie threshold.
  std::size_t effective_rank() const;

 private:
  std::vector<double> values_;
};

struct MajorizationResult {
  bool holds = false;
  // On failure: smallest violating prefix index k (1-based) and both sums.
  std::size_t violating_k = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  std::vector<double> prefix_alpha;
  std::vector<double> prefix_beta;
};

// Eq.-(1)-style test: alpha is majorized by beta iff every prefix sum of
// alpha is <= the matching prefix sum of beta + tol. Spectra are zero-padded
// to equal length; prefix sums use compensated summation.
MajorizationResult is_majorized(const Spectrum& alpha, const Spectrum& beta,
                                double tolerance);
MajorizationResult is_majorized(const Spectrum& alpha, const Spectrum& beta);

// All pairwise products alpha_i * gamma_j, sorted nonincreasing.
Spectrum product_spectrum(const Spectrum& alpha, const Spectrum& gamma);

// Largest eps such that every eps-list beta of alpha preserves all strict
// orderings alpha_i*gamma_j > alpha_k*gamma_l of the product list:
// min over strict pairs of (a_i g_j - a_k g_l) / (g_j + g_l).
// +infinity when there is no strictly ordered pair. Exact ties may break
// either way under perturbation and are excluded.
double epsilon_order_radius(const Spectrum& alpha, const Spectrum& gamma);

// True iff max_i |beta_i - alpha_i| < eps after zero-padding.
bool is_epsilon_list(const Spectrum& beta, const Spectrum& alpha, double eps);

}  // namespace entcat
