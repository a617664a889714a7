#pragma once

#include <utility>
#include <vector>

#include "entcat/states.hpp"

namespace entcat {

// Uhlmann fidelity F(sigma,rho) = (tr[(sqrt(sigma) rho sqrt(sigma))^{1/2}])^2.
// Symmetric in its arguments within tolerance; 1 iff the states coincide.
double uhlmann_fidelity(const DensityMatrix& sigma, const DensityMatrix& rho);

// (1/2) sum |eigenvalues of sigma - rho|.
double trace_distance(const DensityMatrix& sigma, const DensityMatrix& rho);

struct MapResult {
  CMat matrix;         // image of the map; normalized iff requested
  int dim_a = 0;
  int dim_b = 0;
  double probability = 0.0;  // trace of the unnormalized image

  DensityMatrix state() const { return DensityMatrix(dim_a, dim_b, matrix); }
};

// Checks sum_i A_i^dag A_i <= 1 and sum_i B_i^dag B_i <= 1 within tolerance
// (operator inequality via eigenvalues).
void validate_kraus_set(const std::vector<KrausPair>& kraus, int dim_a, int dim_b);

// sigma -> sum_i (A_i (x) B_i) sigma (A_i (x) B_i)^dag, optionally divided by
// its trace. Summation order over Kraus terms is fixed. Throws on a
// degenerate branch (probability below threshold) when normalizing.
MapResult apply_separable_map(const DensityMatrix& state,
                              const std::vector<KrausPair>& kraus,
                              bool normalize);

}  // namespace entcat
