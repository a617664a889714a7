#pragma once

#include "entcat/spectrum.hpp"
#include "entcat/states.hpp"
#include "entcat/verdict.hpp"

namespace entcat {

// Nielsen criterion: psi -> phi under LOCC iff the Schmidt spectrum of psi
// is majorized by that of phi. Certificate carries the prefix-sum table or
// the violating index.
Verdict locc_pure(const Spectrum& alpha, const Spectrum& beta, double tolerance);
Verdict locc_pure(const Spectrum& alpha, const Spectrum& beta);
Verdict locc_pure(const PureState& psi, const PureState& phi);

// Neither direction convertible under LOCC.
bool incommensurate(const PureState& psi, const PureState& phi);
bool incommensurate(const Spectrum& alpha, const Spectrum& beta);

struct ConversionFidelity {
  double value = 0.0;          // best (sum_i sqrt(mu_i beta_i))^2 found
  Spectrum optimal_target;     // maximizing reachable spectrum mu
  bool converged = true;
};

// Optimal deterministic conversion fidelity: maximum of
// (sum_i sqrt(mu_i beta_i))^2 over reachable target spectra {mu : alpha ≺ mu},
// assuming aligned Schmidt bases for the final overlap. Projected ascent on
// the majorization polytope with deterministic restarts; exact 1 when
// alpha ≺ beta already holds.
ConversionFidelity optimal_conversion_fidelity(const Spectrum& alpha,
                                               const Spectrum& beta);

}  // namespace entcat
