#pragma once

#include <cstdint>

#include "entcat/spectrum.hpp"
#include "entcat/states.hpp"
#include "entcat/verdict.hpp"

namespace entcat {

struct CatalystSearchConfig {
  int max_dim = 2;       // largest catalyst Schmidt rank tried
  int grid_steps = 40;   // grid resolution per free simplex coordinate
  int refine_iters = 40; // bisection steps towards the feasibility boundary
  std::uint64_t seed = 0;
};

// ELOCC with a given catalyst spectrum: Possible iff
// product_spectrum(alpha, omega) ≺ product_spectrum(beta, omega).
Verdict elocc_with_catalyst(const Spectrum& alpha, const Spectrum& beta,
                            const Spectrum& omega);
Verdict elocc_with_catalyst(const PureState& psi, const PureState& phi,
                            const Spectrum& omega);

// Grid search over ordered catalyst spectra of increasing dimension.
// Possible with a certificate catalyst, or Unknown with the exhausted
// budget; never Impossible (the search is incomplete by design). For
// dimension two the feasible intervals of the catalyst weight are computed
// exactly (each prefix-sum condition is piecewise linear in the weight).
Verdict catalyst_search(const Spectrum& alpha, const Spectrum& beta,
                        const CatalystSearchConfig& cfg);

// Lemma-2 style radius: delta = min(epsilon_order_radius(alpha,gamma)^2, 1).
// Any pure phi with |<psi|phi>|^2 > 1-delta has a marginal spectrum that is
// an epsilon-list of alpha, so an impossible conversion stays impossible
// with the gamma catalyst.
double catalysis_free_radius(const Spectrum& alpha, const Spectrum& gamma);

struct CloseMixedPair {
  DensityMatrix sigma;
  DensityMatrix rho;
  PureState omega;   // catalyst enabling sigma -> rho
  double lambda;
  double fidelity;   // Uhlmann fidelity of the returned pair
};

// Rank-two pair with Uhlmann fidelity above 1-delta that is LOCC-impossible
// (Lemma-1 witness) yet ELOCC-possible with the returned catalyst. lambda is
// located by bisection on the fidelity curve.
CloseMixedPair close_mixed_catalysis_pair(double delta);

}  // namespace entcat
