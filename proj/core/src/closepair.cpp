#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "entcat/catalysis.hpp"
#include "entcat/config.hpp"
#include "entcat/mixedcat.hpp"
#include "entcat/qcore.hpp"

namespace entcat {

namespace {

double pair_fidelity(double lambda) {
  const RankTwoClass cls =
      build_class(lambda, paper_psi(), paper_phi(), paper_eta());
  return uhlmann_fidelity(cls.sigma, cls.rho);
}

}  // namespace

CloseMixedPair close_mixed_catalysis_pair(double delta) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("close_mixed_catalysis_pair: delta outside (0,1)");
  const double target = 1.0 - delta;

  double lambda = 1.0;
  std::vector<std::pair<double, double>> trace;
  double f = pair_fidelity(lambda);
  trace.emplace_back(lambda, f);
  if (f <= target) {
    // Bisect the monotone fidelity curve down to the crossing, then step
    // inside the feasible side.
    double lo = 1e-9, hi = 1.0;
    if (pair_fidelity(lo) <= target)
      throw std::runtime_error(
          "close_mixed_catalysis_pair: delta below the lambda tolerance floor");
    for (int it = 0; it < 80 && hi - lo > 1e-6; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double fm = pair_fidelity(mid);
      trace.emplace_back(mid, fm);
      (fm > target ? lo : hi) = mid;
    }
    lambda = lo;
    f = pair_fidelity(lambda);
  }
  if (f <= target)
    throw std::runtime_error("close_mixed_catalysis_pair: bisection failed");

  // The fidelity must decrease with lambda along the visited points.
  std::sort(trace.begin(), trace.end());
  for (std::size_t i = 1; i < trace.size(); ++i)
    if (trace[i].second > trace[i - 1].second + 1e-7)
      throw std::runtime_error(
          "close_mixed_catalysis_pair: fidelity not monotone in lambda");

  RankTwoClass cls = build_class(lambda, paper_psi(), paper_phi(), paper_eta());
  if (lemma1_check(cls.spec).decision != Decision::Impossible)
    throw std::runtime_error(
        "close_mixed_catalysis_pair: LOCC impossibility witness missing");
  const ChiOperator chi = chi_of(cls.spec.psi, cls.spec.eta);
  if (elocc_with_catalyst(schmidt_spectrum(chi.normalized),
                          schmidt_spectrum(cls.spec.phi),
                          paper_omega_spectrum()).decision != Decision::Possible)
    throw std::runtime_error(
        "close_mixed_catalysis_pair: ELOCC protocol not applicable");

  return CloseMixedPair{std::move(cls.sigma), std::move(cls.rho), paper_omega(),
                        lambda, f};
}

}  // namespace entcat
