#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "entcat/qcore.hpp"
#include "entcat/states.hpp"

namespace entcat {

enum class Separability { Separable, Entangled, Inconclusive };

const char* to_string(Separability s);

// Partial transpose on the B factor; Hermitian but possibly non-PSD.
CMat partial_transpose_B(const DensityMatrix& rho);

// PPT certifier: a negative partial-transpose eigenvalue certifies
// entanglement; PPT certifies separability only in 2x2 and 2x3.
Separability ppt_separability(const DensityMatrix& rho);

struct Lambda0Result {
  double lambda0 = 0.0;
  bool exact = true;  // false when the certifier went Inconclusive (bound only)
};

// Separability boundary of lambda |psi><psi| + (1-lambda) zeta, located by
// bisection of the PPT certifier to 1e-8. Requires <psi|zeta|psi> = 0.
Lambda0Result lambda0_bisect(const PureState& psi, const DensityMatrix& zeta);

// sigma = lambda |psi><psi| + (1-lambda) zeta with <psi|zeta|psi> = 0 and a
// separability boundary lambda0 along the segment.
struct KentClassState {
  double lambda;
  PureState psi;
  DensityMatrix zeta;
  double lambda0;
  bool lambda0_exact;

  DensityMatrix sigma() const;
  DensityMatrix sigma_at(double lam) const;
};

KentClassState make_kent_state(double lambda, const PureState& psi,
                               const DensityMatrix& zeta);

// Counter-based deterministic stream: the trial-t stream depends only on
// (seed, t), so parallel and serial runs see identical draws.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial);
  std::uint64_t next_u64();
  double uniform();   // [0, 1)
  double normal();    // standard Gaussian
  cxd complex_normal();

 private:
  std::uint64_t state_;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

// Random separable Kraus sets: complex Gaussian blocks completed to an
// isometry by QR, so sum_i A_i^dag A_i = 1 exactly (sub-normalization holds
// with top eigenvalue one).
std::vector<CMat> sample_local_kraus(int count, int dim, TrialRng& rng);

struct AttackTrial {
  int trial = 0;
  int branch_count = 0;
  double prob = 0.0;          // branch probability (1 for the mixture entry)
  double fidelity_out = 0.0;  // <psi|rho_out|psi>, catalyst traced out
  bool catalytic = true;      // output returned the catalyst (always true
                              // without one)
};

struct AttackReport {
  double input_fidelity = 0.0;
  double max_fidelity = -1.0;       // over catalytic trials (the tested bound)
  double max_fidelity_any = -1.0;   // over all trials, including ones that
                                    // disturb the catalyst
  int degenerate_skipped = 0;
  std::vector<AttackTrial> transcript;
};

// Randomized falsification harness for the purification-monotonicity claim:
// separable maps (optionally acting on sigma (x) omega) must not raise the
// psi-fidelity. A trial that alters or entangles the catalyst is not an
// entanglement-assisted transformation, so such trials are logged but
// excluded from the tested bound; a catalytic trial that exceeds the input
// fidelity is a build-failing counterexample. Trial 0 is the identity map.
AttackReport random_separable_attack(
    const KentClassState& state, const std::optional<DensityMatrix>& omega,
    int trials, std::uint64_t seed,
    const std::function<void(const DensityMatrix&)>& on_catalytic_output = {});

struct CurveReport {
  std::vector<double> lambdas;
  std::vector<double> fidelity;      // F(lambda)
  std::vector<double> second_diffs;  // second divided differences of F
  bool sign_constant = true;
  int sign = 0;  // -1, 0, +1 after zeroing magnitudes below 1e-9
};

// F(lambda) for a fixed Kraus set: branch numerators over the total trace,
// evaluated on the grid; reports whether the second differences have a
// constant sign.
CurveReport fidelity_lambda_curve(const std::vector<KrausPair>& kraus,
                                  const PureState& psi, const DensityMatrix& zeta,
                                  const std::optional<DensityMatrix>& omega,
                                  const std::vector<double>& lambda_grid);

}  // namespace entcat
