#pragma once

#include <optional>
#include <vector>

#include "entcat/spectrum.hpp"
#include "entcat/states.hpp"
#include "entcat/verdict.hpp"

namespace entcat {

// The rank-two class
//   sigma = lambda |psi><psi| + (1-lambda) |eta><eta|
//   rho   = mu     |phi><phi| + (1-mu)     |eta><eta|
// with mu = lambda tr[chi], chi = Pi |psi><psi| Pi, Pi = 1 - |eta><eta|.
// psi and phi are entangled, eta is a product state orthogonal to phi.
struct RankTwoSpec {
  double lambda;
  PureState psi;
  PureState phi;
  PureState eta;
  double mu;  // lambda * tr[chi]
};

struct ChiOperator {
  CMat matrix;   // Pi |psi><psi| Pi, unnormalized, PSD, rank <= 1
  double trace;  // 1 - |<eta|psi>|^2
  PureState normalized;  // chi / tr[chi] as a pure state
};

ChiOperator chi_of(const PureState& psi, const PureState& eta);

struct RankTwoClass {
  RankTwoSpec spec;
  DensityMatrix sigma;
  DensityMatrix rho;
};

// Validates the class hypotheses and assembles sigma and rho.
RankTwoClass build_class(double lambda, const PureState& psi,
                         const PureState& phi, const PureState& eta);

// Necessary LOCC condition: sigma -> rho under LOCC implies
// tr_A[chi]/tr[chi] ≺ tr_A[|phi><phi|]. Impossible when the condition
// fails (with the majorization witness); Unknown when it holds. Gated on
// the range of rho containing exactly one product vector.
Verdict lemma1_check(const RankTwoSpec& spec);

struct ProductVectorCount {
  int count = 0;
  std::vector<PureState> witnesses;
};

// Counts projective solutions a|u> + b|w> of Schmidt rank one in the span of
// two states, via the roots of the 2x2 minors of the matricized vector.
ProductVectorCount product_vectors_in_range(const PureState& u, const PureState& w);
ProductVectorCount product_vectors_in_range(const DensityMatrix& rho_rank2);

struct ProtocolTranscript {
  double p_convert;   // branch probability lambda * tr[chi]
  double p_keep;      // complementary branch
  std::vector<int> a_support;  // A-side Schmidt support of the converted branch
};

struct ProtocolResult {
  DensityMatrix rho_out;
  ProtocolTranscript transcript;
};

// Three-step ELOCC protocol: local A-side projective measurement onto the
// Schmidt support of chi's pure state, certified conversion of that branch
// to |phi>, then mixing the branches with the outcome record discarded.
// The conversion step substitutes the certified target (the majorization
// certificate guarantees it) instead of an explicit Kraus realization.
ProtocolResult elocc_protocol_execute(const RankTwoSpec& spec, const Spectrum& omega);

// Upper bound on F_LOCC(sigma(lambda,eps), |phi><phi|):
// (1-lambda) * best-separable fidelity + lambda * conversion fidelity of the
// eps-weighted pure component. The best-separable fidelity to a pure target
// is its largest squared Schmidt coefficient.
double f_locc_upper_bound(double lambda, double epsilon, const Spectrum& beta);

struct EloccBound {
  double value;
  const char* protocol;
};

// Achievable ELOCC fidelity: lambda*eps^2 + (1 - lambda*eps^2)/2.
EloccBound f_elocc_lower_bound(double lambda, double epsilon);

// sqrt(2 F_LOCC - 1) clamped to [0,1], evaluated on the eps=1 core spectrum.
double epsilon_threshold(const Spectrum& psi_core, const Spectrum& phi);

// Built-in states of the worked 5x5 example and its eps-deformation.
PureState paper_psi();                 // sqrt(.38)|11>+sqrt(.38)|22>+sqrt(.095)|33>+sqrt(.095)|44>+sqrt(.05)|55>
PureState paper_phi();                 // sqrt(.5)|11>+sqrt(.25)|22>+sqrt(.25)|33>
PureState paper_phitilde();            // sqrt(.4)|11>+sqrt(.4)|22>+sqrt(.1)|33>+sqrt(.1)|44>
PureState paper_eta();                 // |55>
PureState paper_psi_eps(double eps);   // eps-weighted core plus sqrt(1-eps^2)|55>
Spectrum paper_omega_spectrum();       // (0.6, 0.4)
PureState paper_omega();               // pure 2x2 catalyst with that spectrum

}  // namespace entcat
