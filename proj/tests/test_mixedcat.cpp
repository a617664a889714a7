#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "entcat/mixedcat.hpp"
#include "entcat/qcore.hpp"
#include "entcat/transform.hpp"
#include "support/oracles.hpp"

using namespace entcat;

namespace {

PureState diagonal_pure(int d, std::initializer_list<double> probs) {
  CVec amp = CVec::Zero(static_cast<Eigen::Index>(d) * d);
  int i = 0;
  for (double p : probs) {
    amp(i * d + i) = std::sqrt(p);
    ++i;
  }
  return PureState(d, d, amp);
}

}  // namespace

TEST_CASE("preset states have the advertised spectra") {
  const Spectrum psi = schmidt_spectrum(paper_psi());
  const std::vector<double> want{0.38, 0.38, 0.095, 0.095, 0.05};
  REQUIRE(psi.size() == 5);
  for (std::size_t i = 0; i < want.size(); ++i)
    CHECK(psi[i] == doctest::Approx(want[i]).epsilon(1e-12));
  CHECK(schmidt_spectrum(paper_phi())[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(schmidt_spectrum(paper_eta()).effective_rank() == 1);
  CHECK(std::norm(paper_psi_eps(1.0).overlap(paper_phitilde())) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::norm(paper_psi_eps(0.3).overlap(paper_eta())) ==
        doctest::Approx(1.0 - 0.09).epsilon(1e-12));
}

TEST_CASE("chi carries 0.95 of the state") {
  const ChiOperator chi = chi_of(paper_psi(), paper_eta());
  CHECK(chi.trace == doctest::Approx(0.95).epsilon(1e-12));
  const Spectrum s = schmidt_spectrum(chi.normalized);
  const std::vector<double> want{0.4, 0.4, 0.1, 0.1};
  for (std::size_t i = 0; i < want.size(); ++i)
    CHECK(s[i] == doctest::Approx(want[i]).epsilon(1e-12));
}

TEST_CASE("build_class wires mu to lambda tr[chi]") {
  for (double lambda : {0.01, 0.1, 0.5, 0.99}) {
    const RankTwoClass cls = build_class(lambda, paper_psi(), paper_phi(), paper_eta());
    CHECK(cls.spec.mu == doctest::Approx(0.95 * lambda).epsilon(1e-12));
    CHECK(std::abs(cls.sigma.matrix().trace().real() - 1.0) <= 1e-10);
    CHECK(std::abs(cls.rho.matrix().trace().real() - 1.0) <= 1e-10);
  }
}

TEST_CASE("build_class rejects broken hypotheses") {
  // eta entangled: not a product state.
  CVec bell = CVec::Zero(25);
  bell(0) = bell(6) = 1.0 / std::sqrt(2.0);
  CHECK_THROWS(build_class(0.5, paper_psi(), paper_phi(), PureState(5, 5, bell)));
  // phi must be entangled.
  CHECK_THROWS(build_class(0.5, paper_psi(), paper_eta(), paper_eta()));
  // phi not orthogonal to eta.
  CHECK_THROWS(build_class(0.5, paper_psi(), paper_psi(), paper_eta()));
  // lambda outside (0, 1].
  CHECK_THROWS(build_class(0.0, paper_psi(), paper_phi(), paper_eta()));
}

TEST_CASE("lemma1 verdict is independent of lambda") {
  for (double lambda : {0.01, 0.1, 0.5, 0.99}) {
    const RankTwoClass cls = build_class(lambda, paper_psi(), paper_phi(), paper_eta());
    const Verdict v = lemma1_check(cls.spec);
    CHECK(v.decision == Decision::Impossible);
    CHECK(v.certificate.at("violating_k") == 2);
  }
}

TEST_CASE("lemma1 goes unknown when the condition holds") {
  // Target below the chi spectrum in majorization order: no witness.
  const PureState weak_phi = diagonal_pure(5, {0.4, 0.4, 0.1, 0.1});
  CVec eta_amp = CVec::Zero(25);
  eta_amp(24) = 1.0;
  const RankTwoClass cls =
      build_class(0.5, paper_psi(), weak_phi, PureState(5, 5, eta_amp));
  CHECK(lemma1_check(cls.spec).decision == Decision::Unknown);
}

TEST_CASE("product vectors in a span") {
  const PureState e11 = diagonal_pure(5, {1.0});
  CVec e22 = CVec::Zero(25);
  e22(6) = 1.0;
  // span{|11>, |22>}: exactly the two basis points are product states.
  CHECK(product_vectors_in_range(e11, PureState(5, 5, e22)).count == 2);
  // span{phi, |55>}: only |55> survives.
  CHECK(product_vectors_in_range(paper_phi(), paper_eta()).count == 1);
  // Degenerate span of two parallel vectors is rejected.
  CHECK_THROWS(product_vectors_in_range(e11, e11));
}

TEST_CASE("product vector count gates on the density matrix overload") {
  const RankTwoClass cls = build_class(0.5, paper_psi(), paper_phi(), paper_eta());
  const ProductVectorCount c = product_vectors_in_range(cls.rho);
  CHECK(c.count == 1);
  REQUIRE(c.witnesses.size() == 1);
  CHECK(std::norm(c.witnesses[0].overlap(paper_eta())) ==
        doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("protocol reproduces rho with the advertised branch probabilities") {
  const RankTwoClass cls = build_class(0.5, paper_psi(), paper_phi(), paper_eta());
  const ProtocolResult r = elocc_protocol_execute(cls.spec, paper_omega_spectrum());
  CHECK(r.transcript.p_convert == doctest::Approx(0.475).epsilon(1e-12));
  CHECK(r.transcript.p_keep == doctest::Approx(0.525).epsilon(1e-12));
  CHECK(trace_distance(r.rho_out, cls.rho) <= 1e-10);
  // Measured branch probability over lambda recovers tr[chi].
  CHECK(r.transcript.p_convert / 0.5 == doctest::Approx(0.95).epsilon(1e-10));
}

TEST_CASE("protocol needs the catalyst for the worked class") {
  const RankTwoClass cls = build_class(0.5, paper_psi(), paper_phi(), paper_eta());
  CHECK_THROWS(elocc_protocol_execute(cls.spec, Spectrum(std::vector<double>{1.0})));
}

TEST_CASE("pure endpoint of the class") {
  // lambda = 1 with psi orthogonal to eta: the protocol is a pure-to-pure
  // conversion and the keep branch vanishes.
  const PureState psi = diagonal_pure(5, {0.4, 0.4, 0.1, 0.1});
  const RankTwoClass cls = build_class(1.0, psi, paper_phi(), paper_eta());
  const ProtocolResult r = elocc_protocol_execute(cls.spec, paper_omega_spectrum());
  CHECK(r.transcript.p_convert == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(trace_distance(r.rho_out, to_density(paper_phi())) <= 1e-10);
}

TEST_CASE("fidelity bound formulas") {
  const Spectrum beta = schmidt_spectrum(paper_phi());
  // Separable term: the eta-weighted part reaches at most the top Schmidt
  // square of the target.
  CHECK(f_locc_upper_bound(0.0, 1.0, beta) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(f_elocc_lower_bound(0.5, 1.0).value == doctest::Approx(0.75).epsilon(1e-12));
  // eps = 0 has no entangled branch and is rejected; the limit is 1/2.
  CHECK_THROWS(f_elocc_lower_bound(0.3, 0.0));
  CHECK(f_elocc_lower_bound(0.3, 1e-8).value == doctest::Approx(0.5).epsilon(1e-12));
  const double eps = epsilon_threshold(schmidt_spectrum(paper_phitilde()), beta);
  CHECK(eps > 0.0);
  CHECK(eps < 1.0);
  // Separation at the pure endpoint for every lambda.
  for (int l = 1; l <= 9; ++l) {
    const double lambda = 0.1 * l;
    CHECK(f_elocc_lower_bound(lambda, 1.0).value >
          f_locc_upper_bound(lambda, 1.0, beta));
  }
}
