#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "entcat/catalysis.hpp"
#include "entcat/mixedcat.hpp"
#include "entcat/purify.hpp"
#include "entcat/qcore.hpp"
#include "entcat/transform.hpp"
#include "support/oracles.hpp"

using namespace entcat;

namespace {
Spectrum spec(std::initializer_list<double> v) {
  return Spectrum(std::vector<double>(v));
}
}  // namespace

TEST_CASE("the worked catalyst enables the blocked conversion") {
  const Spectrum alpha = spec({0.4, 0.4, 0.1, 0.1});
  const Spectrum beta = spec({0.5, 0.25, 0.25});
  const Spectrum omega = spec({0.6, 0.4});
  CHECK(locc_pure(alpha, beta).decision == Decision::Impossible);
  const Verdict v = elocc_with_catalyst(alpha, beta, omega);
  CHECK(v.decision == Decision::Possible);
  const auto pa = v.certificate.at("prefix_alpha").get<std::vector<double>>();
  const auto pb = v.certificate.at("prefix_beta").get<std::vector<double>>();
  const std::vector<double> want_a{0.24, 0.48, 0.64, 0.80, 0.86, 0.92, 0.96, 1.0};
  const std::vector<double> want_b{0.30, 0.50, 0.65, 0.80, 0.90, 1.0, 1.0, 1.0};
  REQUIRE(pa.size() == want_a.size());
  for (std::size_t i = 0; i < want_a.size(); ++i) {
    CHECK(pa[i] == doctest::Approx(want_a[i]).epsilon(1e-12));
    CHECK(pb[i] == doctest::Approx(want_b[i]).epsilon(1e-12));
  }
}

TEST_CASE("a catalyst never unlocks an already-possible conversion backwards") {
  TrialRng rng(51, 0);
  for (int t = 0; t < 200; ++t) {
    const Spectrum a = testsupport::random_spectrum(4, rng);
    const Spectrum b = testsupport::random_spectrum(4, rng);
    const Spectrum w = testsupport::random_spectrum(2, rng);
    if (is_majorized(a, b).holds)
      CHECK(elocc_with_catalyst(a, b, w).decision == Decision::Possible);
  }
}

TEST_CASE("catalyst search returns the trivial catalyst when none is needed") {
  CatalystSearchConfig cfg;
  const Verdict v = catalyst_search(spec({0.5, 0.5}), spec({0.8, 0.2}), cfg);
  CHECK(v.decision == Decision::Possible);
  CHECK(v.certificate.at("method") == "trivial");
}

TEST_CASE("dim-2 exact scan finds the feasible interval around 0.6") {
  CatalystSearchConfig cfg;
  const Verdict v =
      catalyst_search(spec({0.4, 0.4, 0.1, 0.1}), spec({0.5, 0.25, 0.25}), cfg);
  REQUIRE(v.decision == Decision::Possible);
  CHECK(v.certificate.at("method") == "exact-scan");
  const auto catalyst = v.certificate.at("catalyst").get<std::vector<double>>();
  REQUIRE(catalyst.size() == 2);
  CHECK(elocc_with_catalyst(spec({0.4, 0.4, 0.1, 0.1}), spec({0.5, 0.25, 0.25}),
                            Spectrum(catalyst)).decision == Decision::Possible);
  bool contains_paper_catalyst = false;
  for (const auto& iv : v.certificate.at("feasible_intervals")) {
    const double lo = iv[0].get<double>(), hi = iv[1].get<double>();
    CHECK(lo <= hi);
    if (lo - 1e-9 <= 0.6 && 0.6 <= hi + 1e-9) contains_paper_catalyst = true;
  }
  CHECK(contains_paper_catalyst);
}

TEST_CASE("search reports unknown when the budget is exhausted") {
  // Reversed direction: no catalyst of any size can invert majorization, so
  // the incomplete search must come back Unknown with its budget.
  CatalystSearchConfig cfg;
  cfg.max_dim = 2;
  const Verdict v =
      catalyst_search(spec({0.5, 0.25, 0.25}), spec({0.4, 0.4, 0.1, 0.1}), cfg);
  CHECK(v.decision == Decision::Unknown);
  CHECK(v.certificate.contains("budget"));
}

TEST_CASE("search verdicts are deterministic") {
  CatalystSearchConfig cfg;
  cfg.max_dim = 3;
  const Spectrum a = spec({0.4, 0.4, 0.1, 0.1});
  const Spectrum b = spec({0.5, 0.25, 0.25});
  const Verdict v1 = catalyst_search(a, b, cfg);
  const Verdict v2 = catalyst_search(a, b, cfg);
  CHECK(v1.decision == v2.decision);
  CHECK(v1.certificate == v2.certificate);
}

TEST_CASE("catalysis-free radius of the worked pairs") {
  CHECK(catalysis_free_radius(spec({0.4, 0.4, 0.1, 0.1}), spec({0.6, 0.4})) ==
        doctest::Approx(4e-4).epsilon(1e-12));
  CHECK(catalysis_free_radius(spec({0.5, 0.5}), spec({0.6, 0.4})) ==
        doctest::Approx(0.01).epsilon(1e-12));
}

TEST_CASE("close pair splits LOCC from ELOCC at every requested closeness") {
  for (double delta : {0.5, 0.1}) {
    const CloseMixedPair pair = close_mixed_catalysis_pair(delta);
    CHECK(pair.fidelity > 1.0 - delta);
    CHECK(uhlmann_fidelity(pair.sigma, pair.rho) ==
          doctest::Approx(pair.fidelity).epsilon(1e-9));
    CHECK(schmidt_spectrum(pair.omega)[0] == doctest::Approx(0.6).epsilon(1e-12));
  }
  CHECK_THROWS(close_mixed_catalysis_pair(0.0));
  CHECK_THROWS(close_mixed_catalysis_pair(1.0));
}
