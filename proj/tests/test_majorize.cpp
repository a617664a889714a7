#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "entcat/purify.hpp"
#include "entcat/spectrum.hpp"
#include "entcat/states.hpp"
#include "support/oracles.hpp"

using namespace entcat;
using testsupport::random_spectrum;

namespace {
Spectrum spec(std::initializer_list<double> v) {
  return Spectrum(std::vector<double>(v));
}
}  // namespace

TEST_CASE("spectrum normalizes its input") {
  const Spectrum s(std::vector<double>{0.1, 0.5, 0.4});
  CHECK(s[0] == doctest::Approx(0.5));
  CHECK(s[2] == doctest::Approx(0.1));
  CHECK_THROWS(Spectrum(std::vector<double>{0.5, 0.4}));
  CHECK_THROWS(Spectrum(std::vector<double>{1.5, -0.5}));
  CHECK(s.padded(5).size() == 5);
  CHECK(s.padded(5)[4] == 0.0);
}

TEST_CASE("worked majorization pair with witnesses") {
  const Spectrum a = spec({0.4, 0.4, 0.1, 0.1});
  const Spectrum b = spec({0.5, 0.25, 0.25, 0.0});
  const MajorizationResult fwd = is_majorized(a, b);
  CHECK_FALSE(fwd.holds);
  CHECK(fwd.violating_k == 2);
  CHECK(fwd.lhs == doctest::Approx(0.80).epsilon(1e-10));
  CHECK(fwd.rhs == doctest::Approx(0.75).epsilon(1e-10));
  const MajorizationResult rev = is_majorized(b, a);
  CHECK_FALSE(rev.holds);
  CHECK(rev.prefix_alpha[2] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rev.prefix_beta[2] == doctest::Approx(0.9).epsilon(1e-10));
}

TEST_CASE("majorization order properties") {
  TrialRng rng(21, 0);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng.next_u64() % 6;
    const Spectrum s = random_spectrum(n, rng);
    const Spectrum uniform(std::vector<double>(n, 1.0 / static_cast<double>(n)));
    std::vector<double> top(n, 0.0);
    top[0] = 1.0;
    CHECK(is_majorized(uniform, s).holds);
    CHECK(is_majorized(s, Spectrum(top)).holds);
    CHECK(is_majorized(s, s).holds);
  }
}

TEST_CASE("majorization is transitive") {
  TrialRng rng(22, 0);
  int seen = 0;
  for (int t = 0; t < 2000 && seen < 50; ++t) {
    const Spectrum a = random_spectrum(4, rng);
    const Spectrum b = random_spectrum(4, rng);
    const Spectrum c = random_spectrum(4, rng);
    if (is_majorized(a, b).holds && is_majorized(b, c).holds) {
      CHECK(is_majorized(a, c).holds);
      ++seen;
    }
  }
  CHECK(seen > 0);
}

TEST_CASE("exact dyadic oracle agreement") {
  TrialRng rng(23, 0);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t n = 2 + rng.next_u64() % 6;
    const auto da = testsupport::random_dyadic(n, rng);
    const auto db = testsupport::random_dyadic(n, rng);
    const bool oracle = testsupport::dyadic_majorized(da, db);
    const bool fast = is_majorized(da.to_spectrum(), db.to_spectrum()).holds;
    CHECK(oracle == fast);
  }
}

TEST_CASE("product spectrum matches the tensor-product state") {
  TrialRng rng(24, 0);
  for (int t = 0; t < 50; ++t) {
    const int d1 = 2 + static_cast<int>(rng.next_u64() % 3);
    const int d2 = 2 + static_cast<int>(rng.next_u64() % 3);
    const PureState x = testsupport::random_pure(d1, d1, rng);
    const PureState y = testsupport::random_pure(d2, d2, rng);
    const Spectrum direct = schmidt_spectrum(tensor_product(x, y));
    const Spectrum product = product_spectrum(schmidt_spectrum(x), schmidt_spectrum(y));
    REQUIRE(direct.size() >= product.size());
    const auto dv = direct.padded(direct.size());
    const auto pv = product.padded(direct.size());
    for (std::size_t i = 0; i < dv.size(); ++i)
      CHECK(dv[i] == doctest::Approx(pv[i]).epsilon(1e-10));
  }
}

TEST_CASE("worked product-spectrum value") {
  const Spectrum p = product_spectrum(spec({0.4, 0.4, 0.1, 0.1}), spec({0.6, 0.4}));
  const std::vector<double> want{0.24, 0.24, 0.16, 0.16, 0.06, 0.06, 0.04, 0.04};
  REQUIRE(p.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i)
    CHECK(p[i] == doctest::Approx(want[i]).epsilon(1e-12));
}

TEST_CASE("epsilon order radius of the worked pair") {
  const Spectrum alpha = spec({0.4, 0.4, 0.1, 0.1});
  const Spectrum gamma = spec({0.6, 0.4});
  const double radius = epsilon_order_radius(alpha, gamma);
  CHECK(radius == doctest::Approx(0.02).epsilon(1e-12));
  CHECK(epsilon_order_radius(spec({0.5, 0.5}), gamma) ==
        doctest::Approx(0.1).epsilon(1e-12));
}

namespace {

// True when some strict product ordering a_i g_j > a_k g_l reverses for b.
bool any_order_flip(const Spectrum& alpha, const Spectrum& beta,
                    const Spectrum& gamma) {
  const auto& av = alpha.values();
  const auto bv = beta.padded(av.size());
  const auto& gv = gamma.values();
  for (std::size_t i = 0; i < av.size(); ++i)
    for (std::size_t j = 0; j < gv.size(); ++j)
      for (std::size_t k = 0; k < av.size(); ++k)
        for (std::size_t l = 0; l < gv.size(); ++l)
          if (av[i] * gv[j] > av[k] * gv[l] + 1e-9 &&
              bv[i] * gv[j] < bv[k] * gv[l])
            return true;
  return false;
}

}  // namespace

TEST_CASE("epsilon order radius perturbation scan") {
  const Spectrum alpha = spec({0.4, 0.4, 0.1, 0.1});
  const Spectrum gamma = spec({0.6, 0.4});
  const double radius = epsilon_order_radius(alpha, gamma);

  // No eps-list strictly inside the radius flips a strict product ordering.
  TrialRng rng(25, 0);
  const double inside = radius * 0.999;
  int accepted = 0;
  for (int t = 0; t < 10000; ++t) {
    std::vector<double> b = alpha.values();
    double shift = 0.0;
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
      const double d = (2.0 * rng.uniform() - 1.0) * inside * 0.99;
      b[i] += d;
      shift += d;
    }
    b.back() -= shift;
    if (std::abs(shift) >= inside) continue;
    const Spectrum beta(b);
    if (!is_epsilon_list(beta, alpha, inside)) continue;
    ++accepted;
    CHECK_FALSE(any_order_flip(alpha, beta, gamma));
  }
  CHECK(accepted > 1000);

  // Just outside, the binding pair (0.1*0.6 vs 0.1*0.4) can be made to swap
  // by moving mass between the two smallest entries.
  const double d = radius * 1.009;
  std::vector<double> b = alpha.values();
  b[2] -= d;
  b[3] += d;
  const Spectrum beta(b);
  CHECK(is_epsilon_list(beta, alpha, radius * 1.01));
  CHECK_FALSE(is_epsilon_list(beta, alpha, radius));
  CHECK(any_order_flip(alpha, beta, gamma));
}

TEST_CASE("is_epsilon_list thresholds") {
  const Spectrum a = spec({0.6, 0.4});
  CHECK(is_epsilon_list(spec({0.65, 0.35}), a, 0.051));
  CHECK_FALSE(is_epsilon_list(spec({0.65, 0.35}), a, 0.05));
  CHECK(is_epsilon_list(a, a, 1e-15));
}
