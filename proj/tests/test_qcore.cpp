#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "entcat/purify.hpp"
#include "entcat/qcore.hpp"
#include "entcat/states.hpp"
#include "support/oracles.hpp"

using namespace entcat;
using testsupport::random_pure;

namespace {

CMat random_unitary(int d, TrialRng& rng) {
  CMat g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<CMat> qr(g);
  return qr.householderQ() * CMat::Identity(d, d);
}

DensityMatrix random_mixed(int da, int db, TrialRng& rng) {
  const int d = da * db;
  CMat g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = rng.complex_normal();
  CMat m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix(da, db, std::move(m));
}

}  // namespace

TEST_CASE("state constructors validate their input") {
  CVec bad(4);
  bad << 1.0, 1.0, 0.0, 0.0;
  CHECK_THROWS(PureState(2, 2, bad));
  CMat nonherm = CMat::Zero(4, 4);
  nonherm(0, 1) = 1.0;
  nonherm(0, 0) = 1.0;
  CHECK_THROWS(DensityMatrix(2, 2, nonherm));
  CMat negative = CMat::Identity(4, 4) / 2.0;
  negative(3, 3) = -0.5;
  CHECK_THROWS(DensityMatrix(2, 2, negative));
}

TEST_CASE("kron follows the row-major index convention") {
  CMat a(2, 2), b(2, 2);
  a << 1.0, 2.0, 3.0, 4.0;
  b << 5.0, 6.0, 7.0, 8.0;
  const CMat k = kron(a, b);
  CHECK(k(0, 0) == cxd(5.0));
  CHECK(k(0, 2) == cxd(10.0));
  CHECK(k(3, 1) == cxd(24.0));
  CHECK(k(2, 2) == cxd(20.0));
}

TEST_CASE("partial trace matches the four-index sum") {
  TrialRng rng(31, 0);
  for (int t = 0; t < 50; ++t) {
    const int da = 2 + static_cast<int>(rng.next_u64() % 3);
    const int db = 2 + static_cast<int>(rng.next_u64() % 3);
    const DensityMatrix rho = random_mixed(da, db, rng);
    const CMat fast = partial_trace_B(rho);
    const CMat slow = testsupport::naive_partial_trace_B(rho);
    CHECK(max_abs(fast - slow) <= 1e-12);
    CHECK(std::abs(fast.trace().real() - 1.0) <= 1e-10);
    CHECK(std::abs(partial_trace_A(rho).trace().real() - 1.0) <= 1e-10);
  }
}

TEST_CASE("tensor product marginals factor") {
  TrialRng rng(32, 0);
  const DensityMatrix x = random_mixed(2, 2, rng);
  const DensityMatrix y = random_mixed(2, 2, rng);
  const DensityMatrix xy = tensor_product(x, y);
  CHECK(xy.dimA() == 4);
  CHECK(xy.dimB() == 4);
  const DensityMatrix back = trace_out_ancilla(xy, 2, 2);
  CHECK(max_abs(back.matrix() - x.matrix()) <= 1e-12);
  const CMat ma = partial_trace_B(xy);
  const CMat want = kron(partial_trace_B(x), partial_trace_B(y));
  CHECK(max_abs(ma - want) <= 1e-12);
}

TEST_CASE("schmidt spectrum agrees with the reduced-matrix path") {
  TrialRng rng(33, 0);
  for (int t = 0; t < 100; ++t) {
    const int da = 2 + static_cast<int>(rng.next_u64() % 4);
    const int db = 2 + static_cast<int>(rng.next_u64() % 4);
    const PureState psi = random_pure(da, db, rng);
    const Spectrum svd = schmidt_spectrum(psi);
    const Spectrum eig = testsupport::schmidt_via_marginal(psi);
    const auto a = svd.padded(std::max(svd.size(), eig.size()));
    const auto b = eig.padded(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      CHECK(std::abs(a[i] - b[i]) <= 1e-10);
  }
}

TEST_CASE("hermitian_eig rejects non-Hermitian input and sorts descending") {
  CMat m = CMat::Zero(3, 3);
  m(0, 0) = 0.1;
  m(1, 1) = 0.7;
  m(2, 2) = 0.2;
  const HermitianEig e = hermitian_eig(m);
  CHECK(e.eigenvalues(0) == doctest::Approx(0.7));
  CHECK(e.eigenvalues(2) == doctest::Approx(0.1));
  m(0, 1) = 1.0;
  CHECK_THROWS(hermitian_eig(m));
}

TEST_CASE("sqrtm squares back") {
  TrialRng rng(34, 0);
  const DensityMatrix rho = random_mixed(2, 2, rng);
  const CMat r = sqrtm_psd(rho.matrix());
  CHECK(max_abs(r * r - rho.matrix()) <= 1e-10);
  CHECK_THROWS(sqrtm_psd(-CMat::Identity(2, 2)));
}

TEST_CASE("fidelity basics") {
  TrialRng rng(35, 0);
  const DensityMatrix a = random_mixed(2, 2, rng);
  const DensityMatrix b = random_mixed(2, 2, rng);
  CHECK(uhlmann_fidelity(a, a) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(uhlmann_fidelity(a, b) == doctest::Approx(uhlmann_fidelity(b, a)).epsilon(1e-9));
  const double f = uhlmann_fidelity(a, b);
  CHECK(f >= 0.0);
  CHECK(f <= 1.0 + 1e-12);
  // Pure-pure case reduces to the squared overlap.
  const PureState x = random_pure(2, 2, rng);
  const PureState y = random_pure(2, 2, rng);
  CHECK(uhlmann_fidelity(to_density(x), to_density(y)) ==
        doctest::Approx(std::norm(x.overlap(y))).epsilon(1e-7));
}

TEST_CASE("fidelity is invariant under local unitaries") {
  TrialRng rng(36, 0);
  const DensityMatrix a = random_mixed(2, 3, rng);
  const DensityMatrix b = random_mixed(2, 3, rng);
  const CMat u = random_unitary(2, rng);
  const CMat v = random_unitary(3, rng);
  const CMat w = kron(u, v);
  const DensityMatrix ra(2, 3, w * a.matrix() * w.adjoint());
  const DensityMatrix rb(2, 3, w * b.matrix() * w.adjoint());
  CHECK(uhlmann_fidelity(ra, rb) ==
        doctest::Approx(uhlmann_fidelity(a, b)).epsilon(1e-9));
  CHECK(trace_distance(ra, rb) ==
        doctest::Approx(trace_distance(a, b)).epsilon(1e-9));
}

TEST_CASE("local unitary pairs are trace preserving and contractive") {
  TrialRng rng(37, 0);
  for (int t = 0; t < 20; ++t) {
    const int d = 2 + static_cast<int>(rng.next_u64() % 2);
    const DensityMatrix a = random_mixed(d, d, rng);
    const DensityMatrix b = random_mixed(d, d, rng);
    const std::vector<KrausPair> kraus{
        {random_unitary(d, rng), random_unitary(d, rng)}};
    validate_kraus_set(kraus, d, d);
    const MapResult ra = apply_separable_map(a, kraus, true);
    const MapResult rb = apply_separable_map(b, kraus, true);
    CHECK(ra.probability == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(trace_distance(ra.state(), rb.state()) ==
          doctest::Approx(trace_distance(a, b)).epsilon(1e-9));
    CHECK(uhlmann_fidelity(ra.state(), rb.state()) ==
          doctest::Approx(uhlmann_fidelity(a, b)).epsilon(1e-7));
  }
}

TEST_CASE("paired local sets are trace nonincreasing with valid branches") {
  TrialRng rng(38, 0);
  for (int t = 0; t < 20; ++t) {
    const int d = 2 + static_cast<int>(rng.next_u64() % 2);
    const DensityMatrix rho = random_mixed(d, d, rng);
    const int n = 2 + static_cast<int>(rng.next_u64() % 3);
    const auto as = sample_local_kraus(n, d, rng);
    const auto bs = sample_local_kraus(n, d, rng);
    std::vector<KrausPair> kraus;
    for (int i = 0; i < n; ++i)
      kraus.push_back({as[static_cast<std::size_t>(i)], bs[static_cast<std::size_t>(i)]});
    validate_kraus_set(kraus, d, d);
    const MapResult r = apply_separable_map(rho, kraus, false);
    CHECK(r.probability <= 1.0 + 1e-10);
    CHECK(r.probability > 0.0);
    // Every individual branch renormalizes to a valid state.
    for (const auto& k : kraus) {
      const MapResult branch = apply_separable_map(rho, {k}, true);
      CHECK(std::abs(branch.state().matrix().trace().real() - 1.0) <= 1e-10);
    }
  }
}

TEST_CASE("kraus validation rejects oversized sets") {
  std::vector<KrausPair> bad{{2.0 * CMat::Identity(2, 2), CMat::Identity(2, 2)}};
  CHECK_THROWS(validate_kraus_set(bad, 2, 2));
}
