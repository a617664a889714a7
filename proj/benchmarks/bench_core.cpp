#include <benchmark/benchmark.h>

#include "entcat/catalysis.hpp"
#include "entcat/mixedcat.hpp"
#include "entcat/purify.hpp"
#include "entcat/qcore.hpp"
#include "entcat/transform.hpp"

namespace {

using namespace entcat;

PureState random_pure(int d, TrialRng& rng) {
  CVec amp(static_cast<Eigen::Index>(d) * d);
  for (Eigen::Index i = 0; i < amp.size(); ++i) amp(i) = rng.complex_normal();
  amp /= amp.norm();
  return PureState(d, d, std::move(amp));
}

void BM_SchmidtSpectrum(benchmark::State& state) {
  TrialRng rng(0, 0);
  const PureState psi = random_pure(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(schmidt_spectrum(psi));
}
BENCHMARK(BM_SchmidtSpectrum)->Arg(5)->Arg(16)->Arg(25);

void BM_Majorization(benchmark::State& state) {
  TrialRng rng(0, 1);
  const int n = static_cast<int>(state.range(0));
  std::vector<double> a(static_cast<std::size_t>(n)), b(a);
  double sa = 0.0, sb = 0.0;
  for (int i = 0; i < n; ++i) {
    a[static_cast<std::size_t>(i)] = rng.uniform();
    b[static_cast<std::size_t>(i)] = rng.uniform();
    sa += a[static_cast<std::size_t>(i)];
    sb += b[static_cast<std::size_t>(i)];
  }
  for (int i = 0; i < n; ++i) {
    a[static_cast<std::size_t>(i)] /= sa;
    b[static_cast<std::size_t>(i)] /= sb;
  }
  const Spectrum alpha(a), beta(b);
  for (auto _ : state) benchmark::DoNotOptimize(is_majorized(alpha, beta));
}
BENCHMARK(BM_Majorization)->Arg(8)->Arg(64)->Arg(512);

void BM_ConversionFidelity(benchmark::State& state) {
  const Spectrum alpha(std::vector<double>{0.4, 0.4, 0.1, 0.1});
  const Spectrum beta(std::vector<double>{0.5, 0.25, 0.25});
  for (auto _ : state)
    benchmark::DoNotOptimize(optimal_conversion_fidelity(alpha, beta));
}
BENCHMARK(BM_ConversionFidelity);

void BM_Lemma1Check(benchmark::State& state) {
  const RankTwoClass cls = build_class(0.5, paper_psi(), paper_phi(), paper_eta());
  for (auto _ : state) benchmark::DoNotOptimize(lemma1_check(cls.spec));
}
BENCHMARK(BM_Lemma1Check);

void BM_SeparableMap(benchmark::State& state) {
  TrialRng rng(0, 2);
  const int d = static_cast<int>(state.range(0));
  const DensityMatrix rho = to_density(random_pure(d, rng));
  const auto as = sample_local_kraus(2, d, rng);
  const auto bs = sample_local_kraus(2, d, rng);
  const std::vector<KrausPair> kraus{{as[0], bs[0]}, {as[1], bs[1]}};
  for (auto _ : state)
    benchmark::DoNotOptimize(apply_separable_map(rho, kraus, true));
}
BENCHMARK(BM_SeparableMap)->Arg(2)->Arg(4);

void BM_UhlmannFidelity(benchmark::State& state) {
  TrialRng rng(0, 3);
  const DensityMatrix a = to_density(random_pure(4, rng));
  CMat mix = 0.9 * a.matrix() + 0.1 * CMat::Identity(16, 16) / 16.0;
  const DensityMatrix b(4, 4, std::move(mix));
  for (auto _ : state) benchmark::DoNotOptimize(uhlmann_fidelity(a, b));
}
BENCHMARK(BM_UhlmannFidelity);

}  // namespace

BENCHMARK_MAIN();
