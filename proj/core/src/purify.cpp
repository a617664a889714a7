#include "entcat/purify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include <Eigen/QR>

#include "entcat/config.hpp"

namespace entcat {

const char* to_string(Separability s) {
  switch (s) {
    case Separability::Separable: return "Separable";
    case Separability::Entangled: return "Entangled";
    default: return "Inconclusive";
  }
}

CMat partial_transpose_B(const DensityMatrix& rho) {
  const int da = rho.dimA(), db = rho.dimB();
  CMat out(rho.dim(), rho.dim());
  for (int i = 0; i < da; ++i)
    for (int ip = 0; ip < da; ++ip)
      for (int j = 0; j < db; ++j)
        for (int jp = 0; jp < db; ++jp)
          out(i * db + j, ip * db + jp) = rho.matrix()(i * db + jp, ip * db + j);
  return out;
}

Separability ppt_separability(const DensityMatrix& rho) {
  HermitianEig eig = hermitian_eig(partial_transpose_B(rho));
  if (eig.eigenvalues.minCoeff() < -1e-10) return Separability::Entangled;
  const int da = rho.dimA(), db = rho.dimB();
  const int lo = std::min(da, db), hi = std::max(da, db);
  if (lo == 2 && hi <= 3) return Separability::Separable;
  return Separability::Inconclusive;
}

DensityMatrix KentClassState::sigma_at(double lam) const {
  CMat m = lam * (psi.amplitudes() * psi.amplitudes().adjoint()) +
           (1.0 - lam) * zeta.matrix();
  m = (m + m.adjoint().eval()) / 2.0;
  return DensityMatrix(psi.dimA(), psi.dimB(), std::move(m));
}

DensityMatrix KentClassState::sigma() const { return sigma_at(lambda); }

Lambda0Result lambda0_bisect(const PureState& psi, const DensityMatrix& zeta) {
  if (psi.dimA() != zeta.dimA() || psi.dimB() != zeta.dimB())
    throw std::invalid_argument("lambda0_bisect: dimension mismatch");
  const cxd ortho =
      (psi.amplitudes().adjoint() * zeta.matrix() * psi.amplitudes())(0, 0);
  if (std::abs(ortho) > 1e-10)
    throw std::invalid_argument("lambda0_bisect: <psi|zeta|psi> != 0");

  KentClassState tmp{1.0, psi, zeta, 0.0, true};
  Lambda0Result res;
  auto classify = [&](double lam) { return ppt_separability(tmp.sigma_at(lam)); };
  if (classify(1.0) != Separability::Entangled)
    throw std::invalid_argument("lambda0_bisect: psi end of the segment is not NPT");
  if (classify(0.0) == Separability::Entangled)
    throw std::invalid_argument("lambda0_bisect: zeta end of the segment is NPT");
  if (classify(0.0) == Separability::Inconclusive) res.exact = false;

  std::vector<std::pair<double, bool>> visited;  // (lambda, entangled)
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-8) {
    const double mid = 0.5 * (lo + hi);
    const Separability s = classify(mid);
    if (s == Separability::Inconclusive) res.exact = false;
    const bool entangled = (s == Separability::Entangled);
    visited.emplace_back(mid, entangled);
    (entangled ? hi : lo) = mid;
  }
  res.lambda0 = 0.5 * (lo + hi);

  // The certifier must flip exactly once along the visited points.
  std::sort(visited.begin(), visited.end());
  for (std::size_t i = 1; i < visited.size(); ++i)
    if (visited[i - 1].second && !visited[i].second)
      throw std::runtime_error("lambda0_bisect: certifier not monotone on segment");
  return res;
}

KentClassState make_kent_state(double lambda, const PureState& psi,
                               const DensityMatrix& zeta) {
  const Lambda0Result l0 = lambda0_bisect(psi, zeta);
  return KentClassState{lambda, psi, zeta, l0.lambda0, l0.exact};
}

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t trial) {
  state_ = seed ^ 0x5851f42d4c957f2dULL;
  (void)splitmix64(state_);
  state_ ^= trial * 0x2545f4914f6cdd1dULL + 1;
  (void)splitmix64(state_);
}

std::uint64_t TrialRng::next_u64() { return splitmix64(state_); }

double TrialRng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double TrialRng::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  double u1 = uniform(), u2 = uniform();
  while (u1 <= 1e-300) u1 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  cached_ = r * std::sin(2.0 * M_PI * u2);
  has_cached_ = true;
  return r * std::cos(2.0 * M_PI * u2);
}

cxd TrialRng::complex_normal() {
  const double re = normal();
  return cxd(re, normal()) / std::sqrt(2.0);
}

std::vector<CMat> sample_local_kraus(int count, int dim, TrialRng& rng) {
  CMat g(static_cast<Eigen::Index>(count) * dim, dim);
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<CMat> qr(g);
  const CMat q = qr.householderQ() *
                 CMat::Identity(static_cast<Eigen::Index>(count) * dim, dim);
  std::vector<CMat> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k)
    out.push_back(q.middleRows(static_cast<Eigen::Index>(k) * dim, dim));
  return out;
}

AttackReport random_separable_attack(
    const KentClassState& state, const std::optional<DensityMatrix>& omega,
    int trials, std::uint64_t seed,
    const std::function<void(const DensityMatrix&)>& on_catalytic_output) {
  AttackReport report;
  const DensityMatrix sigma = state.sigma();
  report.input_fidelity =
      (state.psi.amplitudes().adjoint() * sigma.matrix() *
       state.psi.amplitudes())(0, 0).real();

  const int dat = omega ? omega->dimA() : 1;
  const int dbt = omega ? omega->dimB() : 1;
  const DensityMatrix joint = omega ? tensor_product(sigma, *omega) : sigma;
  const int da = joint.dimA(), db = joint.dimB();

  auto psi_fidelity = [&](const DensityMatrix& rho) {
    return (state.psi.amplitudes().adjoint() * rho.matrix() *
            state.psi.amplitudes())(0, 0).real();
  };

  for (int t = 0; t < trials; ++t) {
    TrialRng rng(seed, static_cast<std::uint64_t>(t));
    const int n = (t == 0) ? 1 : 1 + static_cast<int>(rng.next_u64() % 4);
    // Without a catalyst every map is catalytic by definition. With one,
    // alternate between maps extended by the identity on the catalyst (which
    // return it exactly) and fully random maps on the extended factors.
    const bool extend_identity = !omega || (t % 2 == 0);
    std::vector<KrausPair> kraus;
    if (t == 0) {
      kraus.push_back({CMat::Identity(da, da), CMat::Identity(db, db)});
    } else if (extend_identity) {
      const auto as = sample_local_kraus(n, sigma.dimA(), rng);
      const auto bs = sample_local_kraus(n, sigma.dimB(), rng);
      for (int i = 0; i < n; ++i)
        kraus.push_back({kron(as[static_cast<std::size_t>(i)], CMat::Identity(dat, dat)),
                         kron(bs[static_cast<std::size_t>(i)], CMat::Identity(dbt, dbt))});
    } else {
      const auto as = sample_local_kraus(n, da, rng);
      const auto bs = sample_local_kraus(n, db, rng);
      for (int i = 0; i < n; ++i)
        kraus.push_back({as[static_cast<std::size_t>(i)], bs[static_cast<std::size_t>(i)]});
    }

    auto record = [&](const DensityMatrix& joint_out, double prob) {
      const DensityMatrix rho_out =
          omega ? trace_out_ancilla(joint_out, dat, dbt) : joint_out;
      bool catalytic = true;
      if (omega) {
        const DensityMatrix expect = tensor_product(rho_out, *omega);
        catalytic = trace_distance(joint_out, expect) <= 1e-8;
      }
      const double f = psi_fidelity(rho_out);
      report.max_fidelity_any = std::max(report.max_fidelity_any, f);
      if (catalytic) {
        report.max_fidelity = std::max(report.max_fidelity, f);
        if (on_catalytic_output) on_catalytic_output(rho_out);
      }
      report.transcript.push_back(
          AttackTrial{t, static_cast<int>(kraus.size()), prob, f, catalytic});
    };

    // Per-branch postselection.
    for (const auto& k : kraus) {
      try {
        const MapResult r = apply_separable_map(joint, {k}, true);
        record(r.state(), r.probability);
      } catch (const std::runtime_error&) {
        ++report.degenerate_skipped;
      }
    }
    // Normalized mixture over all branches.
    if (kraus.size() > 1) {
      const MapResult r = apply_separable_map(joint, kraus, true);
      record(r.state(), 1.0);
    }
  }
  return report;
}

CurveReport fidelity_lambda_curve(const std::vector<KrausPair>& kraus,
                                  const PureState& psi, const DensityMatrix& zeta,
                                  const std::optional<DensityMatrix>& omega,
                                  const std::vector<double>& lambda_grid) {
  if (lambda_grid.size() < 9)
    throw std::invalid_argument("fidelity_lambda_curve: need at least 9 grid points");
  KentClassState helper{0.0, psi, zeta, 0.0, true};
  CurveReport rep;
  rep.lambdas = lambda_grid;
  for (double lam : lambda_grid) {
    if (!(lam > 0.0 && lam < 1.0))
      throw std::invalid_argument("fidelity_lambda_curve: grid point outside (0,1)");
    const DensityMatrix sigma = helper.sigma_at(lam);
    const DensityMatrix joint = omega ? tensor_product(sigma, *omega) : sigma;
    const MapResult r = apply_separable_map(joint, kraus, false);
    if (r.probability <= 1e-12)
      throw std::runtime_error("fidelity_lambda_curve: vanishing normalization");
    CMat unnorm = (r.matrix + r.matrix.adjoint().eval()) / 2.0;
    DensityMatrix normalized(r.dim_a, r.dim_b, unnorm / r.probability);
    const DensityMatrix rho_out =
        omega ? trace_out_ancilla(normalized, omega->dimA(), omega->dimB())
              : normalized;
    rep.fidelity.push_back((psi.amplitudes().adjoint() * rho_out.matrix() *
                            psi.amplitudes())(0, 0).real());
  }
  for (std::size_t i = 1; i + 1 < rep.lambdas.size(); ++i) {
    const double h1 = rep.lambdas[i] - rep.lambdas[i - 1];
    const double h2 = rep.lambdas[i + 1] - rep.lambdas[i];
    const double dd =
        2.0 * (h1 * rep.fidelity[i + 1] - (h1 + h2) * rep.fidelity[i] +
               h2 * rep.fidelity[i - 1]) /
        (h1 * h2 * (h1 + h2));
    rep.second_diffs.push_back(dd);
  }
  for (double d : rep.second_diffs) {
    const int s = (d > 1e-9) ? 1 : (d < -1e-9 ? -1 : 0);
    if (s == 0) continue;
    if (rep.sign == 0) rep.sign = s;
    else if (rep.sign != s) rep.sign_constant = false;
  }
  return rep;
}

}  // namespace entcat
