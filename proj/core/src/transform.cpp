#include "entcat/transform.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "entcat/config.hpp"

namespace entcat {

namespace {

json majorization_certificate(const MajorizationResult& m) {
  json c;
  c["prefix_alpha"] = m.prefix_alpha;
  c["prefix_beta"] = m.prefix_beta;
  if (!m.holds) {
    c["violating_k"] = m.violating_k;
    c["lhs"] = m.lhs;
    c["rhs"] = m.rhs;
  }
  return c;
}

}  // namespace

Verdict locc_pure(const Spectrum& alpha, const Spectrum& beta, double tolerance) {
  const MajorizationResult m = is_majorized(alpha, beta, tolerance);
  Verdict v;
  v.decision = m.holds ? Decision::Possible : Decision::Impossible;
  v.certificate = majorization_certificate(m);
  v.certificate["criterion"] = "majorization";
  return v;
}

Verdict locc_pure(const Spectrum& alpha, const Spectrum& beta) {
  return locc_pure(alpha, beta, tol().majorization);
}

Verdict locc_pure(const PureState& psi, const PureState& phi) {
  return locc_pure(schmidt_spectrum(psi), schmidt_spectrum(phi));
}

bool incommensurate(const Spectrum& alpha, const Spectrum& beta) {
  return locc_pure(alpha, beta).decision == Decision::Impossible &&
         locc_pure(beta, alpha).decision == Decision::Impossible;
}

bool incommensurate(const PureState& psi, const PureState& phi) {
  return incommensurate(schmidt_spectrum(psi), schmidt_spectrum(phi));
}

namespace {

using Vec = std::vector<double>;

double objective_root(const Vec& mu, const Vec& b) {
  double h = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) h += std::sqrt(mu[i] * b[i]);
  return h;
}

// Deterministic feasibility repair: clamp and renormalize, enforce
// nonincreasing order, then fix prefix-sum deficits smallest-k first by
// scaling head mass up and tail mass down. Fixing index k never disturbs
// smaller indices, so one pass restores feasibility.
Vec repair(Vec mu, const Vec& prefix_alpha, const Vec& fallback) {
  const std::size_t n = mu.size();
  double sum = 0.0;
  for (double& v : mu) {
    if (!std::isfinite(v)) return fallback;
    v = std::max(v, 0.0);
    sum += v;
  }
  if (sum <= 0.0) return fallback;
  for (double& v : mu) v /= sum;
  std::sort(mu.begin(), mu.end(), std::greater<double>());
  for (std::size_t k = 0; k + 1 < n; ++k) {
    double head = std::accumulate(mu.begin(), mu.begin() + k + 1, 0.0);
    const double deficit = prefix_alpha[k] - head;
    if (deficit <= 1e-15) continue;
    const double tail = 1.0 - head;
    if (head > 0.0) {
      const double up = (head + deficit) / head;
      for (std::size_t i = 0; i <= k; ++i) mu[i] *= up;
    } else {
      for (std::size_t i = 0; i <= k; ++i) mu[i] += deficit / static_cast<double>(k + 1);
    }
    if (tail > 0.0) {
      const double down = (tail - deficit) / tail;
      for (std::size_t i = k + 1; i < n; ++i) mu[i] *= down;
    }
  }
  return mu;
}

// Exact two-coordinate improvement: optimal mass transfer between i and j
// subject to order and prefix constraints has a closed form.
bool pair_sweep(Vec& mu, const Vec& b, const Vec& prefix_alpha) {
  const std::size_t n = mu.size();
  bool improved = false;
  Vec s(n);
  std::partial_sum(mu.begin(), mu.end(), s.begin());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (b[i] + b[j] <= 0.0) continue;
      // delta > 0 moves mass from j to i.
      double hi = std::numeric_limits<double>::infinity();
      if (i > 0) hi = std::min(hi, mu[i - 1] - mu[i]);
      hi = std::min(hi, (j + 1 < n) ? mu[j] - mu[j + 1] : mu[j]);
      double lo;
      if (j == i + 1) {
        lo = (mu[j] - mu[i]) / 2.0;
      } else {
        lo = std::max(mu[j] - mu[j - 1], mu[i + 1] - mu[i]);
      }
      for (std::size_t k = i; k < j; ++k) lo = std::max(lo, prefix_alpha[k] - s[k]);
      if (lo > hi) continue;
      const double total = mu[i] + mu[j];
      double x = total * b[i] / (b[i] + b[j]);  // unconstrained argmax for mu_i
      x = std::clamp(x, mu[i] + lo, mu[i] + hi);
      const double before = std::sqrt(mu[i] * b[i]) + std::sqrt(mu[j] * b[j]);
      const double after = std::sqrt(x * b[i]) + std::sqrt((total - x) * b[j]);
      if (after > before + 1e-16) {
        const double delta = x - mu[i];
        mu[i] = x;
        mu[j] = total - x;
        for (std::size_t k = i; k < j; ++k) s[k] += delta;
        improved = true;
      }
    }
  }
  return improved;
}

}  // namespace

ConversionFidelity optimal_conversion_fidelity(const Spectrum& alpha,
                                               const Spectrum& beta) {
  if (is_majorized(alpha, beta).holds)
    return ConversionFidelity{1.0, beta, true};

  const std::size_t n = std::max(alpha.size(), beta.size());
  const Vec a = alpha.padded(n);
  const Vec b = beta.padded(n);
  Vec prefix_alpha(n);
  std::partial_sum(a.begin(), a.end(), prefix_alpha.begin());

  Vec mix(n);
  for (std::size_t i = 0; i < n; ++i) mix[i] = 0.5 * (a[i] + b[i]);
  const std::vector<Vec> starts = {repair(b, prefix_alpha, a), a,
                                   repair(mix, prefix_alpha, a)};

  Vec best = a;
  double best_h = objective_root(a, b);
  bool converged = false;
  for (const Vec& start : starts) {
    Vec mu = start;
    // Projected ascent with a diminishing step schedule, then exact
    // pairwise polishing.
    for (int it = 0; it < 600; ++it) {
      Vec g(n, 0.0);
      double mean = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (b[i] > 0.0) g[i] = 0.5 * std::sqrt(b[i] / std::max(mu[i], 1e-12));
        mean += g[i];
      }
      mean /= static_cast<double>(n);
      const double step = 0.05 / std::pow(1.0 + it, 0.6);
      Vec cand(n);
      for (std::size_t i = 0; i < n; ++i) cand[i] = mu[i] + step * (g[i] - mean);
      cand = repair(std::move(cand), prefix_alpha, a);
      if (objective_root(cand, b) >= objective_root(mu, b)) mu = std::move(cand);
    }
    int pass = 0;
    for (; pass < 500; ++pass)
      if (!pair_sweep(mu, b, prefix_alpha)) break;
    const double h = objective_root(mu, b);
    if (h > best_h) {
      best_h = h;
      best = mu;
    }
    if (pass < 500) converged = true;
  }
  return ConversionFidelity{std::min(best_h * best_h, 1.0), Spectrum(best),
                            converged};
}

}  // namespace entcat
