#include "entcat/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "entcat/config.hpp"

namespace entcat {

namespace {

// Compensated (Kahan) running sums so that verdicts are stable across
// platforms and summation orders.
std::vector<double> prefix_sums(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    double y = v[i] - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    out[i] = sum;
  }
  return out;
}

}  // namespace

Spectrum::Spectrum(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("Spectrum: empty");
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("Spectrum: non-finite entry");
    if (v < -1e-12 || v > 1.0 + 1e-12)
      throw std::invalid_argument("Spectrum: entry outside [0,1]");
  }
  for (double& v : values_) v = std::clamp(v, 0.0, 1.0);
  std::sort(values_.begin(), values_.end(), std::greater<double>());
  double sum = 0.0, comp = 0.0;
  for (double v : values_) {
    double y = v - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  if (std::abs(sum - 1.0) > tol().spectrum_sum)
    throw std::invalid_argument("Spectrum: sum differs from 1 beyond tolerance");
}

std::vector<double> Spectrum::padded(std::size_t n) const {
  std::vector<double> out = values_;
  if (out.size() < n) out.resize(n, 0.0);
  return out;
}

std::size_t Spectrum::effective_rank() const {
  std::size_t r = 0;
  for (double v : values_)
    if (v > tol().tie) ++r;
  return r;
}

MajorizationResult is_majorized(const Spectrum& alpha, const Spectrum& beta,
                                double tolerance) {
  const std::size_t n = std::max(alpha.size(), beta.size());
  const auto a = alpha.padded(n);
  const auto b = beta.padded(n);
  MajorizationResult res;
  res.prefix_alpha = prefix_sums(a);
  res.prefix_beta = prefix_sums(b);
  res.holds = true;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (res.prefix_alpha[k] > res.prefix_beta[k] + tolerance) {
      res.holds = false;
      res.violating_k = k + 1;
      res.lhs = res.prefix_alpha[k];
      res.rhs = res.prefix_beta[k];
      break;
    }
  }
  return res;
}

MajorizationResult is_majorized(const Spectrum& alpha, const Spectrum& beta) {
  return is_majorized(alpha, beta, tol().majorization);
}

Spectrum product_spectrum(const Spectrum& alpha, const Spectrum& gamma) {
  std::vector<double> prod;
  prod.reserve(alpha.size() * gamma.size());
  for (double a : alpha.values())
    for (double g : gamma.values()) prod.push_back(a * g);
  return Spectrum(std::move(prod));
}

double epsilon_order_radius(const Spectrum& alpha, const Spectrum& gamma) {
  double radius = std::numeric_limits<double>::infinity();
  const auto& a = alpha.values();
  const auto& g = gamma.values();
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      for (std::size_t k = 0; k < a.size(); ++k)
        for (std::size_t l = 0; l < g.size(); ++l) {
          const double gap = a[i] * g[j] - a[k] * g[l];
          if (gap <= tol().tie) continue;  // not strictly ordered
          const double denom = g[j] + g[l];
          if (denom <= 0.0) continue;
          radius = std::min(radius, gap / denom);
        }
  return radius;
}

bool is_epsilon_list(const Spectrum& beta, const Spectrum& alpha, double eps) {
  const std::size_t n = std::max(alpha.size(), beta.size());
  const auto a = alpha.padded(n);
  const auto b = beta.padded(n);
  double dev = 0.0;
  for (std::size_t i = 0; i < n; ++i) dev = std::max(dev, std::abs(b[i] - a[i]));
  return dev < eps;
}

}  // namespace entcat
