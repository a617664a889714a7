#include "entcat/catalysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "entcat/config.hpp"
#include "entcat/transform.hpp"

namespace entcat {

Verdict elocc_with_catalyst(const Spectrum& alpha, const Spectrum& beta,
                            const Spectrum& omega) {
  const Spectrum pa = product_spectrum(alpha, omega);
  const Spectrum pb = product_spectrum(beta, omega);
  Verdict v = locc_pure(pa, pb);
  v.certificate["criterion"] = "elocc-product-majorization";
  v.certificate["omega"] = omega.values();
  return v;
}

Verdict elocc_with_catalyst(const PureState& psi, const PureState& phi,
                            const Spectrum& omega) {
  return elocc_with_catalyst(schmidt_spectrum(psi), schmidt_spectrum(phi), omega);
}

namespace {

struct Interval {
  double lo, hi;
};

// Product term of a dim-2 catalyst (c, 1-c): value u*c + v*(1-c).
struct LinTerm {
  double u, v;
  double at(double c) const { return u * c + v * (1.0 - c); }
};

std::vector<LinTerm> linear_products(const Spectrum& s) {
  std::vector<LinTerm> out;
  for (double a : s.values()) {
    out.push_back({a, 0.0});
    out.push_back({0.0, a});
  }
  return out;
}

// Feasible c-subintervals of [seg_lo, seg_hi] where every prefix-sum
// condition holds, assuming the product order is constant on the segment.
Interval segment_feasible(std::vector<LinTerm> pa, std::vector<LinTerm> pb,
                          double seg_lo, double seg_hi) {
  const double mid = 0.5 * (seg_lo + seg_hi);
  auto desc = [mid](const LinTerm& x, const LinTerm& y) {
    return x.at(mid) > y.at(mid);
  };
  std::stable_sort(pa.begin(), pa.end(), desc);
  std::stable_sort(pb.begin(), pb.end(), desc);
  const std::size_t n = std::max(pa.size(), pb.size());
  pa.resize(n, {0.0, 0.0});
  pb.resize(n, {0.0, 0.0});
  Interval iv{seg_lo, seg_hi};
  double su = 0.0, sv = 0.0, tu = 0.0, tv = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    su += pa[k].u; sv += pa[k].v;
    tu += pb[k].u; tv += pb[k].v;
    // (su-tu) c + (sv-tv)(1-c) <= 0  <=>  slope*c <= offset
    const double slope = (su - tu) - (sv - tv);
    const double offset = -(sv - tv);
    if (std::abs(slope) <= 1e-15) {
      if (offset < -1e-15) return {1.0, 0.0};  // empty
    } else if (slope > 0.0) {
      iv.hi = std::min(iv.hi, offset / slope);
    } else {
      iv.lo = std::max(iv.lo, offset / slope);
    }
  }
  return iv;
}

// Exact feasibility intervals for a dimension-2 catalyst weight c in [0.5, 1].
std::vector<Interval> dim2_feasible_intervals(const Spectrum& alpha,
                                              const Spectrum& beta) {
  std::vector<double> cuts{0.5, 1.0};
  auto add_crossings = [&cuts](const Spectrum& s) {
    for (double x : s.values())
      for (double y : s.values()) {
        if (x + y <= 0.0) continue;
        const double c = y / (x + y);
        if (c > 0.5 && c < 1.0) cuts.push_back(c);
      }
  };
  add_crossings(alpha);
  add_crossings(beta);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-14; }),
             cuts.end());
  const auto pa = linear_products(alpha);
  const auto pb = linear_products(beta);
  std::vector<Interval> feasible;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    Interval iv = segment_feasible(pa, pb, cuts[s], cuts[s + 1]);
    if (iv.lo > iv.hi) continue;
    if (!feasible.empty() && std::abs(feasible.back().hi - iv.lo) < 1e-12)
      feasible.back().hi = iv.hi;  // merge adjacent
    else
      feasible.push_back(iv);
  }
  return feasible;
}

// Ordered-simplex grid in lexicographic order; the first feasible point wins
// regardless of evaluation order, so parallel runs stay deterministic.
bool grid_search(const Spectrum& alpha, const Spectrum& beta, int dim,
                 int steps, std::vector<double>* found) {
  std::vector<int> parts(static_cast<std::size_t>(dim), 0);
  std::function<bool(int, int, int)> rec = [&](int idx, int remaining,
                                               int prev) -> bool {
    if (idx == dim - 1) {
      if (remaining > prev || remaining < 1) return false;
      parts[static_cast<std::size_t>(idx)] = remaining;
      std::vector<double> g(parts.size());
      for (std::size_t i = 0; i < parts.size(); ++i)
        g[i] = static_cast<double>(parts[i]) / steps;
      Spectrum omega(g);
      if (elocc_with_catalyst(alpha, beta, omega).decision ==
          Decision::Possible) {
        *found = omega.values();
        return true;
      }
      return false;
    }
    const int slots = dim - idx;
    const int min_part = (remaining + slots - 1) / slots;  // keep order
    // ascending, so the lexicographically smallest feasible point wins
    for (int p = min_part; p <= std::min(prev, remaining); ++p) {
      parts[static_cast<std::size_t>(idx)] = p;
      if (rec(idx + 1, remaining - p, p)) return true;
    }
    return false;
  };
  return rec(0, steps, steps);
}

}  // namespace

Verdict catalyst_search(const Spectrum& alpha, const Spectrum& beta,
                        const CatalystSearchConfig& cfg) {
  Verdict v;
  if (is_majorized(alpha, beta).holds) {
    v.decision = Decision::Possible;
    v.certificate["catalyst"] = std::vector<double>{1.0};
    v.certificate["method"] = "trivial";
    return v;
  }
  for (int dim = 2; dim <= cfg.max_dim; ++dim) {
    if (dim == 2) {
      const auto intervals = dim2_feasible_intervals(alpha, beta);
      for (const Interval& iv : intervals) {
        const double c = 0.5 * (iv.lo + iv.hi);
        Spectrum omega(std::vector<double>{c, 1.0 - c});
        if (elocc_with_catalyst(alpha, beta, omega).decision ==
            Decision::Possible) {
          v.decision = Decision::Possible;
          v.certificate["catalyst"] = omega.values();
          v.certificate["method"] = "exact-scan";
          json ivs = json::array();
          for (const Interval& w : intervals) ivs.push_back({w.lo, w.hi});
          v.certificate["feasible_intervals"] = ivs;
          return v;
        }
      }
      continue;
    }
    std::vector<double> found;
    if (grid_search(alpha, beta, dim, cfg.grid_steps, &found)) {
      v.decision = Decision::Possible;
      v.certificate["catalyst"] = found;
      v.certificate["method"] = "grid";
      v.certificate["grid_steps"] = cfg.grid_steps;
      return v;
    }
  }
  v.decision = Decision::Unknown;
  v.certificate["budget"] = {{"max_dim", cfg.max_dim},
                             {"grid_steps", cfg.grid_steps},
                             {"refine_iters", cfg.refine_iters}};
  v.certificate["note"] = "search exhausted; absence of a catalyst is not certified";
  return v;
}

double catalysis_free_radius(const Spectrum& alpha, const Spectrum& gamma) {
  const double eps = epsilon_order_radius(alpha, gamma);
  if (!std::isfinite(eps)) return 1.0;
  return std::min(eps * eps, 1.0);
}

}  // namespace entcat
