#include "entcat/mixedcat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

#include "entcat/catalysis.hpp"
#include "entcat/config.hpp"
#include "entcat/qcore.hpp"
#include "entcat/transform.hpp"

namespace entcat {

namespace {

bool is_product_state(const PureState& s) {
  const Spectrum sp = schmidt_spectrum(s);
  return sp.size() < 2 || sp[1] <= 1e-10;
}

bool is_entangled(const PureState& s) {
  const Spectrum sp = schmidt_spectrum(s);
  return sp.size() >= 2 && sp[1] > 1e-10;
}

}  // namespace

ChiOperator chi_of(const PureState& psi, const PureState& eta) {
  if (psi.dimA() != eta.dimA() || psi.dimB() != eta.dimB())
    throw std::invalid_argument("chi_of: dimension mismatch");
  if (!is_product_state(eta))
    throw std::invalid_argument("chi_of: eta is not a product state");
  const cxd c = eta.overlap(psi);  // <eta|psi>
  CVec projected = psi.amplitudes() - c * eta.amplitudes();
  const double trace = projected.squaredNorm();
  if (trace <= tol().degenerate_branch)
    throw std::invalid_argument("chi_of: psi is parallel to eta, chi vanishes");
  ChiOperator chi{projected * projected.adjoint(), trace,
                  PureState(psi.dimA(), psi.dimB(), projected / std::sqrt(trace))};
  return chi;
}

RankTwoClass build_class(double lambda, const PureState& psi,
                         const PureState& phi, const PureState& eta) {
  if (!(lambda > 0.0 && lambda <= 1.0))
    throw std::invalid_argument("build_class: lambda outside (0,1]");
  if (!is_entangled(psi) || !is_entangled(phi))
    throw std::invalid_argument("build_class: psi and phi must be entangled");
  if (!is_product_state(eta))
    throw std::invalid_argument("build_class: eta must be a product state");
  if (std::norm(eta.overlap(phi)) > 1e-10)
    throw std::invalid_argument("build_class: phi not orthogonal to eta");
  const ChiOperator chi = chi_of(psi, eta);
  const double mu = lambda * chi.trace;

  auto mix = [](double w, const PureState& a, const PureState& b) {
    CMat m = w * (a.amplitudes() * a.amplitudes().adjoint()) +
             (1.0 - w) * (b.amplitudes() * b.amplitudes().adjoint());
    m = (m + m.adjoint().eval()) / 2.0;
    return DensityMatrix(a.dimA(), a.dimB(), std::move(m));
  };
  RankTwoClass out{RankTwoSpec{lambda, psi, phi, eta, mu},
                   mix(lambda, psi, eta), mix(mu, phi, eta)};
  return out;
}

Verdict lemma1_check(const RankTwoSpec& spec) {
  Verdict v;
  const ProductVectorCount pv = product_vectors_in_range(spec.phi, spec.eta);
  if (pv.count != 1) {
    v.decision = Decision::Unknown;
    v.certificate["note"] =
        "range of rho contains more than one product vector; the necessary "
        "condition does not apply";
    v.certificate["product_vector_count"] = pv.count;
    return v;
  }
  const ChiOperator chi = chi_of(spec.psi, spec.eta);
  const Spectrum chi_spec = schmidt_spectrum(chi.normalized);
  const Spectrum phi_spec = schmidt_spectrum(spec.phi);
  const MajorizationResult m = is_majorized(chi_spec, phi_spec);
  if (!m.holds) {
    v.decision = Decision::Impossible;
    v.certificate["violating_k"] = m.violating_k;
    v.certificate["lhs"] = m.lhs;
    v.certificate["rhs"] = m.rhs;
    v.certificate["prefix_alpha"] = m.prefix_alpha;
    v.certificate["prefix_beta"] = m.prefix_beta;
    v.certificate["criterion"] = "chi-marginal majorization (necessary)";
  } else {
    v.decision = Decision::Unknown;
    v.certificate["note"] =
        "necessary condition holds; the criterion is not sufficient";
    v.certificate["prefix_alpha"] = m.prefix_alpha;
    v.certificate["prefix_beta"] = m.prefix_beta;
  }
  return v;
}

namespace {

double second_singular_value(const CMat& m) {
  Eigen::JacobiSVD<CMat> svd(m);
  return svd.singularValues().size() > 1 ? svd.singularValues()(1) : 0.0;
}

}  // namespace

ProductVectorCount product_vectors_in_range(const PureState& u, const PureState& w) {
  const CMat mu = u.coefficient_matrix();
  const CMat mw = w.coefficient_matrix();
  const int da = static_cast<int>(mu.rows()), db = static_cast<int>(mu.cols());

  // Each 2x2 minor of t*Mu + Mw is a quadratic in t.
  struct Quad {
    cxd c2, c1, c0;
    double scale() const { return std::max({std::abs(c2), std::abs(c1), std::abs(c0)}); }
  };
  Quad pick{0.0, 0.0, 0.0};
  double overall = 0.0;
  for (int p = 0; p < da; ++p)
    for (int q = p + 1; q < da; ++q)
      for (int r = 0; r < db; ++r)
        for (int s = r + 1; s < db; ++s) {
          Quad m;
          m.c2 = mu(p, r) * mu(q, s) - mu(p, s) * mu(q, r);
          m.c0 = mw(p, r) * mw(q, s) - mw(p, s) * mw(q, r);
          m.c1 = mu(p, r) * mw(q, s) + mw(p, r) * mu(q, s) -
                 mu(p, s) * mw(q, r) - mw(p, s) * mu(q, r);
          overall = std::max(overall, m.scale());
          if (m.scale() > pick.scale()) pick = m;
        }
  if (overall <= 1e-12)
    throw std::runtime_error(
        "product_vectors_in_range: degenerate span, every combination is a "
        "product vector");

  std::vector<cxd> roots;
  if (std::abs(pick.c2) > 1e-12 * pick.scale()) {
    // Numerically stable quadratic roots.
    const cxd disc = std::sqrt(pick.c1 * pick.c1 - 4.0 * pick.c2 * pick.c0);
    const cxd q = -0.5 * (pick.c1 + (std::real(std::conj(pick.c1) * disc) >= 0.0
                                         ? disc : -disc));
    if (std::abs(q) > 0.0) {
      roots.push_back(q / pick.c2);
      roots.push_back(pick.c0 / q);
    } else {
      roots.push_back(0.0);
    }
  } else if (std::abs(pick.c1) > 1e-12 * pick.scale()) {
    roots.push_back(-pick.c0 / pick.c1);
  }
  // Deduplicate double roots.
  if (roots.size() == 2 &&
      std::abs(roots[0] - roots[1]) <= 1e-8 * (1.0 + std::abs(roots[0])))
    roots.pop_back();

  ProductVectorCount out;
  auto consider = [&](const CVec& v) {
    const double n = v.norm();
    if (n <= 1e-12) return;
    PureState cand(u.dimA(), u.dimB(), v / n);
    if (second_singular_value(cand.coefficient_matrix()) <= 1e-8) {
      ++out.count;
      out.witnesses.push_back(std::move(cand));
    }
  };
  for (const cxd& t : roots)
    consider(t * u.amplitudes() + w.amplitudes());
  consider(u.amplitudes());  // the point at infinity (t : 1) = (1 : 0)
  return out;
}

ProductVectorCount product_vectors_in_range(const DensityMatrix& rho_rank2) {
  HermitianEig eig = hermitian_eig(rho_rank2.matrix());
  if (eig.eigenvalues.size() < 2 ||
      (eig.eigenvalues.size() > 2 && eig.eigenvalues(2) > 1e-8))
    throw std::invalid_argument("product_vectors_in_range: state is not rank two");
  if (eig.eigenvalues(1) <= 1e-12)
    throw std::invalid_argument("product_vectors_in_range: state is rank one");
  PureState u(rho_rank2.dimA(), rho_rank2.dimB(), eig.eigenvectors.col(0));
  PureState w(rho_rank2.dimA(), rho_rank2.dimB(), eig.eigenvectors.col(1));
  return product_vectors_in_range(u, w);
}

ProtocolResult elocc_protocol_execute(const RankTwoSpec& spec, const Spectrum& omega) {
  const ChiOperator chi = chi_of(spec.psi, spec.eta);
  const Verdict cat =
      elocc_with_catalyst(schmidt_spectrum(chi.normalized),
                          schmidt_spectrum(spec.phi), omega);
  if (cat.decision != Decision::Possible)
    throw std::runtime_error(
        "elocc_protocol_execute: conversion of the measured branch is not "
        "certified for this catalyst");

  const int da = spec.psi.dimA(), db = spec.psi.dimB();
  const CMat coeff = chi.normalized.coefficient_matrix();
  std::vector<int> support;
  CMat proj = CMat::Zero(da, da);
  for (int i = 0; i < da; ++i)
    if (coeff.row(i).squaredNorm() > 1e-12) {
      support.push_back(i);
      proj(i, i) = 1.0;
    }
  // The kept branch must leave eta untouched, so eta's A-side weight has to
  // lie outside the measured support.
  const CMat eta_coeff = spec.eta.coefficient_matrix();
  for (int i : support)
    if (eta_coeff.row(i).squaredNorm() > 1e-12)
      throw std::runtime_error(
          "elocc_protocol_execute: eta overlaps the measured A-side support");

  const CMat sigma =
      spec.lambda * (spec.psi.amplitudes() * spec.psi.amplitudes().adjoint()) +
      (1.0 - spec.lambda) * (spec.eta.amplitudes() * spec.eta.amplitudes().adjoint());
  const CMat p_full = kron(proj, CMat::Identity(db, db));
  const CMat q_full = kron(CMat::Identity(da, da) - proj, CMat::Identity(db, db));

  const CMat branch_convert = p_full * sigma * p_full;
  const CMat branch_keep = q_full * sigma * q_full;
  const double p1 = branch_convert.trace().real();
  const double p2 = branch_keep.trace().real();
  if (p1 <= tol().degenerate_branch)
    throw std::runtime_error("elocc_protocol_execute: degenerate conversion branch");

  // Outcome 1 is converted to |phi> (certified above); outcome 2 is left
  // alone; the classical record is discarded.
  CMat out = p1 * (spec.phi.amplitudes() * spec.phi.amplitudes().adjoint()) +
             branch_keep;
  out = (out + out.adjoint().eval()) / 2.0;
  return ProtocolResult{DensityMatrix(da, db, std::move(out)),
                        ProtocolTranscript{p1, p2, support}};
}

double f_locc_upper_bound(double lambda, double epsilon, const Spectrum& beta) {
  const double separable = beta[0];  // largest squared Schmidt coefficient
  const Spectrum core = schmidt_spectrum(paper_psi_eps(epsilon));
  const double conv = optimal_conversion_fidelity(core, beta).value;
  return (1.0 - lambda) * separable + lambda * conv;
}

EloccBound f_elocc_lower_bound(double lambda, double epsilon) {
  if (!(lambda > 0.0 && lambda < 1.0) || !(epsilon > 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("f_elocc_lower_bound: parameters out of range");
  const double good = lambda * epsilon * epsilon;
  return EloccBound{good + (1.0 - good) / 2.0,
                    "measure the A-side support; catalyze the entangled branch "
                    "to the target; best-separable output on the rest"};
}

double epsilon_threshold(const Spectrum& psi_core, const Spectrum& phi) {
  const double f = optimal_conversion_fidelity(psi_core, phi).value;
  if (f < 0.5 - 1e-12)
    throw std::runtime_error("epsilon_threshold: conversion fidelity below 1/2");
  return std::clamp(std::sqrt(std::max(2.0 * f - 1.0, 0.0)), 0.0, 1.0);
}

namespace {

PureState diagonal_state(int d, const std::vector<double>& weights) {
  CVec amp = CVec::Zero(static_cast<Eigen::Index>(d) * d);
  for (std::size_t i = 0; i < weights.size(); ++i)
    amp(static_cast<Eigen::Index>(i) * d + static_cast<Eigen::Index>(i)) =
        std::sqrt(weights[i]);
  return PureState(d, d, std::move(amp));
}

}  // namespace

PureState paper_psi() { return diagonal_state(5, {0.38, 0.38, 0.095, 0.095, 0.05}); }
PureState paper_phi() { return diagonal_state(5, {0.5, 0.25, 0.25}); }
PureState paper_phitilde() { return diagonal_state(5, {0.4, 0.4, 0.1, 0.1}); }
PureState paper_eta() { return diagonal_state(5, {0.0, 0.0, 0.0, 0.0, 1.0}); }

PureState paper_psi_eps(double eps) {
  if (!(eps > 0.0 && eps <= 1.0))
    throw std::invalid_argument("paper_psi_eps: eps outside (0,1]");
  const double e2 = eps * eps;
  return diagonal_state(5, {0.4 * e2, 0.4 * e2, 0.1 * e2, 0.1 * e2, 1.0 - e2});
}

Spectrum paper_omega_spectrum() { return Spectrum(std::vector<double>{0.6, 0.4}); }
PureState paper_omega() { return diagonal_state(2, {0.6, 0.4}); }

}  // namespace entcat
