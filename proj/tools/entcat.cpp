#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "entcat/catalysis.hpp"
#include "entcat/io.hpp"
#include "entcat/mixedcat.hpp"
#include "entcat/purify.hpp"
#include "entcat/qcore.hpp"
#include "entcat/repro.hpp"
#include "entcat/transform.hpp"

namespace {

using entcat::Spectrum;
using nlohmann::json;

constexpr int kUsageError = 64;

// State arguments accept preset names, file paths, or inline JSON spectra
// (a bare real array is read as Schmidt-coefficient squares).
Spectrum spectrum_arg(const std::string& arg) {
  if (!arg.empty() && arg.front() == '[')
    return entcat::spectrum_from_json(json::parse(arg));
  const entcat::StateVariant s = entcat::load_state(arg);
  if (const auto* p = std::get_if<entcat::PureState>(&s))
    return entcat::schmidt_spectrum(*p);
  throw std::invalid_argument("expected a pure state or inline spectrum: " + arg);
}

entcat::PureState pure_arg(const std::string& arg) {
  const entcat::StateVariant s = entcat::load_state(arg);
  if (const auto* p = std::get_if<entcat::PureState>(&s)) return *p;
  throw std::invalid_argument("expected a pure state: " + arg);
}

void print_verdict(const entcat::Verdict& v, bool as_json) {
  if (as_json) {
    std::cout << json{{"decision", to_string(v.decision)},
                      {"certificate", v.certificate}}.dump(2)
              << "\n";
  } else {
    std::cout << to_string(v.decision) << "\n"
              << v.certificate.dump(2) << "\n";
  }
}

struct Options {
  std::string arg1, arg2;
  std::string psi = "psi-eq8a", phi = "phi-eq8b", eta = "eta-55";
  std::string core = "phitilde-eq10";
  std::string catalyst;
  double tolv = -1.0;
  double lambda = 0.5;
  double epsilon = 1.0;
  double delta = 0.01;
  int search_dim = 0;
  int grid = 40;
  int trials = 10000;
  std::uint64_t seed = 0;
  bool as_json = false;
};

int cmd_schmidt(const Options& o) {
  const Spectrum s = entcat::schmidt_spectrum(pure_arg(o.arg1));
  if (o.as_json) std::cout << json(s.values()).dump() << "\n";
  else {
    for (std::size_t i = 0; i < s.size(); ++i)
      std::cout << (i ? " " : "") << s[i];
    std::cout << "\n";
  }
  return 0;
}

int cmd_majorize(const Options& o) {
  const Spectrum a = spectrum_arg(o.arg1), b = spectrum_arg(o.arg2);
  const entcat::Verdict v = o.tolv >= 0.0 ? entcat::locc_pure(a, b, o.tolv)
                                          : entcat::locc_pure(a, b);
  print_verdict(v, o.as_json);
  return v.exit_code();
}

int cmd_decide(const Options& o) {
  const Spectrum a = spectrum_arg(o.arg1), b = spectrum_arg(o.arg2);
  entcat::Verdict v;
  if (!o.catalyst.empty()) {
    v = entcat::elocc_with_catalyst(a, b, spectrum_arg(o.catalyst));
  } else if (o.search_dim > 0) {
    entcat::CatalystSearchConfig cfg;
    cfg.max_dim = o.search_dim;
    cfg.grid_steps = o.grid;
    cfg.seed = o.seed;
    v = entcat::catalyst_search(a, b, cfg);
  } else {
    v = o.tolv >= 0.0 ? entcat::locc_pure(a, b, o.tolv) : entcat::locc_pure(a, b);
  }
  print_verdict(v, o.as_json);
  return v.exit_code();
}

int cmd_lemma1(const Options& o) {
  const entcat::RankTwoClass cls = entcat::build_class(
      o.lambda, pure_arg(o.psi), pure_arg(o.phi), pure_arg(o.eta));
  const entcat::Verdict v = entcat::lemma1_check(cls.spec);
  print_verdict(v, o.as_json);
  return v.exit_code();
}

int cmd_protocol(const Options& o) {
  const entcat::RankTwoClass cls = entcat::build_class(
      o.lambda, pure_arg(o.psi), pure_arg(o.phi), pure_arg(o.eta));
  const Spectrum omega = o.catalyst.empty() ? entcat::paper_omega_spectrum()
                                            : spectrum_arg(o.catalyst);
  const entcat::ProtocolResult r = entcat::elocc_protocol_execute(cls.spec, omega);
  const double dist = entcat::trace_distance(r.rho_out, cls.rho);
  json out{{"p_convert", r.transcript.p_convert},
           {"p_keep", r.transcript.p_keep},
           {"a_support", r.transcript.a_support},
           {"trace_distance_to_rho", dist}};
  if (o.as_json) std::cout << out.dump(2) << "\n";
  else
    std::cout << "branch probabilities: " << r.transcript.p_convert << " / "
              << r.transcript.p_keep << "\noutput matches rho within " << dist
              << "\n";
  return dist <= 1e-10 ? 0 : 1;
}

int cmd_bounds(const Options& o) {
  const Spectrum beta = spectrum_arg(o.phi);
  const Spectrum core = spectrum_arg(o.core);
  const double upper = entcat::f_locc_upper_bound(o.lambda, o.epsilon, beta);
  const entcat::EloccBound lower = entcat::f_elocc_lower_bound(o.lambda, o.epsilon);
  const double eps_t = entcat::epsilon_threshold(core, beta);
  json out{{"lambda", o.lambda},
           {"epsilon", o.epsilon},
           {"f_locc_upper", upper},
           {"f_elocc_lower", lower.value},
           {"elocc_protocol", lower.protocol},
           {"epsilon_threshold", eps_t}};
  if (o.as_json) std::cout << out.dump(2) << "\n";
  else
    std::cout << "F_LOCC <= " << upper << "\nF_ELOCC >= " << lower.value
              << "\nepsilon threshold = " << eps_t << "\n";
  return 0;
}

int cmd_radius(const Options& o) {
  const Spectrum a = spectrum_arg(o.arg1), g = spectrum_arg(o.arg2);
  const double eps = entcat::epsilon_order_radius(a, g);
  const double delta = entcat::catalysis_free_radius(a, g);
  if (o.as_json)
    std::cout << json{{"epsilon_order_radius", eps}, {"delta", delta}}.dump(2)
              << "\n";
  else
    std::cout << "epsilon order radius = " << eps << "\ndelta = " << delta << "\n";
  return 0;
}

int cmd_close_pair(const Options& o) {
  const entcat::CloseMixedPair p = entcat::close_mixed_catalysis_pair(o.delta);
  json out{{"delta", o.delta},
           {"lambda", p.lambda},
           {"fidelity", p.fidelity},
           {"omega", entcat::schmidt_spectrum(p.omega).values()}};
  if (o.as_json) {
    out["sigma"] = entcat::state_to_json(p.sigma);
    out["rho"] = entcat::state_to_json(p.rho);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "lambda = " << p.lambda << ", fidelity = " << p.fidelity
              << " > " << 1.0 - o.delta << "\n";
  }
  return 0;
}

int cmd_attack(const Options& o) {
  entcat::PureState bell = pure_arg("bell");
  entcat::CMat zeta_m =
      (entcat::CMat::Identity(4, 4) -
       bell.amplitudes() * bell.amplitudes().adjoint()) / 3.0;
  entcat::DensityMatrix zeta(2, 2, zeta_m);
  entcat::KentClassState st = entcat::make_kent_state(o.lambda, bell, zeta);
  std::optional<entcat::DensityMatrix> omega;
  if (!o.catalyst.empty() && o.catalyst != "none")
    omega = entcat::to_density(pure_arg(o.catalyst));
  const entcat::AttackReport rep =
      entcat::random_separable_attack(st, omega, o.trials, o.seed);
  const bool bounded = rep.max_fidelity <= rep.input_fidelity + 1e-9;
  if (o.as_json) {
    json lines = json::array();
    for (const auto& t : rep.transcript)
      lines.push_back({{"trial", t.trial}, {"branch_count", t.branch_count},
                       {"prob", t.prob}, {"fidelity_out", t.fidelity_out},
                       {"catalytic", t.catalytic}});
    std::cout << json{{"lambda", o.lambda}, {"lambda0", st.lambda0},
                      {"trials", o.trials},
                      {"input_fidelity", rep.input_fidelity},
                      {"max_fidelity_catalytic", rep.max_fidelity},
                      {"max_fidelity_any", rep.max_fidelity_any},
                      {"degenerate_skipped", rep.degenerate_skipped},
                      {"bounded", bounded},
                      {"transcript", lines}}.dump(2)
              << "\n";
  } else {
    std::cout << "input fidelity " << rep.input_fidelity
              << ", best catalytic attack " << rep.max_fidelity << " ("
              << (bounded ? "bounded" : "EXCEEDED") << ")\n";
  }
  return bounded ? 0 : 1;
}

int cmd_paper_repro(const Options& o) {
  const entcat::RunReport rep = entcat::run_paper_repro(o.seed, o.trials);
  if (o.as_json) {
    std::cout << rep.to_json().dump(2) << "\n";
  } else {
    for (const auto& row : rep.rows)
      std::cout << (row.pass ? "PASS" : "FAIL") << "  " << row.name << "\n";
    std::cout << (rep.pass ? "all rows pass" : "FAILURES above") << "\n";
    for (const auto& row : rep.rows)
      if (!row.pass) std::cout << row.name << ": " << row.details.dump() << "\n";
  }
  return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decision toolkit for bipartite entanglement transformations"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* c) {
    c->add_flag("--json", o.as_json, "machine-readable output");
    c->add_option("--seed", o.seed, "rng seed (default 0)");
    c->add_option("--tol", o.tolv, "majorization tolerance override");
  };

  auto* schmidt = app.add_subcommand("schmidt", "Schmidt spectrum of a pure state");
  schmidt->add_option("state", o.arg1)->required();
  add_common(schmidt);

  auto* majorize = app.add_subcommand("majorize", "majorization test alpha ≺ beta");
  majorize->add_option("alpha", o.arg1)->required();
  majorize->add_option("beta", o.arg2)->required();
  add_common(majorize);

  auto* decide = app.add_subcommand("decide", "LOCC/ELOCC convertibility verdict");
  decide->add_option("source", o.arg1)->required();
  decide->add_option("target", o.arg2)->required();
  decide->add_option("--catalyst", o.catalyst, "catalyst spectrum or state");
  decide->add_option("--search-dim", o.search_dim, "search catalysts up to this rank");
  decide->add_option("--grid", o.grid, "search grid resolution");
  add_common(decide);

  auto* lemma1 = app.add_subcommand("lemma1", "necessary-condition check on the rank-two class");
  lemma1->add_option("--lambda", o.lambda);
  lemma1->add_option("--psi", o.psi);
  lemma1->add_option("--phi", o.phi);
  lemma1->add_option("--eta", o.eta);
  add_common(lemma1);

  auto* protocol = app.add_subcommand("protocol", "run the two-branch conversion protocol");
  protocol->add_option("--lambda", o.lambda);
  protocol->add_option("--psi", o.psi);
  protocol->add_option("--phi", o.phi);
  protocol->add_option("--eta", o.eta);
  protocol->add_option("--catalyst", o.catalyst);
  add_common(protocol);

  auto* bounds = app.add_subcommand("bounds", "fidelity bounds at (lambda, epsilon)");
  bounds->add_option("--lambda", o.lambda);
  bounds->add_option("--epsilon", o.epsilon);
  bounds->add_option("--psi", o.core, "core state whose spectrum feeds the threshold");
  bounds->add_option("--phi", o.phi);
  add_common(bounds);

  auto* radius = app.add_subcommand("radius", "catalysis-free neighborhood radius");
  radius->add_option("alpha", o.arg1)->required();
  radius->add_option("gamma", o.arg2)->required();
  add_common(radius);

  auto* close_pair = app.add_subcommand("close-pair", "close pair split by catalysis");
  close_pair->add_option("--delta", o.delta);
  add_common(close_pair);

  auto* attack = app.add_subcommand("attack", "random separable attacks on a Kent-class state");
  attack->add_option("--lambda", o.lambda);
  attack->add_option("--trials", o.trials);
  attack->add_option("--catalyst", o.catalyst, "catalyst state, or 'none'");
  add_common(attack);

  auto* repro = app.add_subcommand("paper-repro", "rerun all worked numeric claims");
  repro->add_option("--trials", o.trials, "attack trials per run");
  add_common(repro);

  CLI11_PARSE(app, argc, argv);

  try {
    if (schmidt->parsed()) return cmd_schmidt(o);
    if (majorize->parsed()) return cmd_majorize(o);
    if (decide->parsed()) return cmd_decide(o);
    if (lemma1->parsed()) return cmd_lemma1(o);
    if (protocol->parsed()) return cmd_protocol(o);
    if (bounds->parsed()) return cmd_bounds(o);
    if (radius->parsed()) return cmd_radius(o);
    if (close_pair->parsed()) return cmd_close_pair(o);
    if (attack->parsed()) return cmd_attack(o);
    if (repro->parsed()) return cmd_paper_repro(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}
