#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "entcat/spectrum.hpp"

namespace entcat {

struct ReportRow {
  std::string name;
  bool pass = false;
  nlohmann::json details;
};

// Aggregated reproduction report; every verdict embeds its certificate so
// the table can be re-checked offline.
struct RunReport {
  std::string command;
  nlohmann::json inputs;
  nlohmann::json tolerances;
  std::vector<ReportRow> rows;
  bool pass = true;

  nlohmann::json to_json() const;
};

// Brute-force conversion-fidelity evaluator over the majorization polytope:
// coarse grid plus local refinement, independent of the projected-ascent
// path. Supports targets with at most three nonzero coefficients.
double grid_conversion_fidelity(const Spectrum& alpha, const Spectrum& beta);

// Reruns the worked numeric claims end to end. Seed feeds every randomized
// row; trials scales the attack row (default matches the report contract).
RunReport run_paper_repro(std::uint64_t seed, int attack_trials = 10000);

}  // namespace entcat
