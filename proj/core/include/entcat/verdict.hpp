#pragma once

#include <string>

#include <nlohmann/json.hpp>

namespace entcat {

using json = nlohmann::json;

enum class Decision { Possible, Impossible, Unknown };

inline const char* to_string(Decision d) {
  switch (d) {
    case Decision::Possible: return "Possible";
    case Decision::Impossible: return "Impossible";
    default: return "Unknown";
  }
}

// Three-valued decision with a machine-checkable certificate. Possible and
// Impossible always carry a re-checkable witness; Unknown carries the
// exhausted search budget.
struct Verdict {
  Decision decision = Decision::Unknown;
  json certificate;

  // Process exit-code contract: 0 Possible, 1 Impossible, 2 Unknown.
  int exit_code() const { return static_cast<int>(decision); }
};

}  // namespace entcat
