#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "entcat/spectrum.hpp"
#include "entcat/states.hpp"

namespace entcat {

using StateVariant = std::variant<PureState, DensityMatrix>;

// JSON state format:
//   {"kind":"pure"|"density","dimA":n,"dimB":m,"data":[[re,im],...]}
// with density data row-major. Serialized numbers round-trip exactly.
nlohmann::json state_to_json(const PureState& psi);
nlohmann::json state_to_json(const DensityMatrix& rho);
StateVariant state_from_json(const nlohmann::json& j);

PureState pure_from_json(const nlohmann::json& j);
DensityMatrix density_from_json(const nlohmann::json& j);

Spectrum spectrum_from_json(const nlohmann::json& j);

// Resolves either a built-in preset name (psi-eq8a, phi-eq8b, phitilde-eq10,
// eta-55, omega-catalyst, bell, psi-eq14:<eps>) or a path to a JSON file.
StateVariant load_state(const std::string& name_or_path);
bool is_preset_name(const std::string& name);

}  // namespace entcat
