#include "entcat/io.hpp"

#include <fstream>
#include <stdexcept>

#include "entcat/mixedcat.hpp"

namespace entcat {

using nlohmann::json;

namespace {

json complex_list(const CVec& v) {
  json data = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    data.push_back({v(i).real(), v(i).imag()});
  return data;
}

CVec parse_complex_list(const json& data) {
  if (!data.is_array()) throw std::invalid_argument("state json: data not an array");
  CVec v(static_cast<Eigen::Index>(data.size()));
  Eigen::Index i = 0;
  for (const auto& e : data) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw std::invalid_argument("state json: entry is not [re,im]");
    v(i++) = cxd(e[0].get<double>(), e[1].get<double>());
  }
  return v;
}

}  // namespace

json state_to_json(const PureState& psi) {
  return json{{"kind", "pure"},
              {"dimA", psi.dimA()},
              {"dimB", psi.dimB()},
              {"data", complex_list(psi.amplitudes())}};
}

json state_to_json(const DensityMatrix& rho) {
  CVec flat(static_cast<Eigen::Index>(rho.dim()) * rho.dim());
  for (int r = 0; r < rho.dim(); ++r)
    for (int c = 0; c < rho.dim(); ++c)
      flat(static_cast<Eigen::Index>(r) * rho.dim() + c) = rho.matrix()(r, c);
  return json{{"kind", "density"},
              {"dimA", rho.dimA()},
              {"dimB", rho.dimB()},
              {"data", complex_list(flat)}};
}

PureState pure_from_json(const json& j) {
  return PureState(j.at("dimA").get<int>(), j.at("dimB").get<int>(),
                   parse_complex_list(j.at("data")));
}

DensityMatrix density_from_json(const json& j) {
  const int da = j.at("dimA").get<int>();
  const int db = j.at("dimB").get<int>();
  const CVec flat = parse_complex_list(j.at("data"));
  const Eigen::Index d = static_cast<Eigen::Index>(da) * db;
  if (flat.size() != d * d)
    throw std::invalid_argument("state json: density data length mismatch");
  CMat m(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) m(r, c) = flat(r * d + c);
  return DensityMatrix(da, db, std::move(m));
}

StateVariant state_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "pure") return pure_from_json(j);
  if (kind == "density") return density_from_json(j);
  throw std::invalid_argument("state json: unknown kind '" + kind + "'");
}

Spectrum spectrum_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("spectrum json: not an array");
  std::vector<double> v;
  for (const auto& e : j) {
    if (!e.is_number()) throw std::invalid_argument("spectrum json: non-numeric entry");
    v.push_back(e.get<double>());
  }
  return Spectrum(std::move(v));
}

namespace {

PureState bell_state() {
  CVec amp = CVec::Zero(4);
  amp(0) = amp(3) = 1.0 / std::sqrt(2.0);
  return PureState(2, 2, std::move(amp));
}

constexpr const char* kEpsPrefix = "psi-eq14:";

}  // namespace

bool is_preset_name(const std::string& name) {
  return name == "psi-eq8a" || name == "phi-eq8b" || name == "phitilde-eq10" ||
         name == "eta-55" || name == "omega-catalyst" || name == "bell" ||
         name.rfind(kEpsPrefix, 0) == 0;
}

StateVariant load_state(const std::string& name_or_path) {
  if (name_or_path == "psi-eq8a") return paper_psi();
  if (name_or_path == "phi-eq8b") return paper_phi();
  if (name_or_path == "phitilde-eq10") return paper_phitilde();
  if (name_or_path == "eta-55") return paper_eta();
  if (name_or_path == "omega-catalyst") return paper_omega();
  if (name_or_path == "bell") return bell_state();
  if (name_or_path.rfind(kEpsPrefix, 0) == 0) {
    const double eps = std::stod(name_or_path.substr(std::string(kEpsPrefix).size()));
    return paper_psi_eps(eps);
  }
  std::ifstream in(name_or_path);
  if (!in) throw std::invalid_argument("cannot open state file: " + name_or_path);
  json j;
  in >> j;
  return state_from_json(j);
}

}  // namespace entcat
