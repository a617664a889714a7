#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>

#include "entcat/io.hpp"
#include "entcat/mixedcat.hpp"
#include "entcat/states.hpp"
#include "support/oracles.hpp"

using namespace entcat;
using nlohmann::json;

TEST_CASE("pure state round trip is exact") {
  TrialRng rng(71, 0);
  const PureState psi = testsupport::random_pure(3, 4, rng);
  const json j = state_to_json(psi);
  CHECK(j.at("kind") == "pure");
  const PureState back = pure_from_json(j);
  CHECK(back.dimA() == 3);
  CHECK(back.dimB() == 4);
  // Serialized doubles re-parse bit for bit.
  const json j2 = state_to_json(pure_from_json(json::parse(j.dump())));
  CHECK(j2 == j);
  CHECK(max_abs(back.amplitudes() - psi.amplitudes()) == 0.0);
}

TEST_CASE("density matrix round trip is exact") {
  TrialRng rng(72, 0);
  const DensityMatrix rho = to_density(testsupport::random_pure(2, 3, rng));
  const json j = state_to_json(rho);
  CHECK(j.at("kind") == "density");
  const DensityMatrix back = density_from_json(json::parse(j.dump()));
  CHECK(max_abs(back.matrix() - rho.matrix()) == 0.0);
}

TEST_CASE("malformed payloads are rejected") {
  CHECK_THROWS(state_from_json(json{{"kind", "pure"}}));
  CHECK_THROWS(state_from_json(json{{"kind", "wibble"},
                                    {"dimA", 1}, {"dimB", 1},
                                    {"data", json::array()}}));
  json bad = state_to_json(paper_omega());
  bad["data"][0] = "not a pair";
  CHECK_THROWS(state_from_json(bad));
  json short_density{{"kind", "density"}, {"dimA", 2}, {"dimB", 1},
                     {"data", {{1.0, 0.0}}}};
  CHECK_THROWS(state_from_json(short_density));
  CHECK_THROWS(spectrum_from_json(json{{"not", "an array"}}));
  CHECK_THROWS(spectrum_from_json(json::array({0.5, "x"})));
}

TEST_CASE("presets resolve by name") {
  for (const char* name : {"psi-eq8a", "phi-eq8b", "phitilde-eq10", "eta-55",
                           "omega-catalyst", "bell", "psi-eq14:0.5"}) {
    CHECK(is_preset_name(name));
    const StateVariant s = load_state(name);
    CHECK(std::holds_alternative<PureState>(s));
  }
  CHECK_FALSE(is_preset_name("no-such-preset"));
  CHECK_THROWS(load_state("/nonexistent/state.json"));
  const auto bell = std::get<PureState>(load_state("bell"));
  CHECK(schmidt_spectrum(bell)[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("states load from files") {
  const std::string path = "io_roundtrip_state.json";
  {
    std::ofstream out(path);
    out << state_to_json(paper_phi());
  }
  const StateVariant s = load_state(path);
  REQUIRE(std::holds_alternative<PureState>(s));
  CHECK(std::norm(std::get<PureState>(s).overlap(paper_phi())) ==
        doctest::Approx(1.0).epsilon(1e-15));
  std::remove(path.c_str());
}

TEST_CASE("spectrum json accepts inline arrays") {
  const Spectrum s = spectrum_from_json(json::parse("[0.25,0.5,0.25]"));
  CHECK(s[0] == doctest::Approx(0.5));
  CHECK(s.size() == 3);
}
