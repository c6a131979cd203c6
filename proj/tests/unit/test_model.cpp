#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "agency/error.hpp"
#include "agency/model.hpp"
#include "agency/tmaze.hpp"
#include "properties.hpp"

using namespace agency;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<ViolationKind> kinds(const GenerativeModel& m) {
  std::vector<ViolationKind> out;
  for (const auto& v : validate_model(m)) out.push_back(v.kind);
  return out;
}

}  // namespace

TEST_CASE("canonical models are valid") {
  CHECK(validate_model(build_canonical_model()).empty());
  CHECK(validate_model(build_multimodality_model()).empty());
}

TEST_CASE("validate_model flags broken models") {
  auto leaky = build_canonical_model();
  leaky.B[0](0, leaky.state_index("Trap")) = 0.9;
  const auto v = validate_model(leaky);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::TransitionNotStochastic);
  CHECK(v[0].location == "B[Left][Start]");
  CHECK(validate_model(leaky) == v);

  auto short_c = build_canonical_model();
  short_c.C.pop_back();
  CHECK(kinds(short_c) == std::vector{ViolationKind::PreferenceShapeMismatch});

  auto dup = build_canonical_model();
  dup.action_labels[1] = "Left";
  CHECK(kinds(dup) == std::vector{ViolationKind::DuplicateLabel});

  auto missing_b = build_canonical_model();
  missing_b.B.pop_back();
  CHECK(kinds(missing_b) == std::vector{ViolationKind::TransitionCountMismatch});

  auto bad_d = build_canonical_model();
  bad_d.D[0] = 0.5;
  CHECK(kinds(bad_d) == std::vector{ViolationKind::PriorNotNormalized});

  auto bad_mods = build_multimodality_model();
  bad_mods.modalities->back().labels = {"Left", "Right"};
  CHECK(kinds(bad_mods) == std::vector{ViolationKind::ModalityProductMismatch});

  try {
    require_valid(short_c);
    FAIL("expected InvalidModel");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidModel);
    CHECK(std::string(e.what()).find("PreferenceShapeMismatch") != std::string::npos);
  }
}

TEST_CASE("label lookups") {
  const auto m = build_canonical_model();
  CHECK(m.action_index("Cue") == 2);
  CHECK(m.obs_index("LeftObs") == 3);
  CHECK(m.state_index("CueLeft") == 3);
  CHECK_THROWS_AS(m.action_index("Jump"), Error);
  CHECK(initial_belief(m).dist == Categorical::delta(m.state_labels, "Start"));
  CHECK(point_belief(m, "Trap").dist.prob("Trap") == 1.0);
}

TEST_CASE("model JSON round-trip") {
  for (const auto& m : {build_canonical_model(), build_multimodality_model()}) {
    const auto text = dump_model(m);
    CHECK(model_from_json(nlohmann::ordered_json::parse(text)) == m);
    CHECK(dump_model(model_from_json(nlohmann::ordered_json::parse(text))) == text);
  }
  const auto r = agency::testing::check_model_json_roundtrip(31);
  INFO(r.first_failure);
  CHECK(r.cases >= 100);
  CHECK(r.ok());
}

TEST_CASE("model loader enforces invariants") {
  auto j = model_to_json(build_canonical_model());
  j["C"].erase(j["C"].size() - 1);
  try {
    model_from_json(j);
    FAIL("expected InvalidModel");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidModel);
  }
  auto missing = model_to_json(build_canonical_model());
  missing.erase("A");
  try {
    model_from_json(missing);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
  }
  try {
    load_model("/nonexistent/model.json");
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoError);
  }
}

TEST_CASE("checked-in model files regenerate byte-identically") {
  const std::filesystem::path dir = std::filesystem::path(AGENCY_SOURCE_DIR) / "models";
  CHECK(slurp(dir / "minimal-tmaze.json") == dump_model(build_canonical_model()));
  CHECK(slurp(dir / "multimodality-tmaze.json") == dump_model(build_multimodality_model()));
  CHECK(load_model(dir / "minimal-tmaze.json") == build_canonical_model());
}
