// Acceptance runner: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "agency/empowerment.hpp"
#include "agency/inference.hpp"
#include "agency/phenotyping.hpp"
#include "agency/report_io.hpp"
#include "agency/tmaze.hpp"
#include "cli.hpp"
#include "properties.hpp"

using namespace agency;

namespace {

const double kLog2Of3 = std::log2(3.0);

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

const GenerativeModel& canonical() {
  static const GenerativeModel m = build_canonical_model();
  return m;
}

EpisodeTrace episode(const GenerativeModel& m, Context c) {
  return run_episode(m, build_minimal_env(c), {});
}

Verdict baseline() {
  Verdict v;
  const auto bits = blahut_arimoto(subjective_channel(canonical(), canonical().prior())).bits;
  v.require(std::abs(bits - 1.0) <= 1e-6, "got " + num(bits));
  v.detail = v.pass ? num(bits) + " bits" : v.detail;
  return v;
}

Verdict trap() {
  Verdict v;
  for (const char* action : {"Left", "Right"}) {
    for (auto ctx : {Context::CheeseLeft, Context::CheeseRight}) {
      auto env = build_minimal_env(ctx);
      const auto& m = canonical();
      const std::size_t a = m.action_index(action);
      Categorical filtered = env.context_marginal_prior();
      const std::size_t obs = env.step(a);
      filtered = env.filter(filtered, a, obs);
      const auto belief = bayesian_update(initial_belief(m), a, obs, m);
      const double subj = blahut_arimoto(subjective_channel(m, belief.dist)).bits;
      const double obj = blahut_arimoto(objective_channel(env, filtered)).bits;
      v.require(std::abs(subj) <= 1e-9 && std::abs(obj) <= 1e-9,
                std::string(action) + ": subjective " + num(subj) + ", objective " + num(obj));
    }
  }
  return v;
}

Verdict post_cue() {
  Verdict v;
  const auto& m = canonical();
  for (auto ctx : {Context::CheeseLeft, Context::CheeseRight}) {
    auto env = build_minimal_env(ctx);
    const std::size_t obs = env.step(kActionCue);
    const auto belief = bayesian_update(initial_belief(m), kActionCue, obs, m);
    const double bits = blahut_arimoto(subjective_channel(m, belief.dist)).bits;
    v.require(std::abs(bits - kLog2Of3) <= 1e-6, "got " + num(bits));
  }
  return v;
}

Verdict epistemic() {
  Verdict v;
  const std::vector<double> expected{0.0, 0.0, 1.0};
  std::string got;
  for (std::size_t a = 0; a < 3; ++a) {
    const double g = expected_info_gain(initial_belief(canonical()), a, canonical());
    got += (a ? ", " : "") + num(g);
    v.require(std::abs(g - expected[a]) <= 1e-9, canonical().action_labels[a] + " " + num(g));
  }
  if (v.pass) v.detail = "[" + got + "] bits";
  return v;
}

Verdict trajectory() {
  Verdict v;
  const auto left = episode(canonical(), Context::CheeseLeft);
  const auto right = episode(canonical(), Context::CheeseRight);
  v.require(left.actions() == std::vector<std::string>{"Cue", "Left"} &&
                left.observations() == std::vector<std::string>{"LeftObs", "Cheese"},
            "CheeseLeft episode deviates");
  v.require(right.actions() == std::vector<std::string>{"Cue", "Right"} &&
                right.observations() == std::vector<std::string>{"RightObs", "Cheese"},
            "CheeseRight episode deviates");
  return v;
}

Verdict actual_zero() {
  Verdict v;
  for (auto ctx : {Context::CheeseLeft, Context::CheeseRight}) {
    const auto t = episode(canonical(), ctx);
    for (auto variant : {EmpowermentVariant::SubjectiveActual, EmpowermentVariant::ObjectiveActual}) {
      for (double b : t.bits(variant)) {
        v.require(b == 0.0, std::string(to_string(variant)) + " = " + num(b));
      }
    }
  }
  return v;
}

Verdict multimodality() {
  Verdict v;
  const auto m = build_multimodality_model();
  const auto full = subjective_channel(m, m.prior());
  const double all = blahut_arimoto(full).bits;
  const double reward = blahut_arimoto(modality_restricted_channel(full, {"Reward"})).bits;
  v.require(std::abs(all - kLog2Of3) <= 1e-6, "full " + num(all));
  v.require(std::abs(reward - 1.0) <= 1e-6, "reward " + num(reward));
  if (v.pass) v.detail = "full " + num(all) + ", reward " + num(reward);
  return v;
}

Verdict oracle() {
  Verdict v;
  const auto r = agency::testing::check_blahut_arimoto_matches_oracle(2024, 100, 1000);
  v.require(r.cases == 100 && r.ok(), r.first_failure);
  if (v.pass) v.detail = "100 channels, worst |BA - oracle| " + num(r.worst);
  return v;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string cli_out(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  if (cli::run_cli(args, out, err) != cli::kExitOk) return "<error: " + err.str() + ">";
  return out.str();
}

Verdict properties() {
  using namespace agency::testing;
  Verdict v;
  std::size_t suites = 0;
  for (const auto& r : {check_posterior_consistency(901), check_info_gain_two_routes(902),
                        check_capacity_bounds(903), check_duplicate_input_invariance(904),
                        check_modality_restriction_monotone(905),
                        check_capacity_dominates_actual(906),
                        check_capacity_zero_iff_identical_rows(907)}) {
    v.require(r.cases >= 100 && r.ok(), r.name + ": " + r.first_failure);
    ++suites;
  }
  const auto golden = std::filesystem::path(AGENCY_SOURCE_DIR) / "tests" / "golden";
  const auto run = cli_out({"run", "--seeds", "0-3", "--format", "json"});
  v.require(run == slurp(golden / "run-minimal-seeds0-3.json"), "run golden differs");
  const auto battery = cli_out({"phenotype", "--seeds", "0-7", "--presets",
                                "standard,preference-inverted,likelihood-corrupted:0.5,flat-preference",
                                "--format", "json"});
  v.require(battery == slurp(golden / "phenotype-battery.json"), "phenotype golden differs");
  if (v.pass) v.detail = std::to_string(suites) + " property suites, 2 golden files";
  return v;
}

Verdict phenotypes() {
  Verdict v;
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 0; s < 16; ++s) seeds.push_back(s);
  const auto report = run_battery(
      canonical(), [](std::uint64_t s) { return build_minimal_env(s); }, seeds,
      {ManipulationSpec::of(Preset::Standard), ManipulationSpec::of(Preset::PreferenceInverted)});
  v.require(report.summary("standard").classes() ==
                std::vector{PhenotypeClass::Intermediate, PhenotypeClass::High},
            "standard classes differ");
  v.require(report.summary("preference-inverted").classes() ==
                std::vector{PhenotypeClass::Intermediate, PhenotypeClass::Zero},
            "preference-inverted classes differ");
  double previous = INFINITY;
  std::string sweep;
  for (double alpha : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const auto m =
        apply_manipulation(canonical(), ManipulationSpec::of(Preset::LikelihoodCorrupted, alpha));
    const double gain = expected_info_gain(initial_belief(m), kActionCue, m);
    v.require(gain <= previous + 1e-12, "info gain rises at alpha " + num(alpha));
    previous = gain;
    sweep += (sweep.empty() ? "" : ", ") + num(gain);
  }
  if (v.pass) v.detail = "Cue info gain over alpha sweep [" + sweep + "]";
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"baseline empowerment at Start = 1 bit", baseline},
      {"trap empowerment = 0 (subjective and objective)", trap},
      {"post-cue empowerment = log2 3", post_cue},
      {"epistemic value at Start = [0, 0, 1]", epistemic},
      {"argmax trajectory: Cue then cheese arm", trajectory},
      {"actual empowerment of argmax policy = 0", actual_zero},
      {"multimodality: full log2 3, reward 1 bit", multimodality},
      {"Blahut-Arimoto matches grid oracle", oracle},
      {"property suites and golden determinism", properties},
      {"phenotype battery and alpha sweep", phenotypes},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("threw: ") + e.what();
    }
    if (!v.pass) ++failures;
    std::printf("%s  %2zu  %s%s%s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                v.detail.empty() ? "" : "  -- ", v.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
