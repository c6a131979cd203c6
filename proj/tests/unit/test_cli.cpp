#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using agency::cli::run_cli;
using Json = nlohmann::ordered_json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path golden(const std::string& name) {
  return fs::path(AGENCY_SOURCE_DIR) / "tests" / "golden" / name;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "agency_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

std::string fixed5(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.5f", x);
  return buf;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

}  // namespace

TEST_CASE("run table shows baseline then post-cue empowerment") {
  const auto r = cli({"run", "--model", "minimal-tmaze", "--seeds", "0", "--format", "table"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    const auto cols = split_ws(line);
    if (cols.size() == 11 && (cols[0] == "1" || cols[0] == "2")) rows.push_back(cols);
  }
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][6] == "1.00000");
  CHECK(rows[1][6] == "1.58496");
  CHECK(rows[0][7] == "0.00000");
}

TEST_CASE("preference inversion empties the second step") {
  const auto r = cli({"run", "--model", "minimal-tmaze", "--preset", "preference-inverted",
                      "--seeds", "0", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  const auto& step2 = j["traces"][0]["steps"][1];
  CHECK(step2["empowerment"]["subjective_potential"]["bits"].get<double>() < 1e-9);
  CHECK(step2["phenotype"] == "Zero");
}

TEST_CASE("table values round-trip from JSON") {
  const std::vector<std::string> base{"run", "--seeds", "0-3", "--mode", "softmax", "--gamma", "2"};
  auto table_args = base;
  table_args.insert(table_args.end(), {"--format", "table"});
  auto json_args = base;
  json_args.insert(json_args.end(), {"--format", "json"});
  const auto table = cli(table_args);
  const auto json = cli(json_args);
  REQUIRE(table.code == 0);
  REQUIRE(json.code == 0);
  const auto j = Json::parse(json.out);

  std::istringstream in(table.out);
  std::string line;
  std::size_t trace = 0;
  std::size_t checked = 0;
  bool seen_header = false;
  while (std::getline(in, line)) {
    const auto cols = split_ws(line);
    if (cols.empty()) continue;
    if (cols[0] == "seed") {
      if (seen_header) ++trace;
      seen_header = true;
      CHECK(cols[1] == std::to_string(j["traces"][trace]["seed"].get<std::uint64_t>()));
      continue;
    }
    if (cols[0] == "step") continue;
    const auto& s = j["traces"][trace]["steps"][std::stoul(cols[0]) - 1];
    Json e;
    for (const auto& x : s["efe"]) {
      if (x["action"] == s["action"]) e = x;
    }
    REQUIRE_FALSE(e.is_null());
    CHECK(cols[1] == s["action"].get<std::string>());
    CHECK(cols[2] == s["observation"].get<std::string>());
    CHECK(cols[3] == fixed5(e["epistemic_bits"].get<double>()));
    CHECK(cols[4] == fixed5(e["pragmatic"].get<double>()));
    CHECK(cols[5] == fixed5(e["efe"].get<double>()));
    const auto& emp = s["empowerment"];
    CHECK(cols[6] == fixed5(emp["subjective_potential"]["bits"].get<double>()));
    CHECK(cols[7] == fixed5(emp["subjective_actual"]["bits"].get<double>()));
    CHECK(cols[8] == fixed5(emp["objective_potential"]["bits"].get<double>()));
    CHECK(cols[9] == fixed5(emp["objective_actual"]["bits"].get<double>()));
    CHECK(cols[10] == s["phenotype"].get<std::string>());
    ++checked;
  }
  CHECK(checked == 8);
}

TEST_CASE("usage errors exit 2 and name the field") {
  const auto horizon = cli({"run", "--horizon", "0"});
  CHECK(horizon.code == 2);
  CHECK(horizon.err.find("horizon") != std::string::npos);

  const auto presets = cli({"phenotype", "--presets", ""});
  CHECK(presets.code == 2);
  CHECK(presets.err.find("presets") != std::string::npos);

  const auto mode = cli({"run", "--mode", "greedy"});
  CHECK(mode.code == 2);
  CHECK(mode.err.find("mode") != std::string::npos);

  const auto seeds = cli({"run", "--seeds", "5-2"});
  CHECK(seeds.code == 2);
  CHECK(seeds.err.find("seeds") != std::string::npos);

  const auto alpha = cli({"run", "--preset", "likelihood-corrupted:2"});
  CHECK(alpha.code == 2);
  CHECK(alpha.err.find("preset") != std::string::npos);

  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({}).code == 2);
  CHECK(cli({"run", "--model", "/no/such/model.json"}).code == 2);
}

TEST_CASE("seed list parsing") {
  CHECK(agency::cli::parse_seed_list("0,1,5-7", "seeds") ==
        std::vector<std::uint64_t>{0, 1, 5, 6, 7});
  CHECK_THROWS_AS(agency::cli::parse_seed_list("x", "seeds"), agency::cli::ConfigError);
  CHECK_THROWS_AS(agency::cli::parse_seed_list("", "seeds"), agency::cli::ConfigError);
}

TEST_CASE("config file is overridden by flags") {
  const auto cfg = scratch("config.json");
  write(cfg, R"({"seeds": "0-1", "preset": "preference-inverted", "format": "json"})");
  const auto from_file = cli({"run", "--config", cfg.string()});
  REQUIRE(from_file.code == 0);
  const auto j = Json::parse(from_file.out);
  CHECK(j["traces"].size() == 2);
  CHECK(j["traces"][0]["steps"][1]["phenotype"] == "Zero");

  const auto overridden = cli({"run", "--config", cfg.string(), "--preset", "standard", "--seeds", "4"});
  REQUIRE(overridden.code == 0);
  const auto k = Json::parse(overridden.out);
  CHECK(k["traces"].size() == 1);
  CHECK(k["traces"][0]["seed"] == 4);
  CHECK(k["traces"][0]["steps"][1]["phenotype"] == "High");

  write(cfg, R"({"horizon": "two"})");
  const auto bad = cli({"run", "--config", cfg.string()});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("horizon") != std::string::npos);

  write(cfg, R"({"colour": "blue"})");
  CHECK(cli({"run", "--config", cfg.string()}).code == 2);
}

TEST_CASE("seed environment variable") {
  setenv(agency::cli::kSeedEnvVar, "7", 1);
  const auto r = cli({"run", "--format", "json"});
  const auto flagged = cli({"run", "--format", "json", "--seeds", "3"});
  unsetenv(agency::cli::kSeedEnvVar);
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["traces"][0]["seed"] == 7);
  CHECK(Json::parse(flagged.out)["traces"][0]["seed"] == 3);
  CHECK(Json::parse(cli({"run", "--format", "json"}).out)["traces"][0]["seed"] == 0);
}

TEST_CASE("output file receives the chosen format") {
  const auto path = scratch("run.csv");
  const auto r = cli({"run", "--seeds", "0", "--format", "csv", "--output", path.string()});
  REQUIRE(r.code == 0);
  CHECK(slurp(path).rfind("spec,seed,context,step", 0) == 0);
  CHECK(r.out.find("emp_sp") != std::string::npos);
}

TEST_CASE("phenotype summary lines") {
  const auto r = cli({"phenotype", "--seeds", "0-3"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("standard: [Intermediate, High]\n") != std::string::npos);
  CHECK(r.out.find("preference-inverted: [Intermediate, Zero]\n") != std::string::npos);
}

TEST_CASE("empowerment command") {
  const auto start = cli({"empowerment", "--model", "minimal-tmaze", "--belief", "Start"});
  REQUIRE(start.code == 0);
  CHECK(start.out.find("bits: 1.00000") != std::string::npos);

  const auto channel = scratch("identity.json");
  write(channel, R"({"inputs": ["a", "b", "c"], "outputs": ["x", "y", "z"],
                     "rows": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]})");
  const auto id = cli({"empowerment", "--channel", channel.string(), "--format", "json"});
  REQUIRE(id.code == 0);
  CHECK(std::abs(Json::parse(id.out)["bits"].get<double>() - std::log2(3.0)) < 1e-9);

  const auto reward =
      cli({"empowerment", "--model", "multimodality-tmaze", "--modalities", "reward", "--format", "json"});
  REQUIRE(reward.code == 0);
  CHECK(std::abs(Json::parse(reward.out)["bits"].get<double>() - 1.0) < 1e-9);

  const auto actual = cli({"empowerment", "--model", "minimal-tmaze", "--actual", "--policy", "0,0,1"});
  REQUIRE(actual.code == 0);
  CHECK(actual.out.find("bits: 0.00000") != std::string::npos);

  CHECK(cli({"empowerment", "--model", "multimodality-tmaze", "--modalities", "smell"}).code != 0);
  CHECK(cli({"empowerment"}).code == 2);
}

TEST_CASE("validate and export") {
  const auto path = scratch("minimal.json");
  REQUIRE(cli({"export", "--model", "minimal-tmaze", "--output", path.string()}).code == 0);
  CHECK(slurp(path) == slurp(fs::path(AGENCY_SOURCE_DIR) / "models" / "minimal-tmaze.json"));
  const auto ok = cli({"validate", path.string()});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("valid") != std::string::npos);

  auto j = Json::parse(slurp(path));
  j["B"][0][0][1] = 0.9;
  write(path, j.dump());
  const auto bad = cli({"validate", path.string()});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("TransitionNotStochastic") != std::string::npos);
}

TEST_CASE("golden outputs are byte-identical") {
  const auto run = cli({"run", "--seeds", "0-3", "--format", "json"});
  REQUIRE(run.code == 0);
  CHECK(run.out == slurp(golden("run-minimal-seeds0-3.json")));

  const auto soft = cli({"run", "--seeds", "0-5", "--mode", "softmax", "--gamma", "1",
                         "--horizon", "3", "--format", "json"});
  REQUIRE(soft.code == 0);
  CHECK(soft.out == slurp(golden("run-softmax-seeds0-5.json")));

  const std::vector<std::string> battery{"phenotype", "--seeds", "0-7", "--presets",
                                         "standard,preference-inverted,likelihood-corrupted:0.5,flat-preference",
                                         "--format", "json"};
  const auto one = cli(battery);
  auto parallel = battery;
  parallel.insert(parallel.end(), {"--jobs", "4"});
  const auto four = cli(parallel);
  REQUIRE(one.code == 0);
  CHECK(one.out == slurp(golden("phenotype-battery.json")));
  CHECK(four.out == one.out);
}
