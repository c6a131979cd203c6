#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "agency/empowerment.hpp"
#include "agency/error.hpp"
#include "agency/inference.hpp"
#include "agency/model.hpp"
#include "agency/phenotyping.hpp"
#include "agency/report_io.hpp"
#include "agency/tmaze.hpp"

namespace agency::cli {

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

double parse_double(const std::string& text, const std::string& field) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(field, "'" + text + "' is not a number");
  }
}

std::string fixed5(double x) { return fmt::format("{:.5f}", x); }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot write " + path);
  f << text;
}

// Flag storage. Values are applied over the config file only when the flag
// was given on the command line.
struct Flags {
  std::string config;
  std::string model;
  std::string preset;
  std::string presets;
  double alpha = 0.0;
  long long horizon = 0;
  double gamma = 0.0;
  std::string mode;
  std::string context;
  std::string objective;
  std::string seeds;
  std::string format;
  std::string output;
  long long jobs = 0;

  std::map<std::string, CLI::Option*> opts;

  bool given(const std::string& name) const {
    const auto it = opts.find(name);
    return it != opts.end() && it->second->count() > 0;
  }
};

void add_run_flags(CLI::App* app, Flags& f, bool phenotype) {
  f.opts["config"] = app->add_option("--config", f.config, "JSON config file; flags override it");
  f.opts["model"] =
      app->add_option("--model", f.model, "Built-in model (minimal-tmaze, multimodality-tmaze) or model file");
  if (phenotype) {
    f.opts["presets"] = app->add_option(
        "--presets", f.presets,
        "Comma-separated presets; likelihood-corrupted:<alpha> sets the mixing weight");
  } else {
    f.opts["preset"] = app->add_option(
        "--preset", f.preset,
        "standard | preference-inverted | likelihood-corrupted[:alpha] | flat-preference");
  }
  f.opts["alpha"] = app->add_option("--alpha", f.alpha, "Default likelihood corruption weight");
  f.opts["horizon"] = app->add_option("--horizon", f.horizon, "Steps per episode");
  f.opts["gamma"] = app->add_option("--gamma", f.gamma, "Policy precision");
  f.opts["mode"] = app->add_option("--mode", f.mode, "argmax | softmax");
  f.opts["context"] = app->add_option("--context", f.context, "random | left | right");
  f.opts["objective"] =
      app->add_option("--objective", f.objective, "history-filtered | true-state");
  f.opts["seeds"] = app->add_option("--seeds", f.seeds, "Seed list, e.g. 0,1,5-9");
  f.opts["format"] = app->add_option("--format", f.format, "table | json | csv");
  f.opts["output"] = app->add_option("--output", f.output, "Write results to this file");
  f.opts["jobs"] = app->add_option("--jobs", f.jobs, "Worker threads");
}

template <class T>
T config_value(const Json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(key, "config file value has the wrong type");
  }
}

std::vector<std::string> string_or_list(const Json& j, const std::string& key) {
  if (j.at(key).is_string()) return split_list(j.at(key).get<std::string>());
  return config_value<std::vector<std::string>>(j, key);
}

std::size_t non_negative(long long v, const std::string& field) {
  if (v < 0) throw ConfigError(field, "must not be negative");
  return static_cast<std::size_t>(v);
}

RunConfig resolve_config(const Flags& f) {
  RunConfig cfg;
  bool seeds_set = false;

  if (f.given("config")) {
    Json j;
    try {
      j = read_json_file(f.config);
    } catch (const Error& e) {
      throw ConfigError("config", e.what());
    }
    if (!j.is_object()) throw ConfigError("config", "must be a JSON object");
    for (const auto& [key, value] : j.items()) {
      if (key == "model") cfg.model = config_value<std::string>(j, key);
      else if (key == "preset") cfg.preset = config_value<std::string>(j, key);
      else if (key == "presets") cfg.presets = string_or_list(j, key);
      else if (key == "alpha") cfg.alpha = config_value<double>(j, key);
      else if (key == "horizon") cfg.horizon = non_negative(config_value<long long>(j, key), key);
      else if (key == "gamma") cfg.gamma = config_value<double>(j, key);
      else if (key == "mode") cfg.mode = config_value<std::string>(j, key);
      else if (key == "context") cfg.context = config_value<std::string>(j, key);
      else if (key == "objective") cfg.objective = config_value<std::string>(j, key);
      else if (key == "format") cfg.format = config_value<std::string>(j, key);
      else if (key == "output") cfg.output = config_value<std::string>(j, key);
      else if (key == "jobs") cfg.jobs = non_negative(config_value<long long>(j, key), key);
      else if (key == "seeds") {
        if (value.is_string()) {
          cfg.seeds = parse_seed_list(value.get<std::string>(), "seeds");
        } else {
          cfg.seeds = config_value<std::vector<std::uint64_t>>(j, key);
        }
        seeds_set = true;
      } else {
        throw ConfigError(key, "unknown config key");
      }
    }
  }

  if (f.given("model")) cfg.model = f.model;
  if (f.given("preset")) cfg.preset = f.preset;
  if (f.given("presets")) cfg.presets = split_list(f.presets);
  if (f.given("alpha")) cfg.alpha = f.alpha;
  if (f.given("horizon")) cfg.horizon = non_negative(f.horizon, "horizon");
  if (f.given("gamma")) cfg.gamma = f.gamma;
  if (f.given("mode")) cfg.mode = f.mode;
  if (f.given("context")) cfg.context = f.context;
  if (f.given("objective")) cfg.objective = f.objective;
  if (f.given("format")) cfg.format = f.format;
  if (f.given("output")) cfg.output = f.output;
  if (f.given("jobs")) cfg.jobs = non_negative(f.jobs, "jobs");
  if (f.given("seeds")) {
    cfg.seeds = parse_seed_list(f.seeds, "seeds");
    seeds_set = true;
  }
  if (!seeds_set) {
    if (const char* env = std::getenv(kSeedEnvVar); env && *env) {
      cfg.seeds = parse_seed_list(env, kSeedEnvVar);
    } else {
      cfg.seeds = {0};
    }
  }
  cfg.validate();
  return cfg;
}

struct ResolvedModel {
  GenerativeModel model;
  std::optional<MazeLayout> layout;
};

ResolvedModel resolve_model(const std::string& name) {
  if (name == "minimal-tmaze") return {build_canonical_model(), MazeLayout::Minimal};
  if (name == "multimodality-tmaze") return {build_multimodality_model(), MazeLayout::MultiModality};
  if (!std::filesystem::exists(name)) {
    throw ConfigError("model", "'" + name + "' is neither a built-in model nor a readable file");
  }
  ResolvedModel out{load_model(name), std::nullopt};
  for (MazeLayout l : {MazeLayout::Minimal, MazeLayout::MultiModality}) {
    const Environment env(l, Context::CheeseLeft);
    if (env.obs_labels() == out.model.obs_labels && env.action_labels() == out.model.action_labels) {
      out.layout = l;
    }
  }
  return out;
}

MazeLayout require_layout(const ResolvedModel& m) {
  if (!m.layout) {
    throw ConfigError("model", "labels of '" + m.model.name + "' match no T-maze environment");
  }
  return *m.layout;
}

EnvironmentFactory env_factory(MazeLayout layout, const std::string& context) {
  if (context == "random") {
    return [layout](std::uint64_t seed) {
      return layout == MazeLayout::Minimal ? build_minimal_env(seed) : build_multimodality_env(seed);
    };
  }
  const Context c = context == "left" ? Context::CheeseLeft : Context::CheeseRight;
  return [layout, c](std::uint64_t seed) {
    return layout == MazeLayout::Minimal ? build_minimal_env(c) : build_multimodality_env(c, seed);
  };
}

ManipulationSpec parse_spec(const std::string& text, double default_alpha, const std::string& field) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  Preset preset;
  try {
    preset = parse_preset(name);
  } catch (const Error&) {
    throw ConfigError(field, "unknown preset '" + name + "'");
  }
  double alpha = default_alpha;
  if (colon != std::string::npos) {
    if (preset != Preset::LikelihoodCorrupted) {
      throw ConfigError(field, "only likelihood-corrupted takes a parameter");
    }
    alpha = parse_double(text.substr(colon + 1), field);
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError(field, "alpha must lie in [0, 1]");
  return ManipulationSpec::of(preset, alpha);
}

BatteryOptions battery_options(const RunConfig& cfg) {
  BatteryOptions o;
  o.horizon = cfg.horizon;
  o.gamma = cfg.gamma;
  o.mode = parse_selection_mode(cfg.mode);
  o.objective_prior = parse_objective_prior(cfg.objective);
  o.jobs = cfg.jobs;
  return o;
}

std::string render_run_table(const std::vector<BatteryCell>& cells) {
  std::string out;
  for (const auto& c : cells) {
    const auto& t = c.trace;
    out += fmt::format("seed {}  context {}  model {}  preset {}\n", c.seed, t.context, t.model,
                       c.spec);
    out += fmt::format("{:>4}  {:<8} {:<22} {:>10} {:>10} {:>10} {:>9} {:>9} {:>9} {:>9}  {}\n",
                       "step", "action", "observation", "epistemic", "pragmatic", "efe", "emp_sp",
                       "emp_sa", "emp_op", "emp_oa", "phenotype");
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
      const auto& s = t.steps[i];
      const auto& e = s.efe[s.action];
      out += fmt::format(
          "{:>4}  {:<8} {:<22} {:>10} {:>10} {:>10} {:>9} {:>9} {:>9} {:>9}  {}\n", s.index,
          t.action_labels[s.action], t.obs_labels[s.observation], fixed5(e.epistemic_bits),
          fixed5(e.pragmatic), fixed5(e.efe),
          fixed5(s.reading(EmpowermentVariant::SubjectivePotential).bits),
          fixed5(s.reading(EmpowermentVariant::SubjectiveActual).bits),
          fixed5(s.reading(EmpowermentVariant::ObjectivePotential).bits),
          fixed5(s.reading(EmpowermentVariant::ObjectiveActual).bits),
          to_string(c.phenotypes.at(i).cls));
    }
    out += "\n";
  }
  return out;
}

std::string render_summary(const PhenotypeReport& report) {
  std::string out;
  for (const auto& s : report.summaries) {
    std::string classes;
    for (auto c : s.classes()) classes += (classes.empty() ? "" : ", ") + std::string(to_string(c));
    out += fmt::format("{}: [{}]\n", s.spec, classes);
  }
  out += "\n";
  out += fmt::format("{:<28} {:>4} {:>9} {:>9} {:>9}  {}\n", "preset", "step", "mean", "min", "max",
                     "phenotype");
  for (const auto& s : report.summaries) {
    for (const auto& a : s.aggregates) {
      if (a.variant != EmpowermentVariant::SubjectivePotential) continue;
      out += fmt::format("{:<28} {:>4} {:>9} {:>9} {:>9}  {}\n", s.spec, a.step, fixed5(a.mean),
                         fixed5(a.min), fixed5(a.max), to_string(a.phenotype.cls));
    }
  }
  return out;
}

int cmd_run(const Flags& flags, std::ostream& out) {
  const RunConfig cfg = resolve_config(flags);
  const auto spec = parse_spec(cfg.preset, cfg.alpha, "preset");
  const auto resolved = resolve_model(cfg.model);
  const auto layout = require_layout(resolved);
  const auto report = run_battery(resolved.model, env_factory(layout, cfg.context), cfg.seeds,
                                  {spec}, battery_options(cfg));

  const std::string table = render_run_table(report.cells);
  std::string body = table;
  if (cfg.format == "json") {
    Json traces = Json::array();
    for (const auto& c : report.cells) traces.push_back(trace_to_json(c.trace));
    body = dump_json(Json{{"traces", traces}});
  } else if (cfg.format == "csv") {
    body = cells_to_csv(report.cells);
  }

  if (cfg.output.empty()) {
    out << body;
  } else {
    write_file(cfg.output, body);
    out << table;
  }
  return kExitOk;
}

int cmd_phenotype(const Flags& flags, std::ostream& out) {
  RunConfig cfg = resolve_config(flags);
  const bool presets_given = flags.given("presets") || !cfg.presets.empty();
  if (!presets_given) cfg.presets = {"standard", "preference-inverted"};
  if (cfg.presets.empty()) throw ConfigError("presets", "at least one preset is required");

  std::vector<ManipulationSpec> specs;
  for (const auto& p : cfg.presets) specs.push_back(parse_spec(p, cfg.alpha, "presets"));
  const auto resolved = resolve_model(cfg.model);
  const auto layout = require_layout(resolved);
  PhenotypeReport report;
  try {
    report = run_battery(resolved.model, env_factory(layout, cfg.context), cfg.seeds, specs,
                         battery_options(cfg));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidParameter) throw ConfigError("presets", e.what());
    throw;
  }

  const std::string summary = render_summary(report);
  std::string body = summary;
  if (cfg.format == "json") {
    body = dump_json(report_to_json(report));
  } else if (cfg.format == "csv") {
    body = cells_to_csv(report.cells);
  }
  if (cfg.output.empty()) {
    out << body;
  } else {
    write_file(cfg.output, body);
    out << summary;
  }
  return kExitOk;
}

struct EmpowermentFlags {
  std::string channel;
  std::string model;
  std::string belief;
  bool objective = false;
  std::string context;
  std::string position = "center";
  bool actual = false;
  std::string policy;
  std::string modalities;
  double tol = kDefaultCapacityTolerance;
  long long max_iter = static_cast<long long>(kDefaultCapacityMaxIter);
  std::string format = "table";
};

Categorical parse_belief(const GenerativeModel& m, const std::string& text) {
  if (text.empty()) return m.prior();
  if (text.find(',') == std::string::npos &&
      std::find(m.state_labels.begin(), m.state_labels.end(), text) != m.state_labels.end()) {
    return Categorical::delta(m.state_labels, text);
  }
  const auto parts = split_list(text);
  if (parts.size() != m.num_states()) {
    throw ConfigError("belief", "expected a state label or " + std::to_string(m.num_states()) +
                                    " comma-separated probabilities");
  }
  std::vector<double> p;
  for (const auto& s : parts) p.push_back(parse_double(s, "belief"));
  try {
    return Categorical(m.state_labels, std::move(p));
  } catch (const Error& e) {
    throw ConfigError("belief", e.what());
  }
}

Position parse_position(const std::string& text) {
  if (text == "center") return Position::Center;
  if (text == "arm-left") return Position::ArmLeft;
  if (text == "arm-right") return Position::ArmRight;
  if (text == "cue") return Position::CueSite;
  throw ConfigError("position", "expected center | arm-left | arm-right | cue");
}

int cmd_empowerment(const EmpowermentFlags& f, std::ostream& out) {
  if (f.channel.empty() == f.model.empty()) {
    throw ConfigError("channel", "give exactly one of --channel or --model");
  }
  if (f.format != "table" && f.format != "json") {
    throw ConfigError("format", "expected table | json");
  }
  if (!(f.tol > 0.0)) throw ConfigError("tol", "must be positive");
  if (f.max_iter < 1) throw ConfigError("max-iter", "must be >= 1");

  Channel ch;
  EmpowermentVariant variant = EmpowermentVariant::SubjectivePotential;
  if (!f.channel.empty()) {
    ch = load_channel(f.channel);
  } else {
    const auto resolved = resolve_model(f.model);
    if (f.objective) {
      const Environment env(require_layout(resolved), Context::CheeseLeft);
      const Position pos = parse_position(f.position);
      std::vector<double> prior(env.state_labels().size(), 0.0);
      if (f.context.empty()) {
        prior[env.state_index({Context::CheeseLeft, pos})] = 0.5;
        prior[env.state_index({Context::CheeseRight, pos})] = 0.5;
      } else if (f.context == "left" || f.context == "right") {
        const Context c = f.context == "left" ? Context::CheeseLeft : Context::CheeseRight;
        prior[env.state_index({c, pos})] = 1.0;
      } else {
        throw ConfigError("context", "expected left | right");
      }
      ch = objective_channel(env, Categorical(env.state_labels(), prior));
      variant = EmpowermentVariant::ObjectivePotential;
    } else {
      ch = subjective_channel(resolved.model, parse_belief(resolved.model, f.belief));
    }
  }

  if (!f.modalities.empty()) {
    try {
      ch = modality_restricted_channel(ch, split_list(f.modalities));
    } catch (const Error& e) {
      throw ConfigError("modalities", e.what());
    }
  }

  EmpowermentReading reading;
  if (f.actual) {
    if (f.policy.empty()) throw ConfigError("policy", "--actual needs --policy");
    const auto parts = split_list(f.policy);
    std::vector<double> p;
    for (const auto& s : parts) p.push_back(parse_double(s, "policy"));
    Categorical policy;
    try {
      policy = Categorical(ch.input_labels(), std::move(p));
    } catch (const Error& e) {
      throw ConfigError("policy", e.what());
    }
    variant = variant == EmpowermentVariant::ObjectivePotential ? EmpowermentVariant::ObjectiveActual
                                                                : EmpowermentVariant::SubjectiveActual;
    reading = actual_empowerment(ch, policy, variant);
  } else {
    reading = blahut_arimoto(ch, f.tol, static_cast<std::size_t>(f.max_iter), variant);
  }

  if (f.format == "json") {
    Json j;
    j["variant"] = std::string(to_string(reading.variant));
    j["inputs"] = ch.input_labels();
    j["outputs"] = ch.output_labels();
    const Json r = reading_to_json(reading);
    for (const auto& [k, v] : r.items()) j[k] = v;
    out << dump_json(j);
    return kExitOk;
  }

  out << "variant: " << to_string(reading.variant) << "\n";
  out << "bits: " << fixed5(reading.bits) << "\n";
  if (reading.optimal_input) {
    out << "optimal_input:";
    for (std::size_t a = 0; a < reading.optimal_input->size(); ++a) {
      out << " " << reading.optimal_input->labels()[a] << "=" << fixed5((*reading.optimal_input)[a]);
    }
    out << "\n";
    out << "iterations: " << reading.iterations << "\n";
    out << "converged: " << (reading.converged ? "true" : "false") << "\n";
    out << "bound_gap: " << fmt::format("{:.3e}", reading.bound_gap) << "\n";
  }
  return kExitOk;
}

int cmd_validate(const std::string& path, std::ostream& out) {
  const auto model = parse_model(read_json_file(path));
  const auto violations = validate_model(model);
  if (violations.empty()) {
    out << path << ": valid\n";
    return kExitOk;
  }
  for (const auto& v : violations) {
    out << path << ": " << to_string(v.kind) << " at " << v.location << ": " << v.detail << "\n";
  }
  return kExitRuntime;
}

int cmd_export(const std::string& model, const std::string& output, std::ostream& out) {
  const auto resolved = resolve_model(model);
  const std::string text = dump_model(resolved.model);
  if (output.empty()) {
    out << text;
  } else {
    write_file(output, text);
  }
  return kExitOk;
}

}  // namespace

void RunConfig::validate() const {
  if (horizon < 1) throw ConfigError("horizon", "must be >= 1");
  if (seeds.empty()) throw ConfigError("seeds", "at least one seed is required");
  if (format != "table" && format != "json" && format != "csv") {
    throw ConfigError("format", "expected table | json | csv");
  }
  if (mode != "argmax" && mode != "softmax") throw ConfigError("mode", "expected argmax | softmax");
  if (context != "random" && context != "left" && context != "right") {
    throw ConfigError("context", "expected random | left | right");
  }
  if (objective != "history-filtered" && objective != "true-state") {
    throw ConfigError("objective", "expected history-filtered | true-state");
  }
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ConfigError("gamma", "must be finite and >= 0");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha", "must lie in [0, 1]");
  if (jobs < 1) throw ConfigError("jobs", "must be >= 1");
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text, const std::string& field) {
  std::vector<std::uint64_t> out;
  auto to_u64 = [&](const std::string& s) -> std::uint64_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw ConfigError(field, "'" + s + "' is not a non-negative integer");
    }
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw ConfigError(field, "'" + s + "' is out of range");
    }
  };
  for (const auto& item : split_list(text)) {
    const auto dash = item.find('-');
    if (dash == std::string::npos) {
      out.push_back(to_u64(item));
      continue;
    }
    const auto lo = to_u64(item.substr(0, dash));
    const auto hi = to_u64(item.substr(dash + 1));
    if (hi < lo) throw ConfigError(field, "empty range '" + item + "'");
    for (auto s = lo; s <= hi; ++s) out.push_back(s);
  }
  if (out.empty()) throw ConfigError(field, "at least one seed is required");
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"agency_phenotyper: active-inference T-maze agents and empowerment phenotypes"};
  app.name("agency_phenotyper");
  app.require_subcommand(1);

  Flags run_flags;
  auto* run = app.add_subcommand("run", "Run episodes and print the step table");
  add_run_flags(run, run_flags, false);

  Flags pheno_flags;
  auto* pheno = app.add_subcommand("phenotype", "Run a manipulation battery and classify phenotypes");
  add_run_flags(pheno, pheno_flags, true);

  EmpowermentFlags emp;
  auto* empower = app.add_subcommand("empowerment", "Compute empowerment of a channel or model");
  empower->add_option("--channel", emp.channel, "Channel JSON file");
  empower->add_option("--model", emp.model, "Built-in model or model file");
  empower->add_option("--belief", emp.belief, "State label or comma-separated probabilities");
  empower->add_flag("--objective", emp.objective, "Use the true environment dynamics");
  empower->add_option("--context", emp.context, "Condition the objective channel on left | right");
  empower->add_option("--position", emp.position, "center | arm-left | arm-right | cue");
  empower->add_flag("--actual", emp.actual, "Mutual information at --policy, no maximization");
  empower->add_option("--policy", emp.policy, "Comma-separated action probabilities");
  empower->add_option("--modalities", emp.modalities, "Comma-separated modalities to keep");
  empower->add_option("--tol", emp.tol, "Capacity tolerance");
  empower->add_option("--max-iter", emp.max_iter, "Blahut-Arimoto iteration cap");
  empower->add_option("--format", emp.format, "table | json");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a model file against every invariant");
  validate->add_option("model", validate_path, "Model JSON file")->required();

  std::string export_model;
  std::string export_output;
  auto* exporter = app.add_subcommand("export", "Write a built-in model as a model file");
  exporter->add_option("--model", export_model, "Built-in model name")->required();
  exporter->add_option("--output", export_output, "Destination (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(run_flags, out);
    if (pheno->parsed()) return cmd_phenotype(pheno_flags, out);
    if (empower->parsed()) return cmd_empowerment(emp, out);
    if (validate->parsed()) return cmd_validate(validate_path, out);
    if (exporter->parsed()) return cmd_export(export_model, export_output, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace agency::cli
