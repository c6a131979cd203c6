#include "agency/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "agency/error.hpp"
#include "agency/model.hpp"

namespace agency {

namespace {

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json modalities_to_json(const ModalityFactorization& mods) {
  auto out = Json::array();
  for (const auto& m : mods) out.push_back({{"name", m.name}, {"labels", m.labels}});
  return out;
}

}  // namespace

Json reading_to_json(const EmpowermentReading& r) {
  Json j;
  j["bits"] = r.bits;
  if (is_potential(r.variant)) {
    j["optimal_input"] = r.optimal_input ? Json(r.optimal_input->probs()) : Json(nullptr);
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["bound_gap"] = r.bound_gap;
  }
  return j;
}

Json trace_to_json(const EpisodeTrace& trace) {
  Json j;
  j["model"] = trace.model;
  j["environment"] = trace.environment;
  j["context"] = trace.context;
  j["seed"] = trace.seed;
  j["horizon"] = trace.config.horizon;
  j["gamma"] = trace.config.gamma;
  j["mode"] = std::string(to_string(trace.config.mode));
  j["objective_prior"] = std::string(to_string(trace.config.objective_prior));
  j["actions"] = trace.action_labels;
  j["observations"] = trace.obs_labels;
  if (!trace.steps.empty()) {
    j["states"] = trace.steps.front().prior.dist.labels();
    j["environment_states"] = trace.steps.front().objective_prior.labels();
  }

  auto steps = Json::array();
  for (const auto& s : trace.steps) {
    Json step;
    step["step"] = s.index;
    step["prior"] = s.prior.dist.probs();
    auto efe = Json::array();
    for (const auto& e : s.efe) {
      efe.push_back({{"action", e.action},
                     {"epistemic_bits", e.epistemic_bits},
                     {"pragmatic", e.pragmatic},
                     {"efe", e.efe}});
    }
    step["efe"] = efe;
    step["policy"] = s.policy.probs();
    step["action"] = trace.action_labels[s.action];
    step["observation"] = trace.obs_labels[s.observation];
    step["posterior"] = s.posterior.dist.probs();
    step["objective_prior"] = s.objective_prior.probs();
    Json emp;
    for (const auto& r : s.empowerment) emp[std::string(to_string(r.variant))] = reading_to_json(r);
    step["empowerment"] = emp;
    const auto& sp = s.reading(EmpowermentVariant::SubjectivePotential);
    step["phenotype"] =
        std::string(to_string(classify_phenotype(sp.bits, trace.action_labels.size()).cls));
    steps.push_back(std::move(step));
  }
  j["steps"] = steps;
  return j;
}

Json report_to_json(const PhenotypeReport& report) {
  Json j;
  auto summaries = Json::array();
  for (const auto& s : report.summaries) {
    auto aggs = Json::array();
    for (const auto& a : s.aggregates) {
      aggs.push_back({{"step", a.step},
                      {"variant", std::string(to_string(a.variant))},
                      {"mean", a.mean},
                      {"min", a.min},
                      {"max", a.max},
                      {"phenotype", std::string(to_string(a.phenotype.cls))}});
    }
    auto classes = Json::array();
    for (auto c : s.classes()) classes.push_back(std::string(to_string(c)));
    summaries.push_back({{"spec", s.spec}, {"phenotypes", classes}, {"aggregates", aggs}});
  }
  j["summaries"] = summaries;

  auto cells = Json::array();
  for (const auto& c : report.cells) {
    auto labels = Json::array();
    for (const auto& p : c.phenotypes) labels.push_back(std::string(to_string(p.cls)));
    cells.push_back({{"spec", c.spec},
                     {"seed", c.seed},
                     {"phenotypes", labels},
                     {"trace", trace_to_json(c.trace)}});
  }
  j["cells"] = cells;
  return j;
}

std::string cells_to_csv(const std::vector<BatteryCell>& cells) {
  std::ostringstream out;
  out << "spec,seed,context,step,action,observation,epistemic_bits,pragmatic,efe,"
         "subjective_potential,subjective_actual,objective_potential,objective_actual,"
         "phenotype\n";
  for (const auto& c : cells) {
    for (std::size_t i = 0; i < c.trace.steps.size(); ++i) {
      const auto& s = c.trace.steps[i];
      const auto& e = s.efe[s.action];
      out << c.spec << ',' << c.seed << ',' << c.trace.context << ',' << s.index << ','
          << c.trace.action_labels[s.action] << ',' << c.trace.obs_labels[s.observation] << ','
          << g17(e.epistemic_bits) << ',' << g17(e.pragmatic) << ',' << g17(e.efe) << ','
          << g17(s.reading(EmpowermentVariant::SubjectivePotential).bits) << ','
          << g17(s.reading(EmpowermentVariant::SubjectiveActual).bits) << ','
          << g17(s.reading(EmpowermentVariant::ObjectivePotential).bits) << ','
          << g17(s.reading(EmpowermentVariant::ObjectiveActual).bits) << ','
          << to_string(c.phenotypes.at(i).cls) << '\n';
    }
  }
  return out.str();
}

Json channel_to_json(const Channel& ch) {
  Json j;
  j["inputs"] = ch.input_labels();
  j["outputs"] = ch.output_labels();
  if (ch.output_modalities()) j["modalities"] = modalities_to_json(*ch.output_modalities());
  j["rows"] = ch.matrix().to_rows();
  return j;
}

Channel channel_from_json(const Json& j) {
  Labels inputs;
  Labels outputs;
  std::vector<std::vector<double>> rows;
  std::optional<ModalityFactorization> mods;
  try {
    inputs = j.at("inputs").get<Labels>();
    outputs = j.at("outputs").get<Labels>();
    rows = j.at("rows").get<std::vector<std::vector<double>>>();
    if (j.contains("modalities")) {
      ModalityFactorization m;
      for (const auto& mod : j.at("modalities")) {
        m.push_back(Modality{mod.at("name").get<std::string>(), mod.at("labels").get<Labels>()});
      }
      mods = std::move(m);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("channel file: ") + e.what());
  }
  Matrix m;
  try {
    m = Matrix::from_rows(rows);
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidChannel, e.what());
  }
  return Channel(std::move(inputs), std::move(outputs), std::move(m), std::move(mods));
}

Channel load_channel(const std::filesystem::path& path) {
  return channel_from_json(read_json_file(path));
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace agency
