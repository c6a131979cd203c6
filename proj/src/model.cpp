#include "agency/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "agency/error.hpp"

namespace agency {

namespace {

std::size_t find_label(const Labels& labels, std::string_view label, ErrorCode code) {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw Error(code, "unknown label '" + std::string(label) + "'");
  return static_cast<std::size_t>(it - labels.begin());
}

bool is_distribution(std::span<const double> row) {
  double total = 0.0;
  for (double x : row) {
    if (!std::isfinite(x) || x < 0.0) return false;
    total += x;
  }
  return std::abs(total - 1.0) <= kNormTolerance;
}

std::string shape(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

}  // namespace

std::size_t GenerativeModel::action_index(std::string_view action) const {
  return find_label(action_labels, action, ErrorCode::UnknownAction);
}

std::size_t GenerativeModel::obs_index(std::string_view obs) const {
  return find_label(obs_labels, obs, ErrorCode::UnknownLabel);
}

std::size_t GenerativeModel::state_index(std::string_view state) const {
  return find_label(state_labels, state, ErrorCode::UnknownLabel);
}

Channel GenerativeModel::likelihood() const {
  return Channel(state_labels, obs_labels, A, modalities);
}

Channel GenerativeModel::transition(std::size_t action) const {
  if (action >= B.size()) {
    throw Error(ErrorCode::UnknownAction, "action index " + std::to_string(action));
  }
  return Channel(state_labels, state_labels, B[action]);
}

Categorical GenerativeModel::prior() const { return Categorical(state_labels, D); }

Belief initial_belief(const GenerativeModel& m) { return Belief{m.prior(), 0}; }

Belief point_belief(const GenerativeModel& m, std::string_view state) {
  return Belief{Categorical::delta(m.state_labels, state), 0};
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::DuplicateLabel: return "DuplicateLabel";
    case ViolationKind::EmptyLabelSet: return "EmptyLabelSet";
    case ViolationKind::LikelihoodShapeMismatch: return "LikelihoodShapeMismatch";
    case ViolationKind::LikelihoodNotStochastic: return "LikelihoodNotStochastic";
    case ViolationKind::TransitionCountMismatch: return "TransitionCountMismatch";
    case ViolationKind::TransitionShapeMismatch: return "TransitionShapeMismatch";
    case ViolationKind::TransitionNotStochastic: return "TransitionNotStochastic";
    case ViolationKind::PreferenceShapeMismatch: return "PreferenceShapeMismatch";
    case ViolationKind::PreferenceNotFinite: return "PreferenceNotFinite";
    case ViolationKind::PriorShapeMismatch: return "PriorShapeMismatch";
    case ViolationKind::PriorNotNormalized: return "PriorNotNormalized";
    case ViolationKind::ModalityProductMismatch: return "ModalityProductMismatch";
  }
  return "Unknown";
}

std::vector<Violation> validate_model(const GenerativeModel& m) {
  std::vector<Violation> out;
  auto report = [&](ViolationKind k, std::string loc, std::string detail) {
    out.push_back(Violation{k, std::move(loc), std::move(detail)});
  };

  const std::pair<const char*, const Labels*> label_sets[] = {
      {"states", &m.state_labels}, {"observations", &m.obs_labels}, {"actions", &m.action_labels}};
  for (const auto& [where, labels] : label_sets) {
    if (labels->empty()) report(ViolationKind::EmptyLabelSet, where, "no labels");
    std::set<std::string_view> seen;
    for (const auto& l : *labels) {
      if (!seen.insert(l).second) report(ViolationKind::DuplicateLabel, where, "'" + l + "'");
    }
  }

  const std::size_t ns = m.num_states();
  const std::size_t no = m.num_obs();

  if (m.A.rows() != ns || m.A.cols() != no) {
    report(ViolationKind::LikelihoodShapeMismatch, "A",
           "is " + shape(m.A.rows(), m.A.cols()) + ", expected " + shape(ns, no));
  } else {
    for (std::size_t s = 0; s < ns; ++s) {
      if (!is_distribution(m.A.row(s))) {
        report(ViolationKind::LikelihoodNotStochastic, "A[" + m.state_labels[s] + "]",
               "row is not a probability distribution over observations");
      }
    }
  }

  if (m.B.size() != m.num_actions()) {
    report(ViolationKind::TransitionCountMismatch, "B",
           std::to_string(m.B.size()) + " matrices for " + std::to_string(m.num_actions()) +
               " actions");
  }
  for (std::size_t a = 0; a < m.B.size(); ++a) {
    const std::string name = a < m.num_actions() ? m.action_labels[a] : std::to_string(a);
    const Matrix& b = m.B[a];
    if (b.rows() != ns || b.cols() != ns) {
      report(ViolationKind::TransitionShapeMismatch, "B[" + name + "]",
             "is " + shape(b.rows(), b.cols()) + ", expected " + shape(ns, ns));
      continue;
    }
    for (std::size_t s = 0; s < ns; ++s) {
      if (!is_distribution(b.row(s))) {
        report(ViolationKind::TransitionNotStochastic, "B[" + name + "][" + m.state_labels[s] + "]",
               "row is not a probability distribution over next states");
      }
    }
  }

  if (m.C.size() != no) {
    report(ViolationKind::PreferenceShapeMismatch, "C",
           std::to_string(m.C.size()) + " entries for " + std::to_string(no) + " observations");
  }
  for (std::size_t o = 0; o < m.C.size(); ++o) {
    if (!std::isfinite(m.C[o])) {
      report(ViolationKind::PreferenceNotFinite, "C[" + std::to_string(o) + "]", "not finite");
    }
  }

  if (m.D.size() != ns) {
    report(ViolationKind::PriorShapeMismatch, "D",
           std::to_string(m.D.size()) + " entries for " + std::to_string(ns) + " states");
  } else if (!is_distribution(m.D)) {
    report(ViolationKind::PriorNotNormalized, "D", "not a probability distribution");
  }

  if (m.modalities && product_labels(*m.modalities) != m.obs_labels) {
    report(ViolationKind::ModalityProductMismatch, "modalities",
           "product of modality labels does not equal the observation labels");
  }
  return out;
}

void require_valid(const GenerativeModel& m) {
  const auto violations = validate_model(m);
  if (violations.empty()) return;
  std::ostringstream msg;
  msg << "model '" << m.name << "' has " << violations.size() << " violation(s)";
  for (const auto& v : violations) {
    msg << "; " << to_string(v.kind) << " at " << v.location << ": " << v.detail;
  }
  throw Error(ErrorCode::InvalidModel, msg.str());
}

nlohmann::ordered_json model_to_json(const GenerativeModel& m) {
  nlohmann::ordered_json j;
  j["name"] = m.name;
  j["states"] = m.state_labels;
  j["observations"] = m.obs_labels;
  if (m.modalities) {
    auto mods = nlohmann::ordered_json::array();
    for (const auto& mod : *m.modalities) {
      mods.push_back({{"name", mod.name}, {"labels", mod.labels}});
    }
    j["modalities"] = mods;
  }
  j["actions"] = m.action_labels;
  j["A"] = m.A.to_rows();
  auto b = nlohmann::ordered_json::array();
  for (const auto& mat : m.B) b.push_back(mat.to_rows());
  j["B"] = b;
  j["C"] = m.C;
  j["D"] = m.D;
  return j;
}

GenerativeModel parse_model(const nlohmann::ordered_json& j) {
  try {
    GenerativeModel m;
    m.name = j.value("name", std::string{});
    m.state_labels = j.at("states").get<Labels>();
    m.obs_labels = j.at("observations").get<Labels>();
    if (j.contains("modalities")) {
      ModalityFactorization mods;
      for (const auto& mod : j.at("modalities")) {
        mods.push_back(Modality{mod.at("name").get<std::string>(), mod.at("labels").get<Labels>()});
      }
      m.modalities = std::move(mods);
    }
    m.action_labels = j.at("actions").get<Labels>();
    m.A = Matrix::from_rows(j.at("A").get<std::vector<std::vector<double>>>());
    for (const auto& b : j.at("B")) {
      m.B.push_back(Matrix::from_rows(b.get<std::vector<std::vector<double>>>()));
    }
    m.C = j.at("C").get<std::vector<double>>();
    m.D = j.at("D").get<std::vector<double>>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("model file: ") + e.what());
  }
}

GenerativeModel model_from_json(const nlohmann::ordered_json& j) {
  GenerativeModel m = parse_model(j);
  require_valid(m);
  return m;
}

nlohmann::ordered_json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  try {
    return nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

GenerativeModel load_model(const std::filesystem::path& path) {
  return model_from_json(read_json_file(path));
}

std::string dump_model(const GenerativeModel& m) { return model_to_json(m).dump(2) + "\n"; }

void save_model(const GenerativeModel& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << dump_model(m);
}

}  // namespace agency
