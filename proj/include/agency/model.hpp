#pragma once

// Discrete POMDP generative model: likelihood A, transitions B, log
// preferences C and initial prior D.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "agency/prob.hpp"

namespace agency {

/// Plain aggregate so that malformed models can be represented and
/// diagnosed; use validate_model() or require_valid() before inference.
struct GenerativeModel {
  std::string name;
  Labels state_labels;
  Labels obs_labels;
  std::optional<ModalityFactorization> modalities;
  Labels action_labels;
  Matrix A;                    // states x observations
  std::vector<Matrix> B;       // one states x states matrix per action
  std::vector<double> C;       // natural-log preference per observation
  std::vector<double> D;       // prior over states

  std::size_t num_states() const noexcept { return state_labels.size(); }
  std::size_t num_obs() const noexcept { return obs_labels.size(); }
  std::size_t num_actions() const noexcept { return action_labels.size(); }

  /// Throws UnknownAction.
  std::size_t action_index(std::string_view action) const;
  /// Throws UnknownLabel.
  std::size_t obs_index(std::string_view obs) const;
  std::size_t state_index(std::string_view state) const;

  Channel likelihood() const;
  Channel transition(std::size_t action) const;
  Categorical prior() const;

  friend bool operator==(const GenerativeModel&, const GenerativeModel&) = default;
};

struct Belief {
  Categorical dist;
  std::size_t step = 0;
};

Belief initial_belief(const GenerativeModel& m);
/// Point belief on a named state at step 0.
Belief point_belief(const GenerativeModel& m, std::string_view state);

enum class ViolationKind {
  DuplicateLabel,
  EmptyLabelSet,
  LikelihoodShapeMismatch,
  LikelihoodNotStochastic,
  TransitionCountMismatch,
  TransitionShapeMismatch,
  TransitionNotStochastic,
  PreferenceShapeMismatch,
  PreferenceNotFinite,
  PriorShapeMismatch,
  PriorNotNormalized,
  ModalityProductMismatch,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string location;
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Every invariant violation, with location. Empty means valid.
std::vector<Violation> validate_model(const GenerativeModel& m);

/// Throws InvalidModel listing the violations, if any.
void require_valid(const GenerativeModel& m);

// JSON model files: {name?, states, observations, modalities?, actions, A, B, C, D}.
// B is an array of matrices in action order. The loader enforces validity.
nlohmann::ordered_json model_to_json(const GenerativeModel& m);
/// Structural parse only (types and matrix shapes); no invariant checks.
GenerativeModel parse_model(const nlohmann::ordered_json& j);
/// parse_model followed by require_valid.
GenerativeModel model_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json read_json_file(const std::filesystem::path& path);
GenerativeModel load_model(const std::filesystem::path& path);
/// Canonical text form (2-space indent, trailing newline).
std::string dump_model(const GenerativeModel& m);
void save_model(const GenerativeModel& m, const std::filesystem::path& path);

}  // namespace agency
