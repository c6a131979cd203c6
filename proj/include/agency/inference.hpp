#pragma once

// The action chain: belief update -> expected free energy -> policy
// selection -> action. Policies are single actions (one-step horizon).

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "agency/empowerment.hpp"
#include "agency/model.hpp"
#include "agency/prob.hpp"
#include "agency/random.hpp"
#include "agency/tmaze.hpp"

namespace agency {

/// q(s' | a) = B[a]^T q(s). Throws UnknownAction.
Categorical predict_state(const Belief& belief, std::size_t action, const GenerativeModel& m);

/// q(o' | a) = A^T q(s' | a). Throws UnknownAction.
Categorical predict_obs(const Belief& belief, std::size_t action, const GenerativeModel& m);

/// q(s' | o, a) proportional to A[., o] * q(s' | a); step advances by one.
/// Throws ImpossibleObservation when o has zero predictive probability.
Belief bayesian_update(const Belief& belief, std::size_t action, std::size_t observation,
                       const GenerativeModel& m);

/// E_{q(o|a)} KL[q(s'|o,a) || q(s'|a)] in bits.
double expected_info_gain(const Belief& belief, std::size_t action, const GenerativeModel& m);

/// sum_o q(o|a) C[o] in nats.
double expected_utility(const Belief& belief, std::size_t action, const GenerativeModel& m);

struct EfeBreakdown {
  std::string action;
  double epistemic_bits = 0.0;
  double pragmatic = 0.0;  // nats
  double efe = 0.0;        // -(epistemic in nats) - pragmatic; lower is better
};

EfeBreakdown efe(const Belief& belief, std::size_t action, const GenerativeModel& m);
std::vector<EfeBreakdown> efe_all(const Belief& belief, const GenerativeModel& m);

enum class SelectionMode { Argmax, Softmax };

std::string_view to_string(SelectionMode mode);
/// Accepts "argmax" / "softmax"; throws InvalidParameter.
SelectionMode parse_selection_mode(std::string_view text);

inline constexpr double kDefaultGamma = 16.0;
/// EFE values closer than this count as tied (lowest index wins).
inline constexpr double kTieTolerance = 1e-12;

struct ActionChoice {
  std::size_t action = 0;
  /// Distribution the action was drawn from: a delta on the chosen action
  /// in argmax mode, softmax(-gamma * efe) in softmax mode.
  Categorical policy;
  std::vector<EfeBreakdown> efe;
};

/// softmax(-gamma * efe) over actions.
Categorical softmax_policy(const std::vector<EfeBreakdown>& efe, double gamma,
                           const Labels& action_labels);

ActionChoice select_action(const Belief& belief, const GenerativeModel& m, double gamma,
                           SelectionMode mode, Rng& rng);
ActionChoice select_action(const Belief& belief, const GenerativeModel& m, double gamma,
                           SelectionMode mode, std::uint64_t rng_seed);

/// How the ground-truth state prior for objective empowerment is formed.
enum class ObjectivePrior {
  /// Contexts start 50/50 and are filtered through the observed history
  /// with the true dynamics; the hidden context itself is never read.
  HistoryFiltered,
  /// Delta on the environment's true current state.
  TrueState,
};

std::string_view to_string(ObjectivePrior p);
ObjectivePrior parse_objective_prior(std::string_view text);

struct EpisodeConfig {
  std::size_t horizon = 2;
  double gamma = kDefaultGamma;
  SelectionMode mode = SelectionMode::Argmax;
  std::uint64_t seed = 0;
  ObjectivePrior objective_prior = ObjectivePrior::HistoryFiltered;
  double capacity_tolerance = kDefaultCapacityTolerance;
  std::size_t capacity_max_iter = kDefaultCapacityMaxIter;
};

struct EpisodeStep {
  std::size_t index = 0;  // 1-based time step
  Belief prior;
  std::vector<EfeBreakdown> efe;
  Categorical policy;
  std::size_t action = 0;
  std::size_t observation = 0;
  Belief posterior;
  Categorical objective_prior;
  /// One reading per variant, in EmpowermentVariant order.
  std::vector<EmpowermentReading> empowerment;

  const EmpowermentReading& reading(EmpowermentVariant v) const;
};

struct EpisodeTrace {
  std::string model;
  std::string environment;
  std::string context;
  std::uint64_t seed = 0;
  EpisodeConfig config;
  Labels action_labels;
  Labels obs_labels;
  std::vector<EpisodeStep> steps;

  std::vector<std::string> actions() const;
  std::vector<std::string> observations() const;
  std::vector<double> bits(EmpowermentVariant v) const;
};

/// select_action -> env.step -> bayesian_update for `horizon` steps,
/// recording every empowerment variant against each step's prior belief.
/// Deterministic given the config seed and the environment state.
/// Throws LabelMismatch if model and environment disagree on labels.
EpisodeTrace run_episode(const GenerativeModel& m, Environment env, const EpisodeConfig& config);

}  // namespace agency
