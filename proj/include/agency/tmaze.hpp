#pragma once

// T-maze ground truth and the matching agent generative models.
//
// Two layouts share the same position dynamics:
//   Minimal        observations {Cheese, Shock, RightObs, LeftObs}
//   MultiModality  observations Position x Reward x Context (4 x 3 x 2 = 24)

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "agency/model.hpp"
#include "agency/prob.hpp"

namespace agency {

enum class Context { CheeseLeft, CheeseRight };
enum class Position { Center, ArmLeft, ArmRight, CueSite };
enum class MazeLayout { Minimal, MultiModality };

std::string_view to_string(Context c);
std::string_view to_string(Position p);
std::string_view to_string(MazeLayout l);

inline constexpr std::size_t kActionLeft = 0;
inline constexpr std::size_t kActionRight = 1;
inline constexpr std::size_t kActionCue = 2;

/// Default log preferences (nats).
inline constexpr double kCheesePreference = 3.0;
inline constexpr double kShockPreference = -3.0;

struct EnvState {
  Context context;
  Position position;

  friend bool operator==(const EnvState&, const EnvState&) = default;
};

/// Position reached from `from` under an action index.
Position next_position(Position from, std::size_t action);

class Environment {
 public:
  /// `noise_seed` drives the uninformative context channel of the
  /// multi-modality layout; the minimal layout is fully deterministic.
  Environment(MazeLayout layout, Context context, std::uint64_t noise_seed = 0);

  MazeLayout layout() const noexcept { return layout_; }
  Context context() const noexcept { return state_.context; }
  Position position() const noexcept { return state_.position; }
  EnvState state() const noexcept { return state_; }

  const Labels& action_labels() const;
  const Labels& obs_labels() const;
  const std::optional<ModalityFactorization>& modalities() const;

  /// Ground-truth state space (context x position), labelled "Context@Position".
  const Labels& state_labels() const;
  std::size_t state_index(EnvState s) const;
  EnvState state_at(std::size_t index) const;

  /// p(o | state). Empty for the minimal layout at Center, where no
  /// observation is defined before the first action.
  std::optional<std::vector<double>> observation_distribution(EnvState s) const;

  /// Moves, then emits the observation index at the new position.
  std::size_t step(std::size_t action);
  std::size_t step(std::string_view action);

  /// Contexts 50/50 at the current position.
  Categorical context_marginal_prior() const;
  /// Delta on the true current state.
  Categorical true_state_prior() const;
  /// Posterior over ground-truth states after `action` produced `obs`,
  /// using the true dynamics. Throws ImpossibleObservation.
  Categorical filter(const Categorical& prior, std::size_t action, std::size_t obs) const;

 private:
  MazeLayout layout_;
  EnvState state_;
  std::mt19937_64 noise_;
};

/// Context drawn 50/50 from a seed.
Context sample_context(std::uint64_t seed);

Environment build_minimal_env(Context context);
Environment build_minimal_env(std::uint64_t seed);
Environment build_multimodality_env(Context context, std::uint64_t noise_seed = 0);
Environment build_multimodality_env(std::uint64_t seed);

/// Six-state agent model {Start, Trap, CueRight, CueLeft, CheeseTerm, ShockTerm}.
GenerativeModel build_canonical_model();

/// Eight-state (position x context) agent model over the 24-observation space.
GenerativeModel build_multimodality_model();

std::pair<Environment, GenerativeModel> build_multimodality_env_and_model(Context context);
std::pair<Environment, GenerativeModel> build_multimodality_env_and_model(std::uint64_t seed);

}  // namespace agency
