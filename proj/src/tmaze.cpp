#include "agency/tmaze.hpp"

#include <array>

#include "agency/error.hpp"
#include "agency/random.hpp"

namespace agency {

namespace {

constexpr std::array kContexts = {Context::CheeseLeft, Context::CheeseRight};
constexpr std::array kPositions = {Position::Center, Position::ArmLeft, Position::ArmRight,
                                   Position::CueSite};

const Labels& actions() {
  static const Labels labels{"Left", "Right", "Cue"};
  return labels;
}

// Minimal layout observation indices.
constexpr std::size_t kObsCheese = 0;
constexpr std::size_t kObsShock = 1;
constexpr std::size_t kObsRight = 2;
constexpr std::size_t kObsLeft = 3;

const Labels& minimal_obs() {
  static const Labels labels{"Cheese", "Shock", "RightObs", "LeftObs"};
  return labels;
}

const ModalityFactorization& multimodal_factors() {
  static const ModalityFactorization mods{
      {"Position", {"Center", "Right", "Left", "Cue"}},
      {"Reward", {"None", "Cheese", "Shock"}},
      {"Context", {"Right", "Left"}},
  };
  return mods;
}

const Labels& multimodal_obs() {
  static const Labels labels = product_labels(multimodal_factors());
  return labels;
}

enum class Reward { None, Cheese, Shock };

std::size_t position_coord(Position p) {
  switch (p) {
    case Position::Center: return 0;
    case Position::ArmRight: return 1;
    case Position::ArmLeft: return 2;
    case Position::CueSite: return 3;
  }
  return 0;
}

std::size_t context_coord(Context c) { return c == Context::CheeseRight ? 0 : 1; }

std::size_t multimodal_index(Position p, Reward r, std::size_t context_coordinate) {
  return position_coord(p) * 6 + static_cast<std::size_t>(r) * 2 + context_coordinate;
}

Reward reward_at(EnvState s) {
  if (s.position == Position::ArmLeft) {
    return s.context == Context::CheeseLeft ? Reward::Cheese : Reward::Shock;
  }
  if (s.position == Position::ArmRight) {
    return s.context == Context::CheeseRight ? Reward::Cheese : Reward::Shock;
  }
  return Reward::None;
}

// Shared by the environment and the eight-state agent model, which is
// fixed to the true dynamics.
std::vector<double> multimodal_obs_distribution(EnvState s) {
  std::vector<double> p(multimodal_obs().size(), 0.0);
  const Reward r = reward_at(s);
  if (s.position == Position::CueSite) {
    p[multimodal_index(s.position, r, context_coord(s.context))] = 1.0;
  } else {
    p[multimodal_index(s.position, r, 0)] = 0.5;
    p[multimodal_index(s.position, r, 1)] = 0.5;
  }
  return p;
}

std::vector<double> minimal_obs_distribution(EnvState s) {
  std::vector<double> p(minimal_obs().size(), 0.0);
  switch (s.position) {
    case Position::Center: return {};
    case Position::ArmLeft:
    case Position::ArmRight:
      p[reward_at(s) == Reward::Cheese ? kObsCheese : kObsShock] = 1.0;
      break;
    case Position::CueSite:
      p[s.context == Context::CheeseLeft ? kObsLeft : kObsRight] = 1.0;
      break;
  }
  return p;
}

Labels make_env_state_labels() {
  Labels out;
  for (Context c : kContexts) {
    for (Position p : kPositions) {
      out.push_back(std::string(to_string(c)) + "@" + std::string(to_string(p)));
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(Context c) {
  return c == Context::CheeseLeft ? "CheeseLeft" : "CheeseRight";
}

std::string_view to_string(Position p) {
  switch (p) {
    case Position::Center: return "Center";
    case Position::ArmLeft: return "ArmLeft";
    case Position::ArmRight: return "ArmRight";
    case Position::CueSite: return "CueSite";
  }
  return "Unknown";
}

std::string_view to_string(MazeLayout l) {
  return l == MazeLayout::Minimal ? "minimal" : "multimodality";
}

Position next_position(Position from, std::size_t action) {
  if (action > kActionCue) {
    throw Error(ErrorCode::UnknownAction, "action index " + std::to_string(action));
  }
  if (from == Position::ArmLeft || from == Position::ArmRight) return from;
  switch (action) {
    case kActionLeft: return Position::ArmLeft;
    case kActionRight: return Position::ArmRight;
    default: return Position::CueSite;
  }
}

Environment::Environment(MazeLayout layout, Context context, std::uint64_t noise_seed)
    : layout_(layout), state_{context, Position::Center}, noise_(noise_seed) {}

const Labels& Environment::action_labels() const { return actions(); }

const Labels& Environment::obs_labels() const {
  return layout_ == MazeLayout::Minimal ? minimal_obs() : multimodal_obs();
}

const std::optional<ModalityFactorization>& Environment::modalities() const {
  static const std::optional<ModalityFactorization> none;
  static const std::optional<ModalityFactorization> multi = multimodal_factors();
  return layout_ == MazeLayout::Minimal ? none : multi;
}

const Labels& Environment::state_labels() const {
  static const Labels labels = make_env_state_labels();
  return labels;
}

std::size_t Environment::state_index(EnvState s) const {
  return static_cast<std::size_t>(s.context) * kPositions.size() +
         static_cast<std::size_t>(s.position);
}

EnvState Environment::state_at(std::size_t index) const {
  if (index >= state_labels().size()) {
    throw Error(ErrorCode::OutOfRange, "environment state " + std::to_string(index));
  }
  return EnvState{kContexts[index / kPositions.size()], kPositions[index % kPositions.size()]};
}

std::optional<std::vector<double>> Environment::observation_distribution(EnvState s) const {
  if (layout_ == MazeLayout::Minimal) {
    auto p = minimal_obs_distribution(s);
    if (p.empty()) return std::nullopt;
    return p;
  }
  return multimodal_obs_distribution(s);
}

std::size_t Environment::step(std::size_t action) {
  state_.position = next_position(state_.position, action);
  const auto p = observation_distribution(state_);
  return sample_index(*p, noise_);
}

std::size_t Environment::step(std::string_view action) {
  const auto& labels = action_labels();
  for (std::size_t a = 0; a < labels.size(); ++a) {
    if (labels[a] == action) return step(a);
  }
  throw Error(ErrorCode::UnknownAction, std::string(action));
}

Categorical Environment::context_marginal_prior() const {
  std::vector<double> p(state_labels().size(), 0.0);
  for (Context c : kContexts) p[state_index({c, state_.position})] = 0.5;
  return Categorical(state_labels(), std::move(p));
}

Categorical Environment::true_state_prior() const {
  return Categorical::delta(state_labels(), state_index(state_));
}

Categorical Environment::filter(const Categorical& prior, std::size_t action,
                                std::size_t obs) const {
  if (prior.labels() != state_labels()) {
    throw Error(ErrorCode::LabelMismatch, "prior is not over environment states");
  }
  std::vector<double> weights(prior.size(), 0.0);
  for (std::size_t i = 0; i < prior.size(); ++i) {
    if (prior[i] == 0.0) continue;
    const EnvState from = state_at(i);
    const EnvState to{from.context, next_position(from.position, action)};
    const auto p_obs = observation_distribution(to);
    weights[state_index(to)] += prior[i] * (*p_obs)[obs];
  }
  try {
    return normalize(weights, state_labels());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::AllZeroWeights) throw;
    throw Error(ErrorCode::ImpossibleObservation,
                "observation '" + obs_labels()[obs] + "' has zero probability under the prior");
  }
}

Context sample_context(std::uint64_t seed) {
  Rng rng(seed);
  return uniform01(rng) < 0.5 ? Context::CheeseLeft : Context::CheeseRight;
}

Environment build_minimal_env(Context context) {
  return Environment(MazeLayout::Minimal, context);
}

Environment build_minimal_env(std::uint64_t seed) {
  return Environment(MazeLayout::Minimal, sample_context(seed));
}

Environment build_multimodality_env(Context context, std::uint64_t noise_seed) {
  return Environment(MazeLayout::MultiModality, context, noise_seed);
}

Environment build_multimodality_env(std::uint64_t seed) {
  // Offset keeps the noise stream distinct from the context draw.
  return Environment(MazeLayout::MultiModality, sample_context(seed), seed ^ 0x9e3779b97f4a7c15ULL);
}

GenerativeModel build_canonical_model() {
  enum : std::size_t { Start, Trap, CueRight, CueLeft, CheeseTerm, ShockTerm, N };

  GenerativeModel m;
  m.name = "minimal-tmaze";
  m.state_labels = {"Start", "Trap", "CueRight", "CueLeft", "CheeseTerm", "ShockTerm"};
  m.obs_labels = minimal_obs();
  m.action_labels = actions();

  // Start is never conditioned on; its row only has to be a distribution.
  m.A = Matrix::from_rows({
      {0.25, 0.25, 0.25, 0.25},
      {0.5, 0.5, 0.0, 0.0},
      {0.0, 0.0, 1.0, 0.0},
      {0.0, 0.0, 0.0, 1.0},
      {1.0, 0.0, 0.0, 0.0},
      {0.0, 1.0, 0.0, 0.0},
  });

  auto absorbing = [] {
    Matrix b = Matrix::identity(N);
    b(Start, Start) = 0.0;
    return b;
  };
  Matrix left = absorbing();
  left(Start, Trap) = 1.0;
  left(CueRight, CueRight) = 0.0;
  left(CueRight, ShockTerm) = 1.0;
  left(CueLeft, CueLeft) = 0.0;
  left(CueLeft, CheeseTerm) = 1.0;

  Matrix right = absorbing();
  right(Start, Trap) = 1.0;
  right(CueRight, CueRight) = 0.0;
  right(CueRight, CheeseTerm) = 1.0;
  right(CueLeft, CueLeft) = 0.0;
  right(CueLeft, ShockTerm) = 1.0;

  Matrix cue = absorbing();
  cue(Start, CueRight) = 0.5;
  cue(Start, CueLeft) = 0.5;

  m.B = {left, right, cue};
  m.C = {kCheesePreference, kShockPreference, 0.0, 0.0};
  m.D = {1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  return m;
}

GenerativeModel build_multimodality_model() {
  // States enumerate position-major over the Position modality order, then
  // context in the Context modality order.
  constexpr std::array positions = {Position::Center, Position::ArmRight, Position::ArmLeft,
                                    Position::CueSite};
  constexpr std::array contexts = {Context::CheeseRight, Context::CheeseLeft};
  const auto& factors = multimodal_factors();

  GenerativeModel m;
  m.name = "multimodality-tmaze";
  std::vector<EnvState> states;
  for (Position p : positions) {
    for (Context c : contexts) {
      states.push_back({c, p});
      m.state_labels.push_back(factors[0].labels[position_coord(p)] + ":" +
                               std::string(to_string(c)));
    }
  }
  auto index_of = [&](EnvState s) {
    return position_coord(s.position) * contexts.size() + context_coord(s.context);
  };

  m.obs_labels = multimodal_obs();
  m.modalities = factors;
  m.action_labels = actions();

  std::vector<std::vector<double>> a_rows;
  for (const auto& s : states) a_rows.push_back(multimodal_obs_distribution(s));
  m.A = Matrix::from_rows(a_rows);

  for (std::size_t a = 0; a < actions().size(); ++a) {
    Matrix b(states.size(), states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
      const EnvState to{states[i].context, next_position(states[i].position, a)};
      b(i, index_of(to)) = 1.0;
    }
    m.B.push_back(std::move(b));
  }

  m.C.assign(m.obs_labels.size(), 0.0);
  for (Position p : positions) {
    for (std::size_t c = 0; c < contexts.size(); ++c) {
      m.C[multimodal_index(p, Reward::Cheese, c)] = kCheesePreference;
      m.C[multimodal_index(p, Reward::Shock, c)] = kShockPreference;
    }
  }

  m.D.assign(states.size(), 0.0);
  m.D[index_of({Context::CheeseRight, Position::Center})] = 0.5;
  m.D[index_of({Context::CheeseLeft, Position::Center})] = 0.5;
  return m;
}

std::pair<Environment, GenerativeModel> build_multimodality_env_and_model(Context context) {
  return {build_multimodality_env(context), build_multimodality_model()};
}

std::pair<Environment, GenerativeModel> build_multimodality_env_and_model(std::uint64_t seed) {
  return {build_multimodality_env(seed), build_multimodality_model()};
}

}  // namespace agency
