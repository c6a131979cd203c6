#include "agency/inference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "agency/error.hpp"

namespace agency {

namespace {

void check_action(std::size_t action, const GenerativeModel& m) {
  if (action >= m.num_actions() || action >= m.B.size()) {
    throw Error(ErrorCode::UnknownAction, "action index " + std::to_string(action));
  }
}

std::vector<double> propagate_states(std::span<const double> q, const Matrix& b) {
  std::vector<double> next(b.cols(), 0.0);
  for (std::size_t s = 0; s < q.size(); ++s) {
    if (q[s] == 0.0) continue;
    const auto row = b.row(s);
    for (std::size_t t = 0; t < next.size(); ++t) next[t] += q[s] * row[t];
  }
  return next;
}

std::vector<double> states_to_obs(std::span<const double> qs, const Matrix& a) {
  std::vector<double> qo(a.cols(), 0.0);
  for (std::size_t s = 0; s < qs.size(); ++s) {
    if (qs[s] == 0.0) continue;
    const auto row = a.row(s);
    for (std::size_t o = 0; o < qo.size(); ++o) qo[o] += qs[s] * row[o];
  }
  return qo;
}

}  // namespace

Categorical predict_state(const Belief& belief, std::size_t action, const GenerativeModel& m) {
  check_action(action, m);
  return normalize(propagate_states(belief.dist.probs(), m.B[action]), m.state_labels);
}

Categorical predict_obs(const Belief& belief, std::size_t action, const GenerativeModel& m) {
  const auto qs = predict_state(belief, action, m);
  return normalize(states_to_obs(qs.probs(), m.A), m.obs_labels);
}

Belief bayesian_update(const Belief& belief, std::size_t action, std::size_t observation,
                       const GenerativeModel& m) {
  const auto qs = predict_state(belief, action, m);
  if (observation >= m.num_obs()) {
    throw Error(ErrorCode::UnknownLabel, "observation index " + std::to_string(observation));
  }
  std::vector<double> joint(qs.size());
  for (std::size_t s = 0; s < qs.size(); ++s) joint[s] = qs[s] * m.A(s, observation);
  try {
    return Belief{normalize(joint, m.state_labels), belief.step + 1};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::AllZeroWeights) throw;
    throw Error(ErrorCode::ImpossibleObservation,
                "'" + m.obs_labels[observation] + "' after '" + m.action_labels[action] +
                    "' has zero probability under the model");
  }
}

double expected_info_gain(const Belief& belief, std::size_t action, const GenerativeModel& m) {
  const auto qs = predict_state(belief, action, m);
  const auto qo = states_to_obs(qs.probs(), m.A);
  std::vector<double> posterior(qs.size());
  double gain = 0.0;
  for (std::size_t o = 0; o < qo.size(); ++o) {
    if (qo[o] <= 0.0) continue;
    for (std::size_t s = 0; s < qs.size(); ++s) posterior[s] = qs[s] * m.A(s, o) / qo[o];
    gain += qo[o] * kl_bits(posterior, qs.probs());
  }
  return std::max(gain, 0.0);
}

double expected_utility(const Belief& belief, std::size_t action, const GenerativeModel& m) {
  const auto qo = predict_obs(belief, action, m);
  double u = 0.0;
  for (std::size_t o = 0; o < qo.size(); ++o) {
    if (qo[o] > 0.0) u += qo[o] * m.C[o];
  }
  return u;
}

EfeBreakdown efe(const Belief& belief, std::size_t action, const GenerativeModel& m) {
  EfeBreakdown out;
  out.action = m.action_labels.at(action);
  out.epistemic_bits = expected_info_gain(belief, action, m);
  out.pragmatic = expected_utility(belief, action, m);
  out.efe = 0.0 - out.epistemic_bits * std::numbers::ln2 - out.pragmatic;
  return out;
}

std::vector<EfeBreakdown> efe_all(const Belief& belief, const GenerativeModel& m) {
  std::vector<EfeBreakdown> out;
  out.reserve(m.num_actions());
  for (std::size_t a = 0; a < m.num_actions(); ++a) out.push_back(efe(belief, a, m));
  return out;
}

std::string_view to_string(SelectionMode mode) {
  return mode == SelectionMode::Argmax ? "argmax" : "softmax";
}

SelectionMode parse_selection_mode(std::string_view text) {
  if (text == "argmax") return SelectionMode::Argmax;
  if (text == "softmax") return SelectionMode::Softmax;
  throw Error(ErrorCode::InvalidParameter, "selection mode '" + std::string(text) + "'");
}

Categorical softmax_policy(const std::vector<EfeBreakdown>& efe, double gamma,
                           const Labels& action_labels) {
  if (!(gamma >= 0.0)) throw Error(ErrorCode::InvalidParameter, "gamma must be >= 0");
  double lowest = efe.front().efe;
  for (const auto& e : efe) lowest = std::min(lowest, e.efe);
  std::vector<double> w(efe.size());
  for (std::size_t a = 0; a < efe.size(); ++a) w[a] = std::exp(-gamma * (efe[a].efe - lowest));
  return normalize(w, action_labels);
}

ActionChoice select_action(const Belief& belief, const GenerativeModel& m, double gamma,
                           SelectionMode mode, Rng& rng) {
  ActionChoice out;
  out.efe = efe_all(belief, m);
  if (mode == SelectionMode::Argmax) {
    double lowest = out.efe.front().efe;
    for (const auto& e : out.efe) lowest = std::min(lowest, e.efe);
    for (std::size_t a = 0; a < out.efe.size(); ++a) {
      if (out.efe[a].efe <= lowest + kTieTolerance) {
        out.action = a;
        break;
      }
    }
    out.policy = Categorical::delta(m.action_labels, out.action);
    return out;
  }
  out.policy = softmax_policy(out.efe, gamma, m.action_labels);
  out.action = sample_index(out.policy.probs(), rng);
  return out;
}

ActionChoice select_action(const Belief& belief, const GenerativeModel& m, double gamma,
                           SelectionMode mode, std::uint64_t rng_seed) {
  Rng rng(rng_seed);
  return select_action(belief, m, gamma, mode, rng);
}

std::string_view to_string(ObjectivePrior p) {
  return p == ObjectivePrior::HistoryFiltered ? "history-filtered" : "true-state";
}

ObjectivePrior parse_objective_prior(std::string_view text) {
  if (text == "history-filtered") return ObjectivePrior::HistoryFiltered;
  if (text == "true-state") return ObjectivePrior::TrueState;
  throw Error(ErrorCode::InvalidParameter, "objective prior '" + std::string(text) + "'");
}

const EmpowermentReading& EpisodeStep::reading(EmpowermentVariant v) const {
  for (const auto& r : empowerment) {
    if (r.variant == v) return r;
  }
  throw Error(ErrorCode::OutOfRange, "no reading for " + std::string(to_string(v)));
}

std::vector<std::string> EpisodeTrace::actions() const {
  std::vector<std::string> out;
  for (const auto& s : steps) out.push_back(action_labels[s.action]);
  return out;
}

std::vector<std::string> EpisodeTrace::observations() const {
  std::vector<std::string> out;
  for (const auto& s : steps) out.push_back(obs_labels[s.observation]);
  return out;
}

std::vector<double> EpisodeTrace::bits(EmpowermentVariant v) const {
  std::vector<double> out;
  for (const auto& s : steps) out.push_back(s.reading(v).bits);
  return out;
}

EpisodeTrace run_episode(const GenerativeModel& m, Environment env, const EpisodeConfig& config) {
  if (config.horizon == 0) throw Error(ErrorCode::InvalidParameter, "horizon must be >= 1");
  if (m.action_labels != env.action_labels() || m.obs_labels != env.obs_labels()) {
    throw Error(ErrorCode::LabelMismatch, "model '" + m.name +
                                              "' does not share action/observation labels with the " +
                                              std::string(to_string(env.layout())) + " environment");
  }
  require_valid(m);

  EpisodeTrace trace;
  trace.model = m.name;
  trace.environment = std::string(to_string(env.layout()));
  trace.context = std::string(to_string(env.context()));
  trace.seed = config.seed;
  trace.config = config;
  trace.action_labels = m.action_labels;
  trace.obs_labels = m.obs_labels;

  Rng rng(config.seed);
  Belief belief = initial_belief(m);
  Categorical filtered = env.context_marginal_prior();

  for (std::size_t t = 1; t <= config.horizon; ++t) {
    EpisodeStep step;
    step.index = t;
    step.prior = belief;

    auto choice = select_action(belief, m, config.gamma, config.mode, rng);
    step.efe = std::move(choice.efe);
    step.policy = std::move(choice.policy);
    step.action = choice.action;

    step.objective_prior =
        config.objective_prior == ObjectivePrior::HistoryFiltered ? filtered : env.true_state_prior();
    const Channel subjective = subjective_channel(m, belief.dist);
    const Channel objective = objective_channel(env, step.objective_prior);
    step.empowerment = {
        blahut_arimoto(subjective, config.capacity_tolerance, config.capacity_max_iter,
                       EmpowermentVariant::SubjectivePotential),
        actual_empowerment(subjective, step.policy, EmpowermentVariant::SubjectiveActual),
        blahut_arimoto(objective, config.capacity_tolerance, config.capacity_max_iter,
                       EmpowermentVariant::ObjectivePotential),
        actual_empowerment(objective, step.policy, EmpowermentVariant::ObjectiveActual),
    };

    step.observation = env.step(step.action);
    step.posterior = bayesian_update(belief, step.action, step.observation, m);
    filtered = env.filter(filtered, step.action, step.observation);
    belief = step.posterior;
    trace.steps.push_back(std::move(step));
  }
  return trace;
}

}  // namespace agency
