#include "agency/empowerment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "agency/error.hpp"
#include "agency/inference.hpp"

namespace agency {

namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

}  // namespace

std::string_view to_string(EmpowermentVariant v) {
  switch (v) {
    case EmpowermentVariant::SubjectivePotential: return "subjective_potential";
    case EmpowermentVariant::SubjectiveActual: return "subjective_actual";
    case EmpowermentVariant::ObjectivePotential: return "objective_potential";
    case EmpowermentVariant::ObjectiveActual: return "objective_actual";
  }
  return "unknown";
}

bool is_potential(EmpowermentVariant v) {
  return v == EmpowermentVariant::SubjectivePotential || v == EmpowermentVariant::ObjectivePotential;
}

EmpowermentReading blahut_arimoto(const Channel& ch, double tol, std::size_t max_iter,
                                  EmpowermentVariant variant) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidParameter, "tolerance must be positive");
  if (max_iter == 0) throw Error(ErrorCode::InvalidParameter, "max_iter must be at least 1");
  if (ch.num_inputs() == 0 || ch.num_outputs() == 0) {
    throw Error(ErrorCode::InvalidChannel, "empty channel");
  }

  const std::size_t n = ch.num_inputs();

  struct Point {
    std::vector<double> p;
    std::vector<double> divergence;
    double lower = 0.0;
    double upper = 0.0;
  };
  auto evaluate = [&](std::vector<double> p) {
    Point pt{std::move(p), std::vector<double>(n), 0.0, 0.0};
    const auto q = ch.output_marginal(pt.p);
    for (std::size_t a = 0; a < n; ++a) {
      pt.divergence[a] = kl_bits(ch.row(a), q);
      if (pt.p[a] > 0.0) pt.lower += pt.p[a] * pt.divergence[a];
      pt.upper = std::max(pt.upper, pt.divergence[a]);
    }
    pt.lower = std::max(pt.lower, 0.0);
    return pt;
  };
  // Exponentiated step p * 2^(step * (D - max D)); step 1 is the classic update.
  // Weights are floored so an input dropped too early can re-enter the support.
  auto advance = [&](const Point& from, double step) {
    std::vector<double> p(n);
    double total = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      p[a] = std::max(from.p[a] * std::exp2(step * (from.divergence[a] - from.upper)), 1e-200);
      total += p[a];
    }
    for (double& x : p) x /= total;
    return evaluate(std::move(p));
  };

  EmpowermentReading out;
  out.variant = variant;
  out.converged = false;

  constexpr double kMaxStep = 1 << 20;
  double step = 1.0;
  double previous = -std::numeric_limits<double>::infinity();
  Point current = evaluate(std::vector<double>(n, 1.0 / static_cast<double>(n)));

  for (std::size_t iter = 1; iter <= max_iter; ++iter) {
    out.bits = current.lower;
    out.bound_gap = std::max(current.upper - current.lower, 0.0);
    out.iterations = iter;
    if (out.bound_gap < tol && std::abs(current.lower - previous) < tol) {
      out.converged = true;
      break;
    }
    previous = current.lower;

    // Larger steps are kept only while they do not lose ground; the
    // classic step never decreases the mutual information.
    Point next = advance(current, step);
    while (step > 1.0 && next.lower < current.lower) {
      step = std::max(1.0, step / 4.0);
      next = advance(current, step);
    }
    step = std::min(step * 2.0, kMaxStep);
    current = std::move(next);
  }
  out.optimal_input = Categorical(ch.input_labels(), current.p);
  return out;
}

double capacity_oracle(const Channel& ch, std::size_t grid_steps) {
  const std::size_t n = ch.num_inputs();
  if (n > 3) {
    throw Error(ErrorCode::TooManyInputs,
                "grid oracle supports at most 3 inputs, channel has " + std::to_string(n));
  }
  if (grid_steps == 0) throw Error(ErrorCode::InvalidParameter, "grid_steps must be positive");
  if (n <= 1) return 0.0;

  // I(A;O) = H(O) - sum_a p(a) H(O | a), evaluated directly at each grid point.
  std::vector<double> row_entropy(n);
  for (std::size_t a = 0; a < n; ++a) row_entropy[a] = entropy_bits(ch.row(a));

  const double step = 1.0 / static_cast<double>(grid_steps);
  std::vector<double> p(n);
  std::vector<double> q(ch.num_outputs());
  double best = 0.0;

  auto evaluate = [&] {
    std::fill(q.begin(), q.end(), 0.0);
    double conditional = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      if (p[a] == 0.0) continue;
      conditional += p[a] * row_entropy[a];
      const auto r = ch.row(a);
      for (std::size_t o = 0; o < q.size(); ++o) q[o] += p[a] * r[o];
    }
    best = std::max(best, entropy_bits(q) - conditional);
  };

  for (std::size_t i = 0; i <= grid_steps; ++i) {
    if (n == 2) {
      p[0] = static_cast<double>(i) * step;
      p[1] = static_cast<double>(grid_steps - i) * step;
      evaluate();
      continue;
    }
    for (std::size_t j = 0; i + j <= grid_steps; ++j) {
      p[0] = static_cast<double>(i) * step;
      p[1] = static_cast<double>(j) * step;
      p[2] = static_cast<double>(grid_steps - i - j) * step;
      evaluate();
    }
  }
  return best;
}

EmpowermentReading actual_empowerment(const Channel& ch, const Categorical& policy,
                                      EmpowermentVariant variant) {
  if (policy.labels() != ch.input_labels()) {
    throw Error(ErrorCode::LabelMismatch, "policy labels differ from channel inputs");
  }
  EmpowermentReading out;
  out.variant = variant;
  out.bits = mutual_information_bits(policy, ch);
  return out;
}

Channel subjective_channel(const GenerativeModel& m, const Categorical& belief) {
  if (belief.labels() != m.state_labels) {
    throw Error(ErrorCode::ModelShapeMismatch, "belief is not over the model's states");
  }
  if (m.B.size() != m.num_actions() || m.A.rows() != m.num_states() ||
      m.A.cols() != m.num_obs()) {
    throw Error(ErrorCode::ModelShapeMismatch, "model matrices do not match its label sets");
  }
  const Belief b{belief, 0};
  Matrix rows(m.num_actions(), m.num_obs());
  for (std::size_t a = 0; a < m.num_actions(); ++a) {
    const auto qo = predict_obs(b, a, m);
    std::copy(qo.probs().begin(), qo.probs().end(), rows.row(a).begin());
  }
  return Channel(m.action_labels, m.obs_labels, std::move(rows), m.modalities);
}

Channel objective_channel(const Environment& env, const Categorical& env_state_prior) {
  if (env_state_prior.labels() != env.state_labels()) {
    throw Error(ErrorCode::LabelMismatch, "prior is not over environment states");
  }
  const auto& actions = env.action_labels();
  Matrix rows(actions.size(), env.obs_labels().size());
  for (std::size_t a = 0; a < actions.size(); ++a) {
    auto row = rows.row(a);
    for (std::size_t i = 0; i < env_state_prior.size(); ++i) {
      if (env_state_prior[i] == 0.0) continue;
      const EnvState from = env.state_at(i);
      const auto p_obs =
          env.observation_distribution({from.context, next_position(from.position, a)});
      for (std::size_t o = 0; o < row.size(); ++o) row[o] += env_state_prior[i] * (*p_obs)[o];
    }
  }
  return Channel(actions, env.obs_labels(), std::move(rows), env.modalities());
}

Channel modality_restricted_channel(const Channel& ch, const std::vector<std::string>& keep) {
  if (!ch.output_modalities()) {
    throw Error(ErrorCode::UnknownModality, "channel outputs declare no modality factorization");
  }
  if (keep.empty()) throw Error(ErrorCode::InvalidParameter, "no modalities to keep");
  const auto& mods = *ch.output_modalities();

  std::vector<bool> kept(mods.size(), false);
  for (const auto& name : keep) {
    const auto it = std::find_if(mods.begin(), mods.end(),
                                 [&](const Modality& m) { return iequals(m.name, name); });
    if (it == mods.end()) throw Error(ErrorCode::UnknownModality, "'" + name + "'");
    kept[static_cast<std::size_t>(it - mods.begin())] = true;
  }

  ModalityFactorization reduced;
  for (std::size_t k = 0; k < mods.size(); ++k) {
    if (kept[k]) reduced.push_back(mods[k]);
  }
  const Labels out_labels = product_labels(reduced);

  // Project each full output index onto the kept coordinates (row-major).
  std::vector<std::size_t> target(ch.num_outputs());
  for (std::size_t o = 0; o < ch.num_outputs(); ++o) {
    std::size_t rest = o;
    std::size_t index = 0;
    std::size_t stride = 1;
    for (std::size_t k = mods.size(); k-- > 0;) {
      const std::size_t radix = mods[k].labels.size();
      const std::size_t coord = rest % radix;
      rest /= radix;
      if (kept[k]) {
        index += coord * stride;
        stride *= radix;
      }
    }
    target[o] = index;
  }

  Matrix rows(ch.num_inputs(), out_labels.size());
  for (std::size_t a = 0; a < ch.num_inputs(); ++a) {
    const auto r = ch.row(a);
    for (std::size_t o = 0; o < r.size(); ++o) rows(a, target[o]) += r[o];
  }
  return Channel(ch.input_labels(), out_labels, std::move(rows), std::move(reduced));
}

}  // namespace agency
