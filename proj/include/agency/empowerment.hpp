#pragma once

// Empowerment: the capacity of the one-step channel from actions to next
// observations, in four variants (subjective|objective x potential|actual).

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "agency/model.hpp"
#include "agency/prob.hpp"
#include "agency/tmaze.hpp"

namespace agency {

enum class EmpowermentVariant {
  SubjectivePotential,
  SubjectiveActual,
  ObjectivePotential,
  ObjectiveActual,
};

std::string_view to_string(EmpowermentVariant v);
bool is_potential(EmpowermentVariant v);

struct EmpowermentReading {
  EmpowermentVariant variant = EmpowermentVariant::SubjectivePotential;
  double bits = 0.0;
  /// Capacity-achieving input; set for potential variants only.
  std::optional<Categorical> optimal_input;
  std::size_t iterations = 0;
  bool converged = true;
  /// Upper minus lower capacity bound at termination (potential variants).
  double bound_gap = 0.0;
};

inline constexpr double kDefaultCapacityTolerance = 1e-9;
inline constexpr std::size_t kDefaultCapacityMaxIter = 10000;

/// Blahut-Arimoto capacity. Starts from the uniform input and iterates
/// p(a) <- p(a) 2^{D(row_a || marginal)} until both the bound gap
/// max_a D(row_a || q) - I(p) and the per-iteration change in I(p) fall
/// below `tol`. `bits` is I(p) at the returned input, a certified lower
/// bound within `bound_gap` of capacity.
EmpowermentReading blahut_arimoto(const Channel& ch, double tol = kDefaultCapacityTolerance,
                                  std::size_t max_iter = kDefaultCapacityMaxIter,
                                  EmpowermentVariant variant = EmpowermentVariant::SubjectivePotential);

/// Grid search of I(A;O) over the input simplex with resolution
/// 1/grid_steps. At most three inputs; throws TooManyInputs otherwise.
double capacity_oracle(const Channel& ch, std::size_t grid_steps);

/// Mutual information at a fixed policy; no maximization. Throws LabelMismatch.
EmpowermentReading actual_empowerment(const Channel& ch, const Categorical& policy,
                                      EmpowermentVariant variant = EmpowermentVariant::SubjectiveActual);

/// Row a is the agent's predicted observation distribution one step after
/// taking a from `belief`. Throws ModelShapeMismatch.
Channel subjective_channel(const GenerativeModel& m, const Categorical& belief);

/// Row a is sum_s prior(s) p_true(o | s, a). Throws LabelMismatch.
Channel objective_channel(const Environment& env, const Categorical& env_state_prior);

/// Marginalizes the outputs onto the kept modalities (matched
/// case-insensitively, returned in declared order). Throws UnknownModality.
Channel modality_restricted_channel(const Channel& ch, const std::vector<std::string>& keep);

}  // namespace agency
