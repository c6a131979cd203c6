#pragma once

// Agency phenotypes: manipulate the generative model, run episodes, and
// grade the resulting empowerment trajectories as Zero / Intermediate / High.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "agency/empowerment.hpp"
#include "agency/inference.hpp"
#include "agency/model.hpp"
#include "agency/tmaze.hpp"

namespace agency {

enum class PhenotypeClass { Zero = 0, Intermediate = 1, High = 2 };

std::string_view to_string(PhenotypeClass c);

inline constexpr double kPhenotypeEpsilon = 1e-6;

struct PhenotypeLabel {
  PhenotypeClass cls = PhenotypeClass::Zero;
  double bits = 0.0;
  double max_bits = 0.0;  // log2 of the number of actions
};

/// Zero below epsilon, High within epsilon of log2(n_actions), otherwise
/// Intermediate. Throws OutOfRange outside [-eps, log2(n_actions) + eps].
PhenotypeLabel classify_phenotype(double bits, std::size_t n_actions);

enum class Preset { Standard, PreferenceInverted, LikelihoodCorrupted, FlatPreference };

std::string_view to_string(Preset p);
/// Accepts the kebab-case names printed by to_string; throws InvalidParameter.
Preset parse_preset(std::string_view text);

/// Log preference assigned to cue observations by PreferenceInverted.
inline constexpr double kCuePenalty = -1.0;

struct ManipulationSpec {
  std::string name;
  Preset preset = Preset::Standard;
  /// Likelihood corruption mixing weight, in [0, 1].
  double alpha = 0.0;

  static ManipulationSpec of(Preset preset, double alpha = 0.0);
};

/// Standard: unchanged. PreferenceInverted: Cheese and Shock preferences
/// swapped, cue observations set to kCuePenalty. LikelihoodCorrupted:
/// A <- (1 - alpha) A + alpha * uniform. FlatPreference: C <- 0.
/// Throws InvalidParameter.
GenerativeModel apply_manipulation(const GenerativeModel& m, const ManipulationSpec& spec);

using EnvironmentFactory = std::function<Environment(std::uint64_t seed)>;

struct BatteryOptions {
  std::size_t horizon = 2;
  double gamma = kDefaultGamma;
  SelectionMode mode = SelectionMode::Argmax;
  ObjectivePrior objective_prior = ObjectivePrior::HistoryFiltered;
  /// Worker threads; cells are independent and results keep (spec, seed) order.
  std::size_t jobs = 1;
};

struct BatteryCell {
  std::string spec;
  std::uint64_t seed = 0;
  EpisodeTrace trace;
  /// Per step, from subjective potential empowerment.
  std::vector<PhenotypeLabel> phenotypes;
};

struct StepAggregate {
  std::size_t step = 0;
  EmpowermentVariant variant = EmpowermentVariant::SubjectivePotential;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  PhenotypeLabel phenotype;  // class of the mean
};

struct SpecSummary {
  std::string spec;
  /// Ordered by step, then variant.
  std::vector<StepAggregate> aggregates;

  const StepAggregate& at(std::size_t step, EmpowermentVariant v) const;
  /// Per-step classes of mean subjective potential empowerment.
  std::vector<PhenotypeClass> classes() const;
};

struct PhenotypeReport {
  std::vector<BatteryCell> cells;  // spec-major, seeds in input order
  std::vector<SpecSummary> summaries;

  const SpecSummary& summary(std::string_view spec) const;
};

/// Runs every (spec, seed) cell. Errors are rethrown with the same code and
/// the failing spec and seed prepended.
PhenotypeReport run_battery(const GenerativeModel& model, const EnvironmentFactory& make_env,
                            const std::vector<std::uint64_t>& env_seeds,
                            const std::vector<ManipulationSpec>& specs,
                            const BatteryOptions& options = {});

/// Aggregates cells into per-spec summaries; independent of seed order.
std::vector<SpecSummary> summarize(const std::vector<BatteryCell>& cells,
                                   const std::vector<std::string>& spec_order,
                                   std::size_t n_actions);

}  // namespace agency
