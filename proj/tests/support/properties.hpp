#pragma once

// Randomized property checks shared by the unit suites and the acceptance
// runner. Each check runs `cases` seeded cases and reports the worst
// deviation seen alongside any failures.

#include <cstddef>
#include <cstdint>
#include <string>

namespace agency::testing {

struct PropertyResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  double worst = 0.0;
  std::string first_failure;

  bool ok() const { return cases > 0 && failures == 0; }
};

inline constexpr std::size_t kDefaultCases = 200;

// prob
PropertyResult check_entropy_maximized_by_uniform(std::uint64_t seed, std::size_t cases = kDefaultCases);
PropertyResult check_mutual_information_two_formulas(std::uint64_t seed, std::size_t cases = kDefaultCases);
PropertyResult check_gibbs_inequality(std::uint64_t seed, std::size_t cases = kDefaultCases);

// empowerment
PropertyResult check_capacity_dominates_actual(std::uint64_t seed, std::size_t cases = kDefaultCases);
PropertyResult check_capacity_bounds(std::uint64_t seed, std::size_t cases = kDefaultCases);
PropertyResult check_capacity_zero_iff_identical_rows(std::uint64_t seed, std::size_t cases = kDefaultCases);
PropertyResult check_duplicate_input_invariance(std::uint64_t seed, std::size_t cases = kDefaultCases);
PropertyResult check_modality_restriction_monotone(std::uint64_t seed, std::size_t cases = kDefaultCases);
/// Blahut-Arimoto vs the simplex grid oracle on 3-input channels; `worst`
/// is the largest |difference|. Also fails if any bound gap reaches 1e-8.
PropertyResult check_blahut_arimoto_matches_oracle(std::uint64_t seed, std::size_t cases = 100,
                                                   std::size_t grid_steps = 1000);

// inference
PropertyResult check_posterior_consistency(std::uint64_t seed, std::size_t cases = kDefaultCases);
PropertyResult check_info_gain_two_routes(std::uint64_t seed, std::size_t cases = kDefaultCases);
PropertyResult check_preference_shift_invariance(std::uint64_t seed, std::size_t cases = kDefaultCases);

// agent
PropertyResult check_model_json_roundtrip(std::uint64_t seed, std::size_t cases = kDefaultCases);

// phenotyping
PropertyResult check_classification_monotone(std::uint64_t seed, std::size_t cases = kDefaultCases);
PropertyResult check_report_permutation_invariance(std::uint64_t seed, std::size_t cases = 100);

}  // namespace agency::testing
