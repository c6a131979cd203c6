#include "agency/phenotyping.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <cmath>
#include <exception>
#include <map>
#include <numeric>
#include <set>
#include <thread>

#include "agency/error.hpp"

namespace agency {

namespace {

std::vector<std::string> split(const std::string& s, std::string_view sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t pos; (pos = s.find(sep, start)) != std::string::npos; start = pos + sep.size()) {
    out.push_back(s.substr(start, pos - start));
  }
  out.push_back(s.substr(start));
  return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string swap_reward(const std::string& token) {
  if (token == "Cheese") return "Shock";
  if (token == "Shock") return "Cheese";
  return token;
}

// Locates reward and cue observations either by flat label (minimal maze)
// or through the Reward / Position modality coordinates.
GenerativeModel invert_preferences(const GenerativeModel& m) {
  std::size_t reward_coord = SIZE_MAX;
  std::size_t position_coord = SIZE_MAX;
  if (m.modalities) {
    for (std::size_t k = 0; k < m.modalities->size(); ++k) {
      if ((*m.modalities)[k].name == "Reward") reward_coord = k;
      if ((*m.modalities)[k].name == "Position") position_coord = k;
    }
  }

  GenerativeModel out = m;
  bool found = false;
  for (std::size_t o = 0; o < m.num_obs(); ++o) {
    const std::string& label = m.obs_labels[o];
    std::string partner = label;
    bool cue = false;
    if (reward_coord != SIZE_MAX) {
      auto parts = split(label, kModalitySeparator);
      parts[reward_coord] = swap_reward(parts[reward_coord]);
      partner = join(parts, kModalitySeparator);
      cue = position_coord != SIZE_MAX &&
            split(label, kModalitySeparator)[position_coord] == "Cue";
    } else {
      partner = swap_reward(label);
      cue = label == "RightObs" || label == "LeftObs";
    }
    if (cue) {
      out.C[o] = kCuePenalty;
    } else if (partner != label) {
      out.C[o] = m.C[m.obs_index(partner)];
      found = true;
    }
  }
  if (!found) {
    throw Error(ErrorCode::InvalidParameter,
                "preference inversion needs Cheese and Shock observations in model '" + m.name + "'");
  }
  return out;
}

}  // namespace

std::string_view to_string(PhenotypeClass c) {
  switch (c) {
    case PhenotypeClass::Zero: return "Zero";
    case PhenotypeClass::Intermediate: return "Intermediate";
    case PhenotypeClass::High: return "High";
  }
  return "Unknown";
}

PhenotypeLabel classify_phenotype(double bits, std::size_t n_actions) {
  if (n_actions == 0) throw Error(ErrorCode::OutOfRange, "no actions");
  const double max_bits = std::log2(static_cast<double>(n_actions));
  if (!(bits >= -kPhenotypeEpsilon) || !(bits <= max_bits + kPhenotypeEpsilon)) {
    throw Error(ErrorCode::OutOfRange, std::to_string(bits) + " bits outside [0, " +
                                           std::to_string(max_bits) + "]");
  }
  PhenotypeLabel out{PhenotypeClass::Intermediate, bits, max_bits};
  if (bits < kPhenotypeEpsilon) {
    out.cls = PhenotypeClass::Zero;
  } else if (bits > max_bits - kPhenotypeEpsilon) {
    out.cls = PhenotypeClass::High;
  }
  return out;
}

std::string_view to_string(Preset p) {
  switch (p) {
    case Preset::Standard: return "standard";
    case Preset::PreferenceInverted: return "preference-inverted";
    case Preset::LikelihoodCorrupted: return "likelihood-corrupted";
    case Preset::FlatPreference: return "flat-preference";
  }
  return "unknown";
}

Preset parse_preset(std::string_view text) {
  for (Preset p : {Preset::Standard, Preset::PreferenceInverted, Preset::LikelihoodCorrupted,
                   Preset::FlatPreference}) {
    if (text == to_string(p)) return p;
  }
  throw Error(ErrorCode::InvalidParameter, "unknown preset '" + std::string(text) + "'");
}

ManipulationSpec ManipulationSpec::of(Preset preset, double alpha) {
  std::string name(to_string(preset));
  if (preset == Preset::LikelihoodCorrupted) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", alpha);
    name += "(" + std::string(buf) + ")";
  }
  return ManipulationSpec{std::move(name), preset, alpha};
}

GenerativeModel apply_manipulation(const GenerativeModel& m, const ManipulationSpec& spec) {
  switch (spec.preset) {
    case Preset::Standard:
      return m;
    case Preset::PreferenceInverted:
      return invert_preferences(m);
    case Preset::LikelihoodCorrupted: {
      if (!(spec.alpha >= 0.0 && spec.alpha <= 1.0)) {
        throw Error(ErrorCode::InvalidParameter, "alpha must lie in [0, 1]");
      }
      GenerativeModel out = m;
      const double uniform = 1.0 / static_cast<double>(m.num_obs());
      for (std::size_t s = 0; s < out.A.rows(); ++s) {
        for (std::size_t o = 0; o < out.A.cols(); ++o) {
          out.A(s, o) = (1.0 - spec.alpha) * m.A(s, o) + spec.alpha * uniform;
        }
      }
      return out;
    }
    case Preset::FlatPreference: {
      GenerativeModel out = m;
      std::fill(out.C.begin(), out.C.end(), 0.0);
      return out;
    }
  }
  throw Error(ErrorCode::InvalidParameter, "unknown preset");
}

const StepAggregate& SpecSummary::at(std::size_t step, EmpowermentVariant v) const {
  for (const auto& a : aggregates) {
    if (a.step == step && a.variant == v) return a;
  }
  throw Error(ErrorCode::OutOfRange, "no aggregate for step " + std::to_string(step));
}

std::vector<PhenotypeClass> SpecSummary::classes() const {
  std::vector<PhenotypeClass> out;
  for (const auto& a : aggregates) {
    if (a.variant == EmpowermentVariant::SubjectivePotential) out.push_back(a.phenotype.cls);
  }
  return out;
}

const SpecSummary& PhenotypeReport::summary(std::string_view spec) const {
  for (const auto& s : summaries) {
    if (s.spec == spec) return s;
  }
  throw Error(ErrorCode::OutOfRange, "no summary for spec '" + std::string(spec) + "'");
}

std::vector<SpecSummary> summarize(const std::vector<BatteryCell>& cells,
                                   const std::vector<std::string>& spec_order,
                                   std::size_t n_actions) {
  std::vector<SpecSummary> out;
  for (const auto& spec : spec_order) {
    // (step, variant) -> readings across seeds
    std::map<std::pair<std::size_t, int>, std::vector<double>> values;
    for (const auto& cell : cells) {
      if (cell.spec != spec) continue;
      for (const auto& step : cell.trace.steps) {
        for (const auto& r : step.empowerment) {
          values[{step.index, static_cast<int>(r.variant)}].push_back(r.bits);
        }
      }
    }
    SpecSummary summary{spec, {}};
    for (auto& [key, v] : values) {
      // Sorting first makes the floating-point sum independent of seed order.
      std::sort(v.begin(), v.end());
      const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
      StepAggregate agg;
      agg.step = key.first;
      agg.variant = static_cast<EmpowermentVariant>(key.second);
      agg.mean = mean;
      agg.min = v.front();
      agg.max = v.back();
      agg.phenotype = classify_phenotype(mean, n_actions);
      summary.aggregates.push_back(agg);
    }
    out.push_back(std::move(summary));
  }
  return out;
}

PhenotypeReport run_battery(const GenerativeModel& model, const EnvironmentFactory& make_env,
                            const std::vector<std::uint64_t>& env_seeds,
                            const std::vector<ManipulationSpec>& specs,
                            const BatteryOptions& options) {
  if (env_seeds.empty()) throw Error(ErrorCode::InvalidParameter, "no seeds");
  if (specs.empty()) throw Error(ErrorCode::InvalidParameter, "no manipulation specs");
  std::set<std::string> names;
  for (const auto& s : specs) {
    if (!names.insert(s.name).second) {
      throw Error(ErrorCode::InvalidParameter, "duplicate spec name '" + s.name + "'");
    }
  }

  // Manipulations are applied once, up front, so bad parameters fail fast.
  std::vector<GenerativeModel> models;
  for (const auto& s : specs) {
    try {
      models.push_back(apply_manipulation(model, s));
    } catch (const Error& e) {
      throw Error(e.code(), "spec '" + s.name + "': " + e.what());
    }
  }

  const std::size_t n_cells = specs.size() * env_seeds.size();
  std::vector<BatteryCell> cells(n_cells);
  std::vector<std::exception_ptr> failures(n_cells);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n_cells;) {
      const std::size_t si = i / env_seeds.size();
      const std::uint64_t seed = env_seeds[i % env_seeds.size()];
      try {
        EpisodeConfig config;
        config.horizon = options.horizon;
        config.gamma = options.gamma;
        config.mode = options.mode;
        config.seed = seed;
        config.objective_prior = options.objective_prior;
        BatteryCell cell{specs[si].name, seed, run_episode(models[si], make_env(seed), config), {}};
        for (const auto& step : cell.trace.steps) {
          cell.phenotypes.push_back(classify_phenotype(
              step.reading(EmpowermentVariant::SubjectivePotential).bits, models[si].num_actions()));
        }
        cells[i] = std::move(cell);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };

  const std::size_t jobs = std::clamp<std::size_t>(options.jobs, 1, n_cells);
  {
    std::vector<std::jthread> pool;
    for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
  }

  for (std::size_t i = 0; i < n_cells; ++i) {
    if (!failures[i]) continue;
    const std::string where = "spec '" + specs[i / env_seeds.size()].name + "', seed " +
                              std::to_string(env_seeds[i % env_seeds.size()]) + ": ";
    try {
      std::rethrow_exception(failures[i]);
    } catch (const Error& e) {
      throw Error(e.code(), where + e.what());
    }
  }

  PhenotypeReport report;
  report.cells = std::move(cells);
  std::vector<std::string> order;
  for (const auto& s : specs) order.push_back(s.name);
  report.summaries = summarize(report.cells, order, model.num_actions());
  return report;
}

}  // namespace agency
