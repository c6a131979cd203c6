#pragma once

// JSON and CSV forms of traces, reports and channels. The schema is
// documented in docs/output-schema.md.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "agency/empowerment.hpp"
#include "agency/inference.hpp"
#include "agency/phenotyping.hpp"
#include "agency/prob.hpp"

namespace agency {

using Json = nlohmann::ordered_json;

Json reading_to_json(const EmpowermentReading& r);
Json trace_to_json(const EpisodeTrace& trace);
Json report_to_json(const PhenotypeReport& report);

/// One row per (spec, seed, step); doubles at 17 significant digits.
std::string cells_to_csv(const std::vector<BatteryCell>& cells);

/// {"inputs": [...], "outputs": [...], "modalities"?: [...], "rows": [[...]]}
Json channel_to_json(const Channel& ch);
/// Throws ParseError for bad structure, InvalidChannel for bad rows.
Channel channel_from_json(const Json& j);
Channel load_channel(const std::filesystem::path& path);

/// Canonical text form (2-space indent, trailing newline).
std::string dump_json(const Json& j);

}  // namespace agency
