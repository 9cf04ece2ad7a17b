#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "seampp/datamodel.hpp"

namespace seampp {

// Outcome of one CSV ingestion pass. Diagnostics carry the 1-based line
// number of every rejected row.
struct IngestReport {
	std::size_t accepted = 0;
	std::size_t rejected = 0;
	std::vector<std::string> diagnostics;
};

struct IngestOptions {
	// Shift from raw NWP (init, lead) keys to postprocessing keys: the
	// postprocessing init is init + offset and the lead becomes lead - offset.
	// 0 means the file already uses postprocessing keys (the canonical
	// schema); 12 is the usual value when ingesting archives keyed by a
	// 00 UTC NWP init for a 12 UTC postprocessing run.
	int init_offset_h = 0;
	int aro_horizon_h = 36;
	int det_horizon_h = 84;
	int ensmu_horizon_h = 132;

	int horizon_for(Source s) const;
};

// Schema: station,valid_time_utc,temp_c
IngestReport read_observations_csv(const std::filesystem::path& path, Dataset& out);

// Schema: station,source,init_time_utc,lead_h,temp_c
IngestReport read_forecasts_csv(const std::filesystem::path& path, Dataset& out, const IngestOptions& opts = {});

void write_observations_csv(const std::filesystem::path& path, const Dataset& ds);
void write_forecasts_csv(const std::filesystem::path& path, const Dataset& ds);

// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double v);

// Splits one CSV record on commas. Fields in these schemas never contain
// commas or quotes.
std::vector<std::string> split_csv_line(const std::string& line);

} // namespace seampp
