#pragma once

#include <seampp/assembly.hpp>
#include <seampp/baselines.hpp>
#include <seampp/emos.hpp>
#include <seampp/synthgen.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace seampp {

/// One station entry of a synthetic run: metadata plus its generation
/// profile (archetype defaults with any explicit overrides applied).
struct StationConfig {
	StationMeta meta;
	SynthProfile profile;
};

struct SynthConfig {
	SynthOptions options;
	std::vector<StationConfig> stations;
};

/// Pre-existing CSV inputs instead of synthetic generation.
struct DataConfig {
	std::filesystem::path observations_csv;
	std::filesystem::path forecasts_csv;
	/// Hours between the raw NWP init in the forecast CSV and the
	/// postprocessing init; 0 means the CSV already uses postprocessing
	/// keys, 12 re-keys a raw 00 UTC archive to the 12 UTC cycle.
	int init_offset_h = 0;
};

struct FoldConfig {
	int k = 3;
	/// Optional explicit [start, end) init ranges, one per fold; when
	/// empty, folds block by calendar year round-robin.
	std::vector<std::pair<Timestamp, Timestamp>> ranges;
};

/// Everything one pipeline invocation needs, parsed from a JSON config.
struct RunConfig {
	std::filesystem::path out_dir = "out";
	std::uint64_t seed = 1;
	std::optional<SynthConfig> synth;
	std::optional<DataConfig> data;
	LeadTimeGrid grid = LeadTimeGrid::standard();
	FoldConfig folds;
	/// Stream labels to run: the PredictorMode labels plus "transition1"
	/// and "transition2".
	std::vector<std::string> modes;
	AssembleOptions assemble;
	FitOptions fit;
	TransitionConfig transition;
};

/// All mode labels a config may list.
bool is_known_mode_label(const std::string& label);

/// Parse a config document.  `origin` names the source in error messages.
/// Throws ConfigError on syntax errors, unknown keys, or invalid values.
RunConfig parse_config(const std::string& text, const std::string& origin);

/// Read and parse a config file.
RunConfig load_config(const std::filesystem::path& path);

/// Apply command-line overrides on top of a parsed config.  `modes` is a
/// comma-separated label list.
void apply_overrides(RunConfig& cfg,
                     const std::optional<std::uint64_t>& seed,
                     const std::optional<std::string>& out_dir,
                     const std::optional<std::string>& modes);

} // namespace seampp
