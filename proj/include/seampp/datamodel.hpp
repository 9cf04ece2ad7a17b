#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "seampp/timeutil.hpp"

namespace seampp {

enum class Archetype { plain, valley, mountain };

std::string archetype_name(Archetype a);
std::optional<Archetype> parse_archetype(std::string_view s);

// The three forecast sources, in canonical column order.
enum class Source { aro, det, ens_mu };

inline constexpr std::array<Source, 3> kAllSources{Source::aro, Source::det, Source::ens_mu};

std::string source_name(Source s);
std::optional<Source> parse_source(std::string_view s);

// Lead-hour cutoff per source, in postprocessing-lead terms.
int source_default_horizon(Source s);

struct StationMeta {
	std::string id;
	Archetype archetype = Archetype::plain;
};

// Plausibility screen applied to observed temperatures at ingestion.
inline constexpr double kMinPlausibleTempC = -90.0;
inline constexpr double kMaxPlausibleTempC = 60.0;

// Station-tagged hourly temperature series. Missing values are simply absent;
// there is no sentinel. Immutable once the dataset is assembled.
class ObservationSeries {
public:
	explicit ObservationSeries(std::string station) : station_(std::move(station)) {}

	// Rejects values outside the plausibility range; returns false for those.
	bool insert(Timestamp t, double temp_c);

	std::optional<double> at(Timestamp t) const;

	const std::string& station() const { return station_; }
	const std::map<Timestamp, double>& values() const { return values_; }
	std::size_t size() const { return values_.size(); }

private:
	std::string station_;
	std::map<Timestamp, double> values_;
};

// The postprocessing lead-time grid: hourly out to hourly_until_h, coarser
// after, out to max_lead_h. Lead +0 is never part of the grid; it is only the
// anchor for observation persistence.
struct LeadTimeGrid {
	std::vector<int> leads_h;
	int persistence_anchor_h = 0;

	static LeadTimeGrid standard() { return make(84, 3, 132); }
	static LeadTimeGrid make(int hourly_until_h, int coarse_step_h, int max_lead_h);

	bool contains(int lead_h) const;
	// Position of lead_h within the grid, for counting transition steps.
	std::optional<std::size_t> index_of(int lead_h) const;
};

// Per-source forecast values keyed by (postprocessing init, postprocessing
// lead). All inits must share one hour of day and no lead may exceed the
// source horizon.
class ForecastArchive {
public:
	enum class Insert { ok, beyond_horizon, negative_lead, init_hour_mismatch, not_finite, duplicate };

	ForecastArchive(Source source, int horizon_h) : source_(source), horizon_h_(horizon_h) {}

	Insert insert(Timestamp init, int lead_h, double temp_c);

	std::optional<double> at(Timestamp init, int lead_h) const;

	Source source() const { return source_; }
	int horizon_h() const { return horizon_h_; }
	std::optional<int> init_hour() const { return init_hour_; }
	const std::map<std::pair<Timestamp, int>, double>& values() const { return values_; }
	std::vector<Timestamp> init_times() const;

private:
	Source source_;
	int horizon_h_;
	std::optional<int> init_hour_;
	std::map<std::pair<Timestamp, int>, double> values_;
};

// One station set: observations plus up to three forecast archives each.
struct Dataset {
	std::vector<StationMeta> stations;
	std::map<std::string, ObservationSeries> obs;
	std::map<std::string, std::map<Source, ForecastArchive>> forecasts;

	// Union of init times across all stations and sources, ascending.
	std::vector<Timestamp> init_times() const;

	const StationMeta* find_station(const std::string& id) const;
	// Adds the station if it is not present yet.
	void ensure_station(const std::string& id, Archetype a = Archetype::plain);
};

} // namespace seampp
