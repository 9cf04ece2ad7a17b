#pragma once

// Shared hand-built fixtures for the unit tests.  Everything here is a
// closed-form function of the timestamp so tests can predict any cell of
// a design matrix without re-deriving it from container state.

#include <seampp/datamodel.hpp>
#include <seampp/timeutil.hpp>

#include <cmath>
#include <numbers>
#include <vector>

namespace testhelp {

using namespace seampp;

inline Timestamp first_init() { return make_timestamp(2021, 7, 1, 12); }

inline std::vector<Timestamp> daily_inits(int n, Timestamp start = first_init()) {
	std::vector<Timestamp> out;
	for (int d = 0; d < n; ++d)
		out.push_back({start.hours + 24 * d});
	return out;
}

// Deterministic "weather": diurnal cycle plus a slow drift.  No noise, so
// every predictor and target is exactly predictable in tests.
inline double hand_obs_value(Timestamp t) {
	const double hod = static_cast<double>(hour_of_day(t));
	const double drift_h = static_cast<double>(t.hours - first_init().hours);
	return 10.0 + 6.0 * std::sin(2.0 * std::numbers::pi * hod / 24.0) + 0.002 * drift_h;
}

inline double hand_bias(Source s) {
	switch (s) {
	case Source::aro: return 0.5;
	case Source::det: return 1.0;
	case Source::ens_mu: return 1.5;
	}
	return 0.0;
}

inline double hand_forecast_value(Source s, Timestamp init, int lead_h) {
	return hand_obs_value(valid_time(init, lead_h)) + hand_bias(s) + 0.05 * lead_h;
}

// Hourly observations from the first init's midnight out to the last
// init plus the longest horizon.
inline ObservationSeries make_hand_obs(const std::string& station, int n_inits,
                                       Timestamp start = first_init()) {
	ObservationSeries obs(station);
	const Timestamp from{start.hours - hour_of_day(start)};
	const Timestamp to{start.hours + 24 * (n_inits - 1) + source_default_horizon(Source::ens_mu)};
	for (std::int64_t h = from.hours; h <= to.hours; ++h)
		obs.insert({h}, hand_obs_value({h}));
	return obs;
}

inline ForecastArchive make_hand_archive(Source s, int n_inits, Timestamp start = first_init()) {
	ForecastArchive archive(s, source_default_horizon(s));
	for (const Timestamp init : daily_inits(n_inits, start))
		for (int lead = 1; lead <= archive.horizon_h(); ++lead)
			archive.insert(init, lead, hand_forecast_value(s, init, lead));
	return archive;
}

inline Dataset make_hand_dataset(const std::string& station, int n_inits,
                                 Timestamp start = first_init()) {
	Dataset ds;
	ds.ensure_station(station, Archetype::plain);
	ds.obs.insert_or_assign(station, make_hand_obs(station, n_inits, start));
	auto& by_source = ds.forecasts[station];
	for (const Source s : kAllSources)
		by_source.emplace(s, make_hand_archive(s, n_inits, start));
	return ds;
}

inline std::vector<const ForecastArchive*> archive_ptrs(const Dataset& ds, const std::string& station) {
	std::vector<const ForecastArchive*> out;
	for (const auto& [src, archive] : ds.forecasts.at(station)) {
		(void)src;
		out.push_back(&archive);
	}
	return out;
}

} // namespace testhelp
