#include "seampp/datamodel.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "seampp/errors.hpp"

namespace seampp {

std::string archetype_name(Archetype a)
{
	switch (a) {
		case Archetype::plain: return "plain";
		case Archetype::valley: return "valley";
		case Archetype::mountain: return "mountain";
	}
	return "?";
}

std::optional<Archetype> parse_archetype(std::string_view s)
{
	if (s == "plain")
		return Archetype::plain;
	if (s == "valley")
		return Archetype::valley;
	if (s == "mountain")
		return Archetype::mountain;
	return std::nullopt;
}

std::string source_name(Source s)
{
	switch (s) {
		case Source::aro: return "aro";
		case Source::det: return "det";
		case Source::ens_mu: return "ens_mu";
	}
	return "?";
}

std::optional<Source> parse_source(std::string_view s)
{
	if (s == "aro")
		return Source::aro;
	if (s == "det")
		return Source::det;
	if (s == "ens_mu")
		return Source::ens_mu;
	return std::nullopt;
}

int source_default_horizon(Source s)
{
	switch (s) {
		case Source::aro: return 36;
		case Source::det: return 84;
		case Source::ens_mu: return 132;
	}
	return 0;
}

bool ObservationSeries::insert(Timestamp t, double temp_c)
{
	if (!std::isfinite(temp_c) || temp_c < kMinPlausibleTempC || temp_c > kMaxPlausibleTempC)
		return false;
	values_[t] = temp_c;
	return true;
}

std::optional<double> ObservationSeries::at(Timestamp t) const
{
	const auto it = values_.find(t);
	if (it == values_.end())
		return std::nullopt;
	return it->second;
}

LeadTimeGrid LeadTimeGrid::make(int hourly_until_h, int coarse_step_h, int max_lead_h)
{
	if (hourly_until_h < 1 || coarse_step_h < 1 || max_lead_h < hourly_until_h)
		throw DataError("invalid lead-time grid parameters");
	LeadTimeGrid g;
	for (int l = 1; l <= hourly_until_h; ++l)
		g.leads_h.push_back(l);
	for (int l = hourly_until_h + coarse_step_h; l <= max_lead_h; l += coarse_step_h)
		g.leads_h.push_back(l);
	return g;
}

bool LeadTimeGrid::contains(int lead_h) const
{
	return std::binary_search(leads_h.begin(), leads_h.end(), lead_h);
}

std::optional<std::size_t> LeadTimeGrid::index_of(int lead_h) const
{
	const auto it = std::lower_bound(leads_h.begin(), leads_h.end(), lead_h);
	if (it == leads_h.end() || *it != lead_h)
		return std::nullopt;
	return static_cast<std::size_t>(it - leads_h.begin());
}

ForecastArchive::Insert ForecastArchive::insert(Timestamp init, int lead_h, double temp_c)
{
	if (!std::isfinite(temp_c))
		return Insert::not_finite;
	if (lead_h < 0)
		return Insert::negative_lead;
	if (lead_h > horizon_h_)
		return Insert::beyond_horizon;
	if (init_hour_ && *init_hour_ != hour_of_day(init))
		return Insert::init_hour_mismatch;
	const auto key = std::make_pair(init, lead_h);
	if (values_.count(key))
		return Insert::duplicate;
	if (!init_hour_)
		init_hour_ = hour_of_day(init);
	values_.emplace(key, temp_c);
	return Insert::ok;
}

std::optional<double> ForecastArchive::at(Timestamp init, int lead_h) const
{
	const auto it = values_.find(std::make_pair(init, lead_h));
	if (it == values_.end())
		return std::nullopt;
	return it->second;
}

std::vector<Timestamp> ForecastArchive::init_times() const
{
	std::vector<Timestamp> out;
	for (const auto& [key, value] : values_) {
		(void)value;
		if (out.empty() || out.back() != key.first)
			out.push_back(key.first);
	}
	return out;
}

std::vector<Timestamp> Dataset::init_times() const
{
	std::set<Timestamp> all;
	for (const auto& [station, by_source] : forecasts) {
		(void)station;
		for (const auto& [src, archive] : by_source) {
			(void)src;
			for (const auto t : archive.init_times())
				all.insert(t);
		}
	}
	return {all.begin(), all.end()};
}

const StationMeta* Dataset::find_station(const std::string& id) const
{
	for (const auto& s : stations)
		if (s.id == id)
			return &s;
	return nullptr;
}

void Dataset::ensure_station(const std::string& id, Archetype a)
{
	if (!find_station(id))
		stations.push_back(StationMeta{id, a});
}

} // namespace seampp
