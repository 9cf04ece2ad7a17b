#include <seampp/synthgen.hpp>

#include <seampp/errors.hpp>
#include <seampp/timeutil.hpp>

#include <cmath>
#include <numbers>

namespace seampp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Phase offsets putting the seasonal peak in late July and the diurnal
// peak mid-afternoon.
constexpr double kSeasonalPhaseDoy = 110.0;
constexpr double kDiurnalPhaseHour = 9.0;

} // namespace

double NormalStream::uniform() {
	return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double NormalStream::normal() {
	// u1 in (0, 1] so the log is finite; u2 in [0, 1).
	const double u1 = static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
	const double u2 = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
	return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

std::uint64_t mix_seed(std::uint64_t x) {
	x += 0x9e3779b97f4a7c15ull;
	x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
	x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
	return x ^ (x >> 31);
}

std::uint64_t hash_name(const std::string& s) {
	std::uint64_t h = 0xcbf29ce484222325ull;
	for (const unsigned char c : s) {
		h ^= c;
		h *= 0x100000001b3ull;
	}
	return h;
}

SynthProfile SynthProfile::plain_default() {
	SynthProfile p;
	p.archetype = Archetype::plain;
	p.base_temp_c = 9.0;
	p.seasonal_amp = 9.0;
	p.diurnal_amp = 4.0;
	p.obs_ar1_rho = 0.95;
	p.anomaly_sd = 2.0;
	p.obs_noise_sd = 0.2;
	// NWP resolves a flat site well: small biases, small errors, and an
	// anomaly memory short enough that persistence stops helping early.
	p.sources[Source::aro] = {0.2, 0.1, 0.9, 0.015, 0.97};
	p.sources[Source::det] = {0.4, 0.2, 1.2, 0.012, 0.97};
	p.sources[Source::ens_mu] = {0.3, 0.2, 1.3, 0.008, 0.97};
	return p;
}

SynthProfile SynthProfile::valley_default() {
	SynthProfile p;
	p.archetype = Archetype::valley;
	p.base_temp_c = 7.0;
	p.seasonal_amp = 10.0;
	p.diurnal_amp = 6.0;
	p.obs_ar1_rho = 0.995;
	p.anomaly_sd = 2.4;
	p.obs_noise_sd = 0.2;
	// Coarse sources miss the cold-pool signal badly; the high-resolution
	// source is clearly better while it lasts.
	p.sources[Source::aro] = {0.5, 0.3, 0.8, 0.030, 0.97};
	p.sources[Source::det] = {2.0, 0.8, 1.7, 0.022, 0.98};
	p.sources[Source::ens_mu] = {1.6, 0.6, 1.7, 0.010, 0.98};
	return p;
}

SynthProfile SynthProfile::mountain_default() {
	SynthProfile p;
	p.archetype = Archetype::mountain;
	p.base_temp_c = 1.0;
	p.seasonal_amp = 8.0;
	p.diurnal_amp = 3.0;
	p.obs_ar1_rho = 0.993;
	p.anomaly_sd = 2.8;
	p.obs_noise_sd = 0.3;
	// Coarse grids place the station far below its true elevation, hence
	// the large constant biases on top of large errors.
	p.sources[Source::aro] = {1.0, 0.4, 0.9, 0.030, 0.97};
	p.sources[Source::det] = {4.0, 1.0, 2.2, 0.022, 0.98};
	p.sources[Source::ens_mu] = {3.5, 0.8, 2.0, 0.010, 0.98};
	return p;
}

SynthProfile SynthProfile::archetype_default(Archetype a) {
	switch (a) {
	case Archetype::plain: return plain_default();
	case Archetype::valley: return valley_default();
	case Archetype::mountain: return mountain_default();
	}
	throw InvalidProfile("unknown archetype");
}

namespace {

void validate(const SynthProfile& p, const SynthOptions& opts) {
	const auto bad = [](const std::string& what) {
		throw InvalidProfile("synth profile: " + what);
	};
	if (!(p.anomaly_sd > 0.0)) bad("anomaly_sd must be > 0");
	if (!(p.obs_noise_sd > 0.0)) bad("obs_noise_sd must be > 0");
	if (!(p.obs_ar1_rho >= 0.0 && p.obs_ar1_rho < 1.0)) bad("obs_ar1_rho must be in [0, 1)");
	if (!std::isfinite(p.base_temp_c) || !std::isfinite(p.seasonal_amp)
	    || !std::isfinite(p.diurnal_amp))
		bad("temperature parameters must be finite");
	if (p.sources.empty()) bad("at least one forecast source is required");
	for (const auto& [src, sp] : p.sources) {
		const std::string name(source_name(src));
		if (!(sp.error_sd_at_lead0 > 0.0)) bad(name + ".error_sd_at_lead0 must be > 0");
		if (!(sp.error_sd_growth >= 0.0)) bad(name + ".error_sd_growth must be >= 0");
		if (!(sp.error_ar1_rho >= 0.0 && sp.error_ar1_rho < 1.0))
			bad(name + ".error_ar1_rho must be in [0, 1)");
		if (!std::isfinite(sp.bias_const) || !std::isfinite(sp.bias_seasonal_amp))
			bad(name + " bias parameters must be finite");
	}
	if (opts.n_days < 400)
		bad("n_days must be >= 400 to support year-blocked cross-validation");
	if (opts.init_hour < 0 || opts.init_hour > 23) bad("init_hour must be in 0..23");
	if (!(opts.missing_rate >= 0.0 && opts.missing_rate < 1.0))
		bad("missing_rate must be in [0, 1)");
}

double seasonal_cycle(double amp, int doy) {
	return amp * std::sin(kTwoPi * (doy - kSeasonalPhaseDoy) / 365.0);
}

double diurnal_cycle(double amp, int hour) {
	return amp * std::sin(kTwoPi * (hour - kDiurnalPhaseHour) / 24.0);
}

} // namespace

SynthWorld generate_world(std::uint64_t seed, const SynthProfile& profile,
                          const SynthOptions& opts,
                          const std::string& station_id) {
	validate(profile, opts);

	const Timestamp start_midnight =
		make_timestamp(opts.start_year, opts.start_month, opts.start_day, 0);
	const Timestamp first_init =
		make_timestamp(opts.start_year, opts.start_month, opts.start_day, opts.init_hour);

	SynthWorld world;
	world.obs = ObservationSeries(station_id);
	for (int d = 0; d < opts.n_days; ++d)
		world.init_times.push_back({first_init.hours + 24 * d});
	const Timestamp last_init = world.init_times.back();
	const int max_horizon = source_default_horizon(Source::ens_mu);
	const Timestamp end = valid_time(last_init, max_horizon);
	const std::int64_t n_hours = end.hours - start_midnight.hours + 1;

	// Independent sub-streams so each piece of the world can be generated
	// in a fixed order without the pieces sharing draws: truth anomaly,
	// observation noise, missingness, then one stream per source in
	// source-name order.
	NormalStream truth_stream(mix_seed(seed + 1));
	NormalStream noise_stream(mix_seed(seed + 2));
	NormalStream missing_stream(mix_seed(seed + 3));

	// Hourly truth over the whole period.
	std::vector<double> truth(static_cast<std::size_t>(n_hours));
	const double rho = profile.obs_ar1_rho;
	const double innov_sd = profile.anomaly_sd * std::sqrt(1.0 - rho * rho);
	double anomaly = profile.anomaly_sd * truth_stream.normal();
	for (std::int64_t t = 0; t < n_hours; ++t) {
		if (t > 0)
			anomaly = rho * anomaly + innov_sd * truth_stream.normal();
		const Timestamp ts{start_midnight.hours + t};
		truth[static_cast<std::size_t>(t)] = profile.base_temp_c
			+ seasonal_cycle(profile.seasonal_amp, day_of_year(ts))
			+ diurnal_cycle(profile.diurnal_amp, hour_of_day(ts))
			+ anomaly;
	}

	// Hourly observations: truth plus iid noise, with optional gaps.  The
	// missingness draw happens for every hour so the series a given seed
	// produces only changes at the dropped hours when the rate changes.
	for (std::int64_t t = 0; t < n_hours; ++t) {
		const double noise = profile.obs_noise_sd * noise_stream.normal();
		const bool drop = missing_stream.uniform() < opts.missing_rate;
		if (drop)
			continue;
		const Timestamp ts{start_midnight.hours + t};
		world.obs.insert(ts, truth[static_cast<std::size_t>(t)] + noise);
	}

	// Forecast sources, each with its own stream.  Errors follow a
	// standardized AR(1) along lead so a frozen forecast stays correlated
	// with later truth; the sd grows linearly with lead.
	int source_index = 0;
	for (const Source src : kAllSources) {
		++source_index;
		const auto pit = profile.sources.find(src);
		if (pit == profile.sources.end())
			continue;
		const SourceProfile& sp = pit->second;
		const int horizon = source_default_horizon(src);
		NormalStream err_stream(mix_seed(seed + 16 + source_index));

		ForecastArchive archive(src, horizon);
		const double erho = sp.error_ar1_rho;
		const double einnov = std::sqrt(1.0 - erho * erho);
		for (const Timestamp init : world.init_times) {
			double u = 0.0;
			for (int lead = 1; lead <= horizon; ++lead) {
				const double z = err_stream.normal();
				u = lead == 1 ? z : erho * u + einnov * z;
				const Timestamp vt = valid_time(init, lead);
				const std::size_t ti =
					static_cast<std::size_t>(vt.hours - start_midnight.hours);
				const double sd = sp.error_sd_at_lead0 + sp.error_sd_growth * lead;
				const double bias = sp.bias_const
					+ sp.bias_seasonal_amp
					* std::sin(kTwoPi * day_of_year(vt) / 365.0);
				const double value = truth[ti] + bias + sd * u;
				if (archive.insert(init, lead, value) != ForecastArchive::Insert::ok)
					throw InvalidProfile("synth generation produced an invalid forecast at "
					                     + format_iso_hour(init) + " lead "
					                     + std::to_string(lead));
			}
		}
		world.forecasts.emplace(src, std::move(archive));
	}
	return world;
}

void generate_station(std::uint64_t world_seed, const StationMeta& station,
                      const SynthProfile& profile, const SynthOptions& opts,
                      Dataset& ds) {
	const std::uint64_t station_seed = mix_seed(world_seed ^ hash_name(station.id));
	SynthWorld world = generate_world(station_seed, profile, opts, station.id);
	ds.ensure_station(station.id, station.archetype);
	ds.obs.insert_or_assign(station.id, std::move(world.obs));
	ds.forecasts.insert_or_assign(station.id, std::move(world.forecasts));
}

} // namespace seampp
