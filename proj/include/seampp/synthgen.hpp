#pragma once

#include <seampp/datamodel.hpp>

#include <cstdint>
#include <map>
#include <random>
#include <string>

namespace seampp {

/// Error structure of one synthetic forecast source.  The source's
/// forecast at (init, lead) is truth at the valid time plus a bias that
/// varies with day-of-year plus an AR(1)-in-lead error whose standard
/// deviation grows linearly with lead.
struct SourceProfile {
	double bias_const = 0.0;        ///< °C added at every lead
	double bias_seasonal_amp = 0.0; ///< °C amplitude of the day-of-year bias cycle
	double error_sd_at_lead0 = 1.0; ///< °C error sd extrapolated to lead 0
	double error_sd_growth = 0.0;   ///< °C per hour of lead
	double error_ar1_rho = 0.9;     ///< lag-1 correlation of the error along lead
};

/// Station climate and error profile.  Truth is a seasonal sinusoid plus
/// a diurnal sinusoid plus an hourly AR(1) anomaly; observations add iid
/// measurement noise on top.
struct SynthProfile {
	Archetype archetype = Archetype::plain;
	double base_temp_c = 8.0;   ///< annual-mean temperature
	double seasonal_amp = 9.0;  ///< °C amplitude of the annual cycle
	double diurnal_amp = 4.0;   ///< °C amplitude of the daily cycle
	double obs_ar1_rho = 0.9;   ///< hourly lag-1 correlation of the anomaly
	double anomaly_sd = 2.0;    ///< °C stationary sd of the anomaly
	double obs_noise_sd = 0.3;  ///< °C iid measurement noise
	std::map<Source, SourceProfile> sources;

	/// Repo defaults for the three station archetypes.
	static SynthProfile plain_default();
	static SynthProfile valley_default();
	static SynthProfile mountain_default();
	static SynthProfile archetype_default(Archetype a);
};

struct SynthOptions {
	int n_days = 1100;        ///< number of daily initializations (>= 400)
	int init_hour = 12;       ///< UTC hour of the daily initialization
	int start_year = 2021;    ///< date of the first initialization
	int start_month = 7;
	int start_day = 1;
	double missing_rate = 0.0; ///< probability an hourly observation is dropped
};

/// One generated station: hourly observations over the full period and one
/// archive per source, truncated at that source's horizon.
struct SynthWorld {
	ObservationSeries obs{""};
	std::map<Source, ForecastArchive> forecasts;
	std::vector<Timestamp> init_times;
};

/// Portable seeded normal/uniform stream: std::mt19937_64 feeding a
/// Box-Muller transform (cosine branch) over 53-bit uniforms.  Both the
/// generator and the transform are pinned by this header so the streams
/// are reproducible across platforms, unlike std::normal_distribution.
class NormalStream {
public:
	explicit NormalStream(std::uint64_t seed) : gen_(seed) {}

	/// Uniform in [0, 1).
	double uniform();
	/// Standard normal draw (one per call; no caching).
	double normal();

private:
	std::mt19937_64 gen_;
};

/// splitmix64 finalizer, used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t x);
/// FNV-1a 64-bit hash of a string, used to fold station ids into seeds.
std::uint64_t hash_name(const std::string& s);

/// Deterministically generate one station's world.  The seed is the
/// world seed already combined with the station id (see generate_station).
/// Throws InvalidProfile when the profile or options are out of range.
SynthWorld generate_world(std::uint64_t seed, const SynthProfile& profile,
                          const SynthOptions& opts,
                          const std::string& station_id = "synth");

/// Generate a station and insert it into `ds`, deriving the station seed
/// as mix_seed(world_seed XOR hash_name(station_id)) so each station's
/// series is independent of the other stations present in the run.
void generate_station(std::uint64_t world_seed, const StationMeta& station,
                      const SynthProfile& profile, const SynthOptions& opts,
                      Dataset& ds);

} // namespace seampp
