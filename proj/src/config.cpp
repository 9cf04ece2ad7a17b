#include <seampp/config.hpp>

#include <seampp/errors.hpp>
#include <seampp/timeutil.hpp>

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace seampp {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
	throw ConfigError(origin + ": " + what);
}

// Rejects keys the schema does not know, so typos surface immediately
// instead of silently falling back to defaults.
void check_keys(const json& obj, const std::set<std::string>& known,
                const std::string& origin, const std::string& where) {
	for (const auto& [key, value] : obj.items()) {
		(void)value;
		if (!known.contains(key))
			fail(origin, "unknown key \"" + key + "\" in " + where);
	}
}

double get_number(const json& obj, const char* key, double fallback,
                  const std::string& origin, const std::string& where) {
	if (!obj.contains(key))
		return fallback;
	if (!obj[key].is_number())
		fail(origin, where + "." + key + " must be a number");
	return obj[key].get<double>();
}

int get_int(const json& obj, const char* key, int fallback,
            const std::string& origin, const std::string& where) {
	if (!obj.contains(key))
		return fallback;
	if (!obj[key].is_number_integer())
		fail(origin, where + "." + key + " must be an integer");
	return obj[key].get<int>();
}

std::string get_string(const json& obj, const char* key, const std::string& fallback,
                       const std::string& origin, const std::string& where) {
	if (!obj.contains(key))
		return fallback;
	if (!obj[key].is_string())
		fail(origin, where + "." + key + " must be a string");
	return obj[key].get<std::string>();
}

void apply_source_profile(SourceProfile& sp, const json& obj,
                          const std::string& origin, const std::string& where) {
	check_keys(obj, {"bias_const", "bias_seasonal_amp", "error_sd_at_lead0",
	                 "error_sd_growth", "error_ar1_rho"}, origin, where);
	sp.bias_const = get_number(obj, "bias_const", sp.bias_const, origin, where);
	sp.bias_seasonal_amp = get_number(obj, "bias_seasonal_amp", sp.bias_seasonal_amp, origin, where);
	sp.error_sd_at_lead0 = get_number(obj, "error_sd_at_lead0", sp.error_sd_at_lead0, origin, where);
	sp.error_sd_growth = get_number(obj, "error_sd_growth", sp.error_sd_growth, origin, where);
	sp.error_ar1_rho = get_number(obj, "error_ar1_rho", sp.error_ar1_rho, origin, where);
}

void apply_profile(SynthProfile& p, const json& obj,
                   const std::string& origin, const std::string& where) {
	check_keys(obj, {"base_temp_c", "seasonal_amp", "diurnal_amp", "obs_ar1_rho",
	                 "anomaly_sd", "obs_noise_sd", "sources"}, origin, where);
	p.base_temp_c = get_number(obj, "base_temp_c", p.base_temp_c, origin, where);
	p.seasonal_amp = get_number(obj, "seasonal_amp", p.seasonal_amp, origin, where);
	p.diurnal_amp = get_number(obj, "diurnal_amp", p.diurnal_amp, origin, where);
	p.obs_ar1_rho = get_number(obj, "obs_ar1_rho", p.obs_ar1_rho, origin, where);
	p.anomaly_sd = get_number(obj, "anomaly_sd", p.anomaly_sd, origin, where);
	p.obs_noise_sd = get_number(obj, "obs_noise_sd", p.obs_noise_sd, origin, where);
	if (!obj.contains("sources"))
		return;
	if (!obj["sources"].is_object())
		fail(origin, where + ".sources must be an object");
	for (const auto& [name, sub] : obj["sources"].items()) {
		const auto src = parse_source(name);
		if (!src)
			fail(origin, where + ".sources has unknown source \"" + name + "\"");
		if (!sub.is_object())
			fail(origin, where + ".sources." + name + " must be an object");
		apply_source_profile(p.sources[*src], sub, origin, where + ".sources." + name);
	}
}

Timestamp parse_date(const json& obj, const char* key,
                     const std::string& origin, const std::string& where) {
	if (!obj.contains(key) || !obj[key].is_string())
		fail(origin, where + "." + key + " must be a \"YYYY-MM-DD\" string");
	const auto ts = parse_iso_date(obj[key].get<std::string>(), 0);
	if (!ts)
		fail(origin, where + "." + key + " is not a valid \"YYYY-MM-DD\" date");
	return *ts;
}

SynthConfig parse_synth(const json& obj, const std::string& origin) {
	check_keys(obj, {"n_days", "init_hour_utc", "start_date", "missing_rate", "stations"},
	           origin, "synth");
	SynthConfig sc;
	sc.options.n_days = get_int(obj, "n_days", sc.options.n_days, origin, "synth");
	sc.options.init_hour = get_int(obj, "init_hour_utc", sc.options.init_hour, origin, "synth");
	sc.options.missing_rate =
		get_number(obj, "missing_rate", sc.options.missing_rate, origin, "synth");
	if (obj.contains("start_date")) {
		const Timestamp d = parse_date(obj, "start_date", origin, "synth");
		const auto ymd = civil_date(d);
		sc.options.start_year = ymd.year;
		sc.options.start_month = ymd.month;
		sc.options.start_day = ymd.day;
	}
	if (!obj.contains("stations") || !obj["stations"].is_array() || obj["stations"].empty())
		fail(origin, "synth.stations must be a non-empty array");
	for (const auto& st : obj["stations"]) {
		if (!st.is_object())
			fail(origin, "synth.stations entries must be objects");
		check_keys(st, {"id", "archetype", "profile"}, origin, "synth.stations[]");
		StationConfig stc;
		stc.meta.id = get_string(st, "id", "", origin, "synth.stations[]");
		if (stc.meta.id.empty())
			fail(origin, "synth.stations[].id must be a non-empty string");
		const std::string arch = get_string(st, "archetype", "plain", origin, "synth.stations[]");
		const auto a = parse_archetype(arch);
		if (!a)
			fail(origin, "synth.stations[].archetype \"" + arch
			             + "\" is not one of plain/valley/mountain");
		stc.meta.archetype = *a;
		stc.profile = SynthProfile::archetype_default(*a);
		if (st.contains("profile")) {
			if (!st["profile"].is_object())
				fail(origin, "synth.stations[].profile must be an object");
			apply_profile(stc.profile, st["profile"], origin,
			              "synth.stations[" + stc.meta.id + "].profile");
		}
		sc.stations.push_back(std::move(stc));
	}
	std::set<std::string> ids;
	for (const auto& st : sc.stations)
		if (!ids.insert(st.meta.id).second)
			fail(origin, "synth.stations has duplicate id \"" + st.meta.id + "\"");
	return sc;
}

DataConfig parse_data(const json& obj, const std::string& origin) {
	check_keys(obj, {"observations_csv", "forecasts_csv", "init_offset_h"}, origin, "data");
	DataConfig dc;
	dc.observations_csv = get_string(obj, "observations_csv", "", origin, "data");
	dc.forecasts_csv = get_string(obj, "forecasts_csv", "", origin, "data");
	if (dc.observations_csv.empty() || dc.forecasts_csv.empty())
		fail(origin, "data requires both observations_csv and forecasts_csv");
	dc.init_offset_h = get_int(obj, "init_offset_h", dc.init_offset_h, origin, "data");
	return dc;
}

} // namespace

bool is_known_mode_label(const std::string& label) {
	if (PredictorMode::from_label(label))
		return true;
	return label == "transition1" || label == "transition2";
}

RunConfig parse_config(const std::string& text, const std::string& origin) {
	json doc;
	try {
		doc = json::parse(text, nullptr, true, /*ignore_comments=*/true);
	} catch (const json::parse_error& e) {
		throw ConfigError(origin + ": " + e.what());
	}
	if (!doc.is_object())
		fail(origin, "config root must be an object");
	check_keys(doc, {"out_dir", "seed", "synth", "data", "grid", "folds", "modes",
	                 "assembly", "emos", "transition"}, origin, "config");

	RunConfig cfg;
	cfg.out_dir = get_string(doc, "out_dir", cfg.out_dir.string(), origin, "config");
	if (doc.contains("seed")) {
		if (!doc["seed"].is_number_integer() || doc["seed"].get<std::int64_t>() < 0)
			fail(origin, "seed must be a non-negative integer");
		cfg.seed = doc["seed"].get<std::uint64_t>();
	}

	const bool has_synth = doc.contains("synth");
	const bool has_data = doc.contains("data");
	if (has_synth == has_data)
		fail(origin, "exactly one of \"synth\" and \"data\" must be present");
	if (has_synth)
		cfg.synth = parse_synth(doc["synth"], origin);
	else
		cfg.data = parse_data(doc["data"], origin);

	if (doc.contains("grid")) {
		const json& g = doc["grid"];
		check_keys(g, {"hourly_until_h", "coarse_step_h", "max_lead_h"}, origin, "grid");
		const int hourly = get_int(g, "hourly_until_h", 84, origin, "grid");
		const int step = get_int(g, "coarse_step_h", 3, origin, "grid");
		const int max = get_int(g, "max_lead_h", 132, origin, "grid");
		try {
			cfg.grid = LeadTimeGrid::make(hourly, step, max);
		} catch (const Error& e) {
			fail(origin, std::string("grid: ") + e.what());
		}
	}

	if (doc.contains("folds")) {
		const json& f = doc["folds"];
		check_keys(f, {"k", "ranges"}, origin, "folds");
		cfg.folds.k = get_int(f, "k", cfg.folds.k, origin, "folds");
		if (cfg.folds.k < 1)
			fail(origin, "folds.k must be >= 1");
		if (f.contains("ranges")) {
			if (!f["ranges"].is_array())
				fail(origin, "folds.ranges must be an array");
			for (const auto& r : f["ranges"]) {
				if (!r.is_object())
					fail(origin, "folds.ranges entries must be objects");
				check_keys(r, {"start", "end"}, origin, "folds.ranges[]");
				cfg.folds.ranges.emplace_back(parse_date(r, "start", origin, "folds.ranges[]"),
				                              parse_date(r, "end", origin, "folds.ranges[]"));
			}
		}
	}

	if (doc.contains("modes")) {
		if (!doc["modes"].is_array() || doc["modes"].empty())
			fail(origin, "modes must be a non-empty array of labels");
		for (const auto& m : doc["modes"]) {
			if (!m.is_string() || !is_known_mode_label(m.get<std::string>()))
				fail(origin, "modes contains an unknown label"
				             + (m.is_string() ? " \"" + m.get<std::string>() + "\"" : std::string()));
			cfg.modes.push_back(m.get<std::string>());
		}
	} else {
		cfg.modes = {"persistence", "reference"};
	}

	if (doc.contains("assembly")) {
		const json& a = doc["assembly"];
		check_keys(a, {"min_rows", "pers_max_lead_h"}, origin, "assembly");
		const int min_rows = get_int(a, "min_rows", static_cast<int>(cfg.assemble.min_rows),
		                             origin, "assembly");
		if (min_rows < 1)
			fail(origin, "assembly.min_rows must be >= 1");
		cfg.assemble.min_rows = static_cast<std::size_t>(min_rows);
		cfg.assemble.pers_max_lead_h =
			get_int(a, "pers_max_lead_h", cfg.assemble.pers_max_lead_h, origin, "assembly");
	}

	if (doc.contains("emos")) {
		const json& e = doc["emos"];
		check_keys(e, {"sigma_floor"}, origin, "emos");
		cfg.fit.sigma_floor = get_number(e, "sigma_floor", cfg.fit.sigma_floor, origin, "emos");
		if (!(cfg.fit.sigma_floor > 0.0))
			fail(origin, "emos.sigma_floor must be > 0");
	}

	if (doc.contains("transition")) {
		const json& t = doc["transition"];
		check_keys(t, {"transition_lead_h", "window_h", "extrapolation_leads", "profile", "source"},
		           origin, "transition");
		cfg.transition.transition_lead_h =
			get_int(t, "transition_lead_h", cfg.transition.transition_lead_h, origin, "transition");
		cfg.transition.window_h = get_int(t, "window_h", cfg.transition.window_h, origin, "transition");
		cfg.transition.extrapolation_leads =
			get_int(t, "extrapolation_leads", cfg.transition.extrapolation_leads, origin, "transition");
		if (cfg.transition.extrapolation_leads < 0)
			fail(origin, "transition.extrapolation_leads must be >= 0");
		const std::string prof = get_string(t, "profile", "linear", origin, "transition");
		if (prof != "linear")
			fail(origin, "transition.profile \"" + prof + "\" is not supported (use \"linear\")");
		const std::string src = get_string(t, "source", "aro", origin, "transition");
		const auto s = parse_source(src);
		if (!s)
			fail(origin, "transition.source \"" + src + "\" is not a known source");
		cfg.transition.source = *s;
	}

	return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
	std::ifstream in(path);
	if (!in)
		throw ConfigError("cannot open config file " + path.string());
	std::ostringstream buf;
	buf << in.rdbuf();
	return parse_config(buf.str(), path.string());
}

void apply_overrides(RunConfig& cfg,
                     const std::optional<std::uint64_t>& seed,
                     const std::optional<std::string>& out_dir,
                     const std::optional<std::string>& modes) {
	if (seed)
		cfg.seed = *seed;
	if (out_dir)
		cfg.out_dir = *out_dir;
	if (!modes)
		return;
	std::vector<std::string> labels;
	std::string item;
	std::istringstream ss(*modes);
	while (std::getline(ss, item, ',')) {
		if (item.empty())
			continue;
		if (!is_known_mode_label(item))
			throw ConfigError("--modes contains an unknown label \"" + item + "\"");
		labels.push_back(item);
	}
	if (labels.empty())
		throw ConfigError("--modes must list at least one mode");
	cfg.modes = std::move(labels);
}

} // namespace seampp
