#include <doctest.h>

#include <seampp/config.hpp>
#include <seampp/errors.hpp>

#include <string>

using namespace seampp;

namespace {

const std::string kMinimalSynth = R"({
  "synth": { "stations": [ { "id": "v", "archetype": "valley" } ] }
})";

RunConfig parse(const std::string& text) { return parse_config(text, "test"); }

} // namespace

TEST_CASE("a minimal config fills in every documented default") {
	const RunConfig cfg = parse(kMinimalSynth);

	CHECK(cfg.out_dir == "out");
	CHECK(cfg.seed == 1);
	CHECK(cfg.grid.leads_h.size() == 100);
	CHECK(cfg.folds.k == 3);
	CHECK(cfg.modes == std::vector<std::string>{"persistence", "reference"});
	CHECK(cfg.assemble.min_rows == 100);
	CHECK(cfg.assemble.pers_max_lead_h == 132);
	CHECK(cfg.fit.sigma_floor == 0.01);
	CHECK(cfg.transition.transition_lead_h == 36);
	CHECK(cfg.transition.window_h == 6);
	CHECK(cfg.transition.extrapolation_leads == 3);
	CHECK(cfg.transition.source == Source::aro);

	REQUIRE(cfg.synth.has_value());
	CHECK_FALSE(cfg.data.has_value());
	CHECK(cfg.synth->options.n_days == 1100);
	CHECK(cfg.synth->options.init_hour == 12);
	CHECK(cfg.synth->options.missing_rate == 0.0);
	CHECK(cfg.synth->options.start_year == 2021);
	CHECK(cfg.synth->options.start_month == 7);
	CHECK(cfg.synth->options.start_day == 1);

	REQUIRE(cfg.synth->stations.size() == 1);
	CHECK(cfg.synth->stations[0].meta.id == "v");
	CHECK(cfg.synth->stations[0].meta.archetype == Archetype::valley);
	// The profile is the archetype default when no overrides are given.
	CHECK(cfg.synth->stations[0].profile.obs_ar1_rho == SynthProfile::valley_default().obs_ar1_rho);
}

TEST_CASE("unknown keys are rejected wherever they appear") {
	CHECK_THROWS_WITH_AS(parse(R"({"synth": {"stations": [{"id": "v"}]}, "sed": 7})"),
	                     doctest::Contains("sed"), ConfigError);
	CHECK_THROWS_WITH_AS(parse(R"({"synth": {"stations": [{"id": "v"}], "days": 900}})"),
	                     doctest::Contains("days"), ConfigError);
	CHECK_THROWS_WITH_AS(parse(R"({"synth": {"stations": [{"id": "v", "profile": {"rho": 0.9}}]}})"),
	                     doctest::Contains("rho"), ConfigError);
	CHECK_THROWS_WITH_AS(
		parse(R"({"synth": {"stations": [{"id": "v"}]}, "transition": {"window": 3}})"),
		doctest::Contains("window"), ConfigError);
}

TEST_CASE("exactly one of synth and data must be present") {
	CHECK_THROWS_AS(parse(R"({})"), ConfigError);
	CHECK_THROWS_AS(parse(R"({
	  "synth": { "stations": [ { "id": "v" } ] },
	  "data": { "observations_csv": "o.csv", "forecasts_csv": "f.csv" }
	})"),
	                ConfigError);

	const RunConfig cfg = parse(R"({
	  "data": { "observations_csv": "o.csv", "forecasts_csv": "f.csv", "init_offset_h": 12 }
	})");
	REQUIRE(cfg.data.has_value());
	CHECK(cfg.data->observations_csv == "o.csv");
	CHECK(cfg.data->init_offset_h == 12);
	CHECK_THROWS_AS(parse(R"({"data": {"observations_csv": "o.csv"}})"), ConfigError);
}

TEST_CASE("station lists are validated") {
	CHECK_THROWS_AS(parse(R"({"synth": {"stations": []}})"), ConfigError);
	CHECK_THROWS_AS(parse(R"({"synth": {}})"), ConfigError);
	CHECK_THROWS_AS(parse(R"({"synth": {"stations": [{"archetype": "valley"}]}})"), ConfigError);
	CHECK_THROWS_AS(parse(R"({"synth": {"stations": [{"id": "v", "archetype": "coastal"}]}})"),
	                ConfigError);
	CHECK_THROWS_AS(parse(R"({"synth": {"stations": [{"id": "v"}, {"id": "v"}]}})"), ConfigError);
}

TEST_CASE("profile overrides merge over the archetype defaults") {
	const RunConfig cfg = parse(R"({
	  "synth": { "stations": [ {
	    "id": "v", "archetype": "valley",
	    "profile": {
	      "anomaly_sd": 3.25,
	      "sources": { "aro": { "bias_const": 9.5 } }
	    }
	  } ] }
	})");
	const SynthProfile& p = cfg.synth->stations[0].profile;
	const SynthProfile def = SynthProfile::valley_default();
	CHECK(p.anomaly_sd == 3.25);
	CHECK(p.obs_ar1_rho == def.obs_ar1_rho); // untouched
	CHECK(p.sources.at(Source::aro).bias_const == 9.5);
	CHECK(p.sources.at(Source::aro).error_sd_at_lead0 ==
	      def.sources.at(Source::aro).error_sd_at_lead0);
	CHECK(p.sources.at(Source::det).bias_const == def.sources.at(Source::det).bias_const);

	CHECK_THROWS_AS(
		parse(R"({"synth": {"stations": [{"id": "v", "profile": {"sources": {"gfs": {}}}}]}})"),
		ConfigError);
}

TEST_CASE("grid, folds, emos, and transition sections are parsed and validated") {
	const RunConfig cfg = parse(R"({
	  "synth": { "stations": [ { "id":  "v" } ] },
	  "grid": { "hourly_until_h": 6, "coarse_step_h": 3, "max_lead_h": 12 },
	  "folds": { "k": 4 },
	  "emos": { "sigma_floor": 0.5 },
	  "assembly": { "min_rows": 50, "pers_max_lead_h": 36 },
	  "transition": { "transition_lead_h": 6, "window_h": 2, "extrapolation_leads": 1,
	                  "profile": "linear", "source": "det" }
	})");
	CHECK(cfg.grid.leads_h == std::vector<int>{1, 2, 3, 4, 5, 6, 9, 12});
	CHECK(cfg.folds.k == 4);
	CHECK(cfg.fit.sigma_floor == 0.5);
	CHECK(cfg.assemble.min_rows == 50);
	CHECK(cfg.assemble.pers_max_lead_h == 36);
	CHECK(cfg.transition.transition_lead_h == 6);
	CHECK(cfg.transition.source == Source::det);

	const std::string base = R"("synth": { "stations": [ { "id": "v" } ] })";
	CHECK_THROWS_AS(parse("{" + base + R"(, "grid": {"hourly_until_h": 0}})"), ConfigError);
	CHECK_THROWS_AS(parse("{" + base + R"(, "folds": {"k": 0}})"), ConfigError);
	CHECK_THROWS_AS(parse("{" + base + R"(, "emos": {"sigma_floor": 0}})"), ConfigError);
	CHECK_THROWS_AS(parse("{" + base + R"(, "transition": {"profile": "cosine"}})"), ConfigError);
	CHECK_THROWS_AS(parse("{" + base + R"(, "transition": {"source": "gfs"}})"), ConfigError);
	CHECK_THROWS_AS(parse("{" + base + R"(, "seed": -1})"), ConfigError);
	CHECK_THROWS_AS(parse("{" + base + R"(, "assembly": {"min_rows": 0}})"), ConfigError);
}

TEST_CASE("fold date ranges parse into timestamps") {
	const RunConfig cfg = parse(R"({
	  "synth": { "stations": [ { "id": "v" } ] },
	  "folds": { "k": 2, "ranges": [
	    { "start": "2021-07-01", "end": "2022-07-01" },
	    { "start": "2022-07-01", "end": "2023-07-01" }
	  ] }
	})");
	REQUIRE(cfg.folds.ranges.size() == 2);
	CHECK(cfg.folds.ranges[0].first == make_timestamp(2021, 7, 1, 0));
	CHECK(cfg.folds.ranges[0].second == make_timestamp(2022, 7, 1, 0));

	CHECK_THROWS_AS(parse(R"({
	  "synth": { "stations": [ { "id": "v" } ] },
	  "folds": { "ranges": [ { "start": "01.07.2021", "end": "2022-07-01" } ] }
	})"),
	                ConfigError);
}

TEST_CASE("mode lists accept the full label set and nothing else") {
	const RunConfig cfg = parse(R"({
	  "synth": { "stations": [ { "id": "v" } ] },
	  "modes": [ "persistence", "reference", "single_aro", "single_det", "single_ensmu",
	             "transition1", "transition2" ]
	})");
	CHECK(cfg.modes.size() == 7);
	for (const auto& m : cfg.modes)
		CHECK(is_known_mode_label(m));
	CHECK_FALSE(is_known_mode_label("blend"));

	CHECK_THROWS_AS(parse(R"({
	  "synth": { "stations": [ { "id": "v" } ] },
	  "modes": [ "persistence", "blend" ]
	})"),
	                ConfigError);
	CHECK_THROWS_AS(parse(R"({"synth": {"stations": [{"id": "v"}]}, "modes": []})"), ConfigError);
}

TEST_CASE("line comments are tolerated in config files") {
	const RunConfig cfg = parse(R"({
	  // station list
	  "synth": { "stations": [ { "id": "v" } ] },
	  "seed": 9
	})");
	CHECK(cfg.seed == 9);
}

TEST_CASE("command-line overrides replace seed, output, and modes") {
	RunConfig cfg = parse(kMinimalSynth);
	apply_overrides(cfg, 777, std::string("elsewhere"), std::string("persistence,transition1"));
	CHECK(cfg.seed == 777);
	CHECK(cfg.out_dir == "elsewhere");
	CHECK(cfg.modes == std::vector<std::string>{"persistence", "transition1"});

	apply_overrides(cfg, std::nullopt, std::nullopt, std::nullopt);
	CHECK(cfg.seed == 777); // untouched

	CHECK_THROWS_AS(apply_overrides(cfg, std::nullopt, std::nullopt, std::string("blend")),
	                ConfigError);
	CHECK_THROWS_AS(apply_overrides(cfg, std::nullopt, std::nullopt, std::string(",")), ConfigError);
}

TEST_CASE("syntax errors and missing files carry their origin") {
	CHECK_THROWS_WITH_AS(parse_config("{ not json", "cfg.json"), doctest::Contains("cfg.json"),
	                     ConfigError);
	CHECK_THROWS_AS(parse_config("[1, 2]", "cfg.json"), ConfigError);
	CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}
