#include <doctest.h>

#include <seampp/baselines.hpp>
#include <seampp/errors.hpp>
#include <seampp/synthgen.hpp>

#include <cmath>

using namespace seampp;

namespace {

LeadPredictions flat_predictions(const std::vector<Timestamp>& inits, double mu, double sigma,
                                 double y) {
	LeadPredictions lp;
	for (const auto t : inits) {
		lp.inits.push_back(t);
		lp.mu.push_back(mu);
		lp.sigma.push_back(sigma);
		lp.y.push_back(y);
	}
	return lp;
}

} // namespace

TEST_CASE("transition weight ramps linearly from one to zero") {
	const TransitionConfig cfg; // 36 h transition, 6 h window

	CHECK(transition_weight(20, cfg) == 1.0);
	CHECK(transition_weight(30, cfg) == 1.0); // window start
	CHECK(transition_weight(33, cfg) == 0.5); // midpoint
	CHECK(transition_weight(36, cfg) == 0.0); // window end
	CHECK(transition_weight(40, cfg) == 0.0);

	for (int lead = 1; lead <= 132; ++lead) {
		const double w = transition_weight(lead, cfg);
		CHECK(w >= 0.0);
		CHECK(w <= 1.0);
	}
}

TEST_CASE("zero window degenerates to a hard cutoff") {
	TransitionConfig cfg;
	cfg.window_h = 0;
	CHECK(transition_weight(35, cfg) == 1.0);
	CHECK(transition_weight(36, cfg) == 0.0);

	const GaussianPrediction with{10.0, 1.0};
	const GaussianPrediction without{20.0, 2.0};
	const auto before = transition_weighted_average(with, without, 35, cfg);
	CHECK(before.mu == with.mu);
	const auto after = transition_weighted_average(with, without, 36, cfg);
	CHECK(after.mu == without.mu);
}

TEST_CASE("weighted average blends mean and spread with one weight") {
	const TransitionConfig cfg;
	const GaussianPrediction with{10.0, 1.0};
	const GaussianPrediction without{14.0, 3.0};

	const auto mid = transition_weighted_average(with, without, 33, cfg);
	CHECK(mid.mu == doctest::Approx(12.0).epsilon(1e-15));
	CHECK(mid.sigma == doctest::Approx(2.0).epsilon(1e-15));

	CHECK(transition_weighted_average(with, without, 30, cfg).mu == with.mu);
	CHECK(transition_weighted_average(with, without, 36, cfg).mu == without.mu);

	// Blends stay inside the interval spanned by the inputs.
	for (int lead = 28; lead <= 38; ++lead) {
		if (lead > 36)
			break;
		const auto b = transition_weighted_average(with, without, lead, cfg);
		CHECK(b.mu >= std::min(with.mu, without.mu));
		CHECK(b.mu <= std::max(with.mu, without.mu));
	}

	// Identical inputs are a fixed point of the blend.
	const auto same = transition_weighted_average(with, with, 33, cfg);
	CHECK(same.mu == with.mu);
	CHECK(same.sigma == with.sigma);
}

TEST_CASE("extrapolation weights decay over the configured step count") {
	const TransitionConfig cfg; // 3 extrapolation steps

	CHECK(extrapolation_weight(1, cfg) == doctest::Approx(0.75).epsilon(1e-15));
	CHECK(extrapolation_weight(2, cfg) == doctest::Approx(0.50).epsilon(1e-15));
	CHECK(extrapolation_weight(3, cfg) == doctest::Approx(0.25).epsilon(1e-15));
	CHECK(extrapolation_weight(4, cfg) == 0.0);
	CHECK(extrapolation_weight(100, cfg) == 0.0);
	CHECK_THROWS_AS(extrapolation_weight(0, cfg), NumericError);

	const GaussianPrediction frozen{10.0, 1.0};
	const GaussianPrediction without{20.0, 2.0};
	const auto beyond = transition_extrapolation(frozen, without, 4, cfg);
	CHECK(beyond.mu == without.mu);
	CHECK(beyond.sigma == without.sigma);

	const auto last = transition_extrapolation(frozen, without, 3, cfg);
	CHECK(last.mu == doctest::Approx(0.25 * 10.0 + 0.75 * 20.0).epsilon(1e-15));

	const auto same = transition_extrapolation(frozen, frozen, 2, cfg);
	CHECK(same.mu == frozen.mu);
	CHECK(same.sigma == frozen.sigma);
}

TEST_CASE("derive_transitions builds both baselines from a run pair") {
	const LeadTimeGrid grid = LeadTimeGrid::standard();
	const TransitionConfig cfg;
	std::vector<Timestamp> inits;
	for (int d = 0; d < 5; ++d)
		inits.push_back({make_timestamp(2021, 7, 1, 12).hours + 24 * d});

	// with-model predicts 10 everywhere, without-model 20; targets 15.
	ModeRun with, without;
	for (const int lead : {30, 33, 36, 37, 38, 39, 40, 42}) {
		with[lead] = flat_predictions(inits, 10.0, 1.0, 15.0);
		without[lead] = flat_predictions(inits, 20.0, 2.0, 15.0);
	}

	const auto derived = derive_transitions(with, without, grid, cfg);
	REQUIRE(derived.count("transition1") == 1);
	REQUIRE(derived.count("transition2") == 1);
	const ModeRun& t1 = derived.at("transition1");
	const ModeRun& t2 = derived.at("transition2");

	SUBCASE("transition1 ramps inside the window and hands over after it") {
		CHECK(t1.at(30).mu[0] == 10.0);                                 // w = 1
		CHECK(t1.at(33).mu[0] == doctest::Approx(15.0).epsilon(1e-15)); // w = 0.5
		CHECK(t1.at(36).mu[0] == 20.0);                                 // w = 0
		for (const int lead : {37, 38, 39, 40, 42})
			CHECK(t1.at(lead).mu == without.at(lead).mu); // exact copy
	}

	SUBCASE("transition2 keeps the model until the transition, then decays it") {
		CHECK(t2.at(30).mu[0] == 10.0);
		CHECK(t2.at(36).mu[0] == 10.0); // unchanged at the transition lead
		// Steps past 36 blend the frozen lead-36 forecast with weights
		// 3/4, 2/4, 1/4, then hand over exactly.
		CHECK(t2.at(37).mu[0] == doctest::Approx(0.75 * 10.0 + 0.25 * 20.0).epsilon(1e-15));
		CHECK(t2.at(38).mu[0] == doctest::Approx(0.50 * 10.0 + 0.50 * 20.0).epsilon(1e-15));
		CHECK(t2.at(39).mu[0] == doctest::Approx(0.25 * 10.0 + 0.75 * 20.0).epsilon(1e-15));
		for (const int lead : {40, 42})
			CHECK(t2.at(lead).mu == without.at(lead).mu);
	}

	SUBCASE("verifying observations ride along unchanged") {
		for (const int lead : {30, 36, 38, 42}) {
			CHECK(t1.at(lead).y == without.at(lead).y);
			CHECK(t2.at(lead).y == without.at(lead).y);
		}
	}
}

TEST_CASE("an init missing from the frozen run falls back to the without-model stream") {
	const LeadTimeGrid grid = LeadTimeGrid::standard();
	const TransitionConfig cfg;
	std::vector<Timestamp> inits;
	for (int d = 0; d < 4; ++d)
		inits.push_back({make_timestamp(2021, 7, 1, 12).hours + 24 * d});

	ModeRun with, without;
	for (const int lead : {36, 37})
		without[lead] = flat_predictions(inits, 20.0, 2.0, 15.0);
	// The frozen lead-36 stream is missing inits[1].
	std::vector<Timestamp> partial{inits[0], inits[2], inits[3]};
	with[36] = flat_predictions(partial, 10.0, 1.0, 15.0);
	with[37] = flat_predictions(inits, 10.0, 1.0, 15.0);

	const auto derived = derive_transitions(with, without, grid, cfg);
	const LeadPredictions& lp = derived.at("transition2").at(37);
	REQUIRE(lp.inits == inits);
	CHECK(lp.mu[0] == doctest::Approx(0.75 * 10.0 + 0.25 * 20.0).epsilon(1e-15));
	CHECK(lp.mu[1] == 20.0); // no frozen forecast for this init
	CHECK(lp.mu[2] == doctest::Approx(0.75 * 10.0 + 0.25 * 20.0).epsilon(1e-15));
}

TEST_CASE("transition lead must sit on the verification grid") {
	const LeadTimeGrid grid = LeadTimeGrid::standard();
	TransitionConfig cfg;
	cfg.transition_lead_h = 85; // not a grid lead
	ModeRun with, without;
	std::vector<Timestamp> inits{make_timestamp(2021, 7, 1, 12)};
	with[36] = flat_predictions(inits, 10.0, 1.0, 15.0);
	without[36] = flat_predictions(inits, 20.0, 2.0, 15.0);
	CHECK_THROWS_AS(derive_transitions(with, without, grid, cfg), DataError);
}

TEST_CASE("single-model runs stop at the model's horizon") {
	Dataset ds;
	SynthOptions opts;
	opts.n_days = 560;
	ds.ensure_station("v", Archetype::valley);
	generate_station(17, *ds.find_station("v"), SynthProfile::valley_default(), opts, ds);

	const LeadTimeGrid grid = LeadTimeGrid::make(6, 6, 48);
	const FoldSpec folds = make_folds(ds.init_times(), 3);

	const StationRuns aro = run_single_model(Source::aro, ds, grid, folds, {});
	const ModeRun& aro_run = aro.at("v").at("single_aro");
	CHECK_FALSE(aro_run.empty());
	for (const auto& [lead, lp] : aro_run) {
		CHECK(lead <= 36);
		CHECK(lp.size() > 0);
	}
	CHECK(aro_run.count(36) == 1);
	CHECK(aro_run.count(42) == 0);

	const StationRuns ens = run_single_model(Source::ens_mu, ds, grid, folds, {});
	const ModeRun& ens_run = ens.at("v").at("single_ensmu");
	CHECK(ens_run.size() == grid.leads_h.size()); // covers the whole grid
}
