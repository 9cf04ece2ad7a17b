#include <seampp/baselines.hpp>

#include <seampp/errors.hpp>

#include <algorithm>
#include <cmath>

namespace seampp {

double transition_weight(int lead_h, const TransitionConfig& cfg) {
	if (cfg.window_h <= 0) // degenerate window: hard cutoff at the transition
		return lead_h < cfg.transition_lead_h ? 1.0 : 0.0;
	const double w = static_cast<double>(cfg.transition_lead_h - lead_h) / cfg.window_h;
	return std::clamp(w, 0.0, 1.0);
}

GaussianPrediction transition_weighted_average(const GaussianPrediction& with_model,
                                               const GaussianPrediction& without_model,
                                               int lead_h,
                                               const TransitionConfig& cfg) {
	const double w = transition_weight(lead_h, cfg);
	return {w * with_model.mu + (1.0 - w) * without_model.mu,
	        w * with_model.sigma + (1.0 - w) * without_model.sigma};
}

double extrapolation_weight(int steps_past, const TransitionConfig& cfg) {
	if (steps_past < 1)
		throw NumericError("extrapolation_weight: steps_past must be >= 1");
	if (steps_past > cfg.extrapolation_leads)
		return 0.0;
	return static_cast<double>(cfg.extrapolation_leads + 1 - steps_past)
	     / (cfg.extrapolation_leads + 1);
}

GaussianPrediction transition_extrapolation(const GaussianPrediction& last_with_model,
                                            const GaussianPrediction& without_model,
                                            int steps_past,
                                            const TransitionConfig& cfg) {
	const double v = extrapolation_weight(steps_past, cfg);
	return {v * last_with_model.mu + (1.0 - v) * without_model.mu,
	        v * last_with_model.sigma + (1.0 - v) * without_model.sigma};
}

StationRuns run_single_model(Source source,
                             const Dataset& ds,
                             const LeadTimeGrid& grid,
                             const FoldSpec& folds,
                             const CvOptions& opts) {
	std::vector<ModeSpec> specs;
	ModeSpec spec;
	spec.label = PredictorMode::single(source).label();
	spec.mode = PredictorMode::single(source);
	spec.comparable = false;
	spec.cap_to_horizon = true;
	specs.push_back(spec);
	return run_cv(ds, grid, specs, folds, opts, nullptr);
}

namespace {

// Position of `lead_h` in the grid, required to exist.
std::size_t grid_pos(const LeadTimeGrid& grid, int lead_h) {
	const auto idx = grid.index_of(lead_h);
	if (!idx)
		throw DataError("derive_transitions: lead " + std::to_string(lead_h)
		                + " not on the verification grid");
	return *idx;
}

// Predictions for one init, or nullopt when the init has no case at that
// lead.  `lp.inits` is sorted, so a binary search suffices.
std::optional<std::size_t> find_init(const LeadPredictions& lp, Timestamp init) {
	const auto it = std::lower_bound(lp.inits.begin(), lp.inits.end(), init);
	if (it == lp.inits.end() || !(*it == init))
		return std::nullopt;
	return static_cast<std::size_t>(it - lp.inits.begin());
}

} // namespace

std::map<std::string, ModeRun> derive_transitions(const ModeRun& with_model,
                                                  const ModeRun& without_model,
                                                  const LeadTimeGrid& grid,
                                                  const TransitionConfig& cfg) {
	std::map<std::string, ModeRun> out;
	ModeRun& t1 = out["transition1"];
	ModeRun& t2 = out["transition2"];

	if (!grid.contains(cfg.transition_lead_h))
		throw DataError("derive_transitions: transition lead "
		                + std::to_string(cfg.transition_lead_h)
		                + " not on the verification grid");
	const std::size_t tpos = grid_pos(grid, cfg.transition_lead_h);

	// The frozen with-model forecasts that t2 keeps reusing past the
	// transition, looked up per init.
	const LeadPredictions* frozen = nullptr;
	if (const auto it = with_model.find(cfg.transition_lead_h); it != with_model.end())
		frozen = &it->second;

	for (const auto& [lead, without_lp] : without_model) {
		const std::size_t pos = grid_pos(grid, lead);

		if (lead <= cfg.transition_lead_h) {
			// Both baselines still have the model available.  t2 uses it
			// unchanged; t1 ramps it down inside the window.
			const auto wit = with_model.find(lead);
			if (wit == with_model.end())
				continue;
			const LeadPredictions& with_lp = wit->second;
			t2[lead] = with_lp;

			LeadPredictions blended;
			for (std::size_t i = 0; i < with_lp.inits.size(); ++i) {
				const auto j = find_init(without_lp, with_lp.inits[i]);
				if (!j)
					continue;
				const GaussianPrediction g = transition_weighted_average(
					{with_lp.mu[i], with_lp.sigma[i]},
					{without_lp.mu[*j], without_lp.sigma[*j]}, lead, cfg);
				blended.inits.push_back(with_lp.inits[i]);
				blended.mu.push_back(g.mu);
				blended.sigma.push_back(g.sigma);
				blended.y.push_back(with_lp.y[i]);
			}
			t1[lead] = std::move(blended);
			continue;
		}

		// Past the transition t1 is simply the without-model forecast.
		t1[lead] = without_lp;

		const int steps = static_cast<int>(pos - tpos);
		if (steps > cfg.extrapolation_leads || frozen == nullptr) {
			t2[lead] = without_lp;
			continue;
		}

		LeadPredictions extrap;
		for (std::size_t i = 0; i < without_lp.inits.size(); ++i) {
			const auto j = find_init(*frozen, without_lp.inits[i]);
			if (!j) {
				// No frozen forecast for this init: fall back to the
				// without-model prediction rather than dropping the case.
				extrap.inits.push_back(without_lp.inits[i]);
				extrap.mu.push_back(without_lp.mu[i]);
				extrap.sigma.push_back(without_lp.sigma[i]);
				extrap.y.push_back(without_lp.y[i]);
				continue;
			}
			const GaussianPrediction g = transition_extrapolation(
				{frozen->mu[*j], frozen->sigma[*j]},
				{without_lp.mu[i], without_lp.sigma[i]}, steps, cfg);
			extrap.inits.push_back(without_lp.inits[i]);
			extrap.mu.push_back(g.mu);
			extrap.sigma.push_back(g.sigma);
			extrap.y.push_back(without_lp.y[i]);
		}
		t2[lead] = std::move(extrap);
	}
	return out;
}

} // namespace seampp
