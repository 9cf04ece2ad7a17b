#pragma once

#include <seampp/verification.hpp>

namespace seampp {

/// Shape of the blending weight inside the transition window.  Only the
/// linear ramp is implemented; the enum exists so configs can name it.
enum class TransitionProfile { linear };

/// Parameters for the two blending baselines that bridge the gap left by
/// an expiring high-resolution model.
struct TransitionConfig {
	/// Last lead (hours) at which the blended-out model still contributes.
	int transition_lead_h = 36;
	/// Width (hours) of the ramp ending at transition_lead_h.
	int window_h = 6;
	/// Number of grid steps past the transition that the extrapolation
	/// baseline keeps leaning on the final with-model forecast.
	int extrapolation_leads = 3;
	TransitionProfile profile = TransitionProfile::linear;
	/// Model whose horizon defines the transition (excluded from the
	/// "without" stream).
	Source source = Source::aro;
};

/// Weight given to the with-model forecast at `lead_h` under the ramp:
/// 1 before the window, sliding linearly to 0 at the transition lead.
double transition_weight(int lead_h, const TransitionConfig& cfg);

/// Blend two predictive distributions for the same case with the ramp
/// weight.  Both mean and spread are mixed with the same weight.
GaussianPrediction transition_weighted_average(const GaussianPrediction& with_model,
                                               const GaussianPrediction& without_model,
                                               int lead_h,
                                               const TransitionConfig& cfg);

/// Weight on the frozen last with-model forecast when we are `steps_past`
/// grid positions beyond the transition lead: (E + 1 - s) / (E + 1) for
/// 1 <= s <= E, zero afterwards.
double extrapolation_weight(int steps_past, const TransitionConfig& cfg);

/// Decay a frozen with-model forecast toward the without-model one as the
/// lead moves past the transition.
GaussianPrediction transition_extrapolation(const GaussianPrediction& last_with_model,
                                            const GaussianPrediction& without_model,
                                            int steps_past,
                                            const TransitionConfig& cfg);

/// Cross-validated run for a single-source regression (intercept + one
/// forecast + seasonal harmonics), capped at that source's horizon.
StationRuns run_single_model(Source source,
                             const Dataset& ds,
                             const LeadTimeGrid& grid,
                             const FoldSpec& folds,
                             const CvOptions& opts);

/// Build the two transition baselines from an already cross-validated
/// pair of runs: `with_model` uses the full reference predictor set and
/// `without_model` the same set minus cfg.source.  Returns ModeRuns keyed
/// "transition1" (weighted average) and "transition2" (extrapolation).
std::map<std::string, ModeRun> derive_transitions(const ModeRun& with_model,
                                                  const ModeRun& without_model,
                                                  const LeadTimeGrid& grid,
                                                  const TransitionConfig& cfg);

} // namespace seampp
