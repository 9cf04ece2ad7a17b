#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "seampp/emos.hpp"

namespace seampp {

// Year-blocked cross-validation folds over init dates. Same-year inits always
// share a fold, so no fold ever trains on its own test year.
struct FoldSpec {
	int k = 3;
	std::map<Timestamp, int> assignment;

	std::vector<Timestamp> members(int fold) const;
	std::vector<Timestamp> complement(int fold) const;
};

// Assigns calendar years to folds round-robin in ascending year order.
FoldSpec make_folds(const std::vector<Timestamp>& init_dates, int k);

// Explicit [start, end) date ranges, one per fold. Every init must fall in
// exactly one range.
FoldSpec make_folds_by_ranges(const std::vector<Timestamp>& init_dates,
                              const std::vector<std::pair<Timestamp, Timestamp>>& ranges);

double mae(std::span<const double> predicted_mu, std::span<const double> observed);

// (1 - mae/mae_ref) * 100; positive means improvement over the reference.
double skill_score(double mae, double mae_ref);

struct ScoreRow {
	std::string station;
	std::string mode;
	int lead_h = 0;
	std::size_t n_cases = 0;
	double mae = 0.0;
};

struct SkillRow {
	std::string station;
	int lead_h = 0;
	double skill_pct = 0.0;
	std::string reference_mode;
};

struct ScoreTable {
	std::vector<ScoreRow> rows;
	std::vector<SkillRow> skill;

	const ScoreRow* find(const std::string& station, const std::string& mode, int lead_h) const;
};

// Pooled out-of-fold predictions for one (station, mode, lead) cell, sorted
// by init. y holds the verifying observations.
struct LeadPredictions {
	std::vector<Timestamp> inits;
	std::vector<double> mu;
	std::vector<double> sigma;
	std::vector<double> y;

	std::size_t size() const { return inits.size(); }
};

using ModeRun = std::map<int, LeadPredictions>;                       // lead -> predictions
using StationRuns = std::map<std::string, std::map<std::string, ModeRun>>; // station -> label -> run

// One assembled prediction stream of the CV engine.
struct ModeSpec {
	std::string label;
	PredictorMode mode;
	std::set<Source> exclude;    // archives hidden from assembly
	bool comparable = true;      // participates in the row-set intersection
	bool cap_to_horizon = false; // single-model runs skip leads past the horizon
};

struct CvOptions {
	AssembleOptions assemble;
	FitOptions fit;
};

// Which inits each fold evaluation trained and tested on; filled for leakage
// checks.
struct SplitAudit {
	struct Entry {
		int fold = 0;
		std::vector<Timestamp> train;
		std::vector<Timestamp> test;
	};
	std::vector<Entry> entries;
};

// For every fold: fit each stream on the fold's complement, predict the fold,
// and pool predictions per (station, label, lead). Streams marked comparable
// are restricted to their common complete-case rows, train and test alike, so
// their case sets coincide exactly.
StationRuns run_cv(const Dataset& ds, const LeadTimeGrid& grid, const std::vector<ModeSpec>& specs,
                   const FoldSpec& folds, const CvOptions& opts = {}, SplitAudit* audit = nullptr);

// MAE rows for every (station, label, lead) in the runs, pooled-across-station
// rows under station "all_pooled" when several stations are present, and
// skill rows of `numerator` against `reference`. The all-station skill curve
// is emitted in both variants: "all_mean" averages per-station skills,
// "all_pooled" recomputes skill from the pooled MAE rows.
ScoreTable score_runs(const StationRuns& runs, const std::string& numerator = "persistence",
                      const std::string& reference = "reference");

// Convenience end-to-end operation: assemble/fit/predict per fold for the
// given modes and score the pooled predictions.
ScoreTable cross_validate(const Dataset& ds, const LeadTimeGrid& grid, const std::vector<PredictorMode>& modes,
                          const FoldSpec& folds, const CvOptions& opts = {}, SplitAudit* audit = nullptr);

// scores CSV: station,mode,lead_h,n_cases,mae
void write_scores_csv(const std::filesystem::path& path, const ScoreTable& table);
// skill CSV: station,lead_h,skill_pct,reference_mode
void write_skill_csv(const std::filesystem::path& path, const ScoreTable& table);
ScoreTable read_scores_csv(const std::filesystem::path& path);
void read_skill_csv(const std::filesystem::path& path, ScoreTable& into);

// MAE on both sides of the model-horizon transitions, one line per
// (station, mode).
std::string format_transition_summary(const ScoreTable& table,
                                      const std::vector<std::pair<int, int>>& lead_pairs = {{36, 37}, {84, 87}});

} // namespace seampp
