#include "seampp/verification.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "seampp/csvio.hpp"
#include "seampp/errors.hpp"

namespace seampp {

std::vector<Timestamp> FoldSpec::members(int fold) const
{
	std::vector<Timestamp> out;
	for (const auto& [t, f] : assignment)
		if (f == fold)
			out.push_back(t);
	return out;
}

std::vector<Timestamp> FoldSpec::complement(int fold) const
{
	std::vector<Timestamp> out;
	for (const auto& [t, f] : assignment)
		if (f != fold)
			out.push_back(t);
	return out;
}

FoldSpec make_folds(const std::vector<Timestamp>& init_dates, int k)
{
	if (k < 1)
		throw DataError("fold count must be >= 1");
	std::set<int> years;
	for (const auto t : init_dates)
		years.insert(year_of(t));
	if (static_cast<int>(years.size()) < k)
		throw TooFewYears("need at least " + std::to_string(k) + " distinct calendar years, found " +
		                  std::to_string(years.size()));
	std::map<int, int> year_fold;
	int i = 0;
	for (const int y : years)
		year_fold[y] = i++ % k;
	FoldSpec spec;
	spec.k = k;
	for (const auto t : init_dates)
		spec.assignment[t] = year_fold.at(year_of(t));
	return spec;
}

FoldSpec make_folds_by_ranges(const std::vector<Timestamp>& init_dates,
                              const std::vector<std::pair<Timestamp, Timestamp>>& ranges)
{
	if (ranges.empty())
		throw DataError("no fold ranges given");
	FoldSpec spec;
	spec.k = static_cast<int>(ranges.size());
	for (const auto t : init_dates) {
		int assigned = -1;
		for (std::size_t i = 0; i < ranges.size(); ++i) {
			if (t >= ranges[i].first && t < ranges[i].second) {
				if (assigned >= 0)
					throw DataError("init " + format_iso_hour(t) + " falls in overlapping fold ranges");
				assigned = static_cast<int>(i);
			}
		}
		if (assigned < 0)
			throw DataError("init " + format_iso_hour(t) + " not covered by any fold range");
		spec.assignment[t] = assigned;
	}
	for (int f = 0; f < spec.k; ++f)
		if (spec.members(f).empty())
			throw DataError("fold " + std::to_string(f) + " has no init dates");
	return spec;
}

double mae(std::span<const double> predicted_mu, std::span<const double> observed)
{
	if (predicted_mu.size() != observed.size())
		throw LengthMismatch("mae: " + std::to_string(predicted_mu.size()) + " predictions vs " +
		                     std::to_string(observed.size()) + " observations");
	if (predicted_mu.empty())
		throw EmptyInput("mae of empty vectors");
	double acc = 0.0;
	for (std::size_t i = 0; i < predicted_mu.size(); ++i)
		acc += std::abs(predicted_mu[i] - observed[i]);
	return acc / static_cast<double>(predicted_mu.size());
}

double skill_score(double mae, double mae_ref)
{
	if (!(mae_ref > 0.0))
		throw ZeroReference("skill score needs a positive reference MAE");
	return (1.0 - mae / mae_ref) * 100.0;
}

const ScoreRow* ScoreTable::find(const std::string& station, const std::string& mode, int lead_h) const
{
	for (const auto& r : rows)
		if (r.station == station && r.mode == mode && r.lead_h == lead_h)
			return &r;
	return nullptr;
}

namespace {

template <typename F>
auto with_cell_context(const std::string& ctx, F&& f)
{
	try {
		return f();
	} catch (EmptyDesign& e) {
		throw EmptyDesign(ctx + ": " + e.what());
	} catch (NoPredictor& e) {
		throw NoPredictor(ctx + ": " + e.what());
	} catch (TooFewRows& e) {
		throw TooFewRows(ctx + ": " + e.what());
	} catch (ColumnMismatch& e) {
		throw ColumnMismatch(ctx + ": " + e.what());
	}
}

std::vector<const ForecastArchive*> archives_for(const Dataset& ds, const std::string& station,
                                                 const std::set<Source>& exclude)
{
	std::vector<const ForecastArchive*> out;
	const auto it = ds.forecasts.find(station);
	if (it == ds.forecasts.end())
		return out;
	for (const auto& [src, archive] : it->second)
		if (!exclude.count(src))
			out.push_back(&archive);
	return out;
}

int single_horizon(const Dataset& ds, const std::string& station, const ModeSpec& spec)
{
	for (const auto* a : archives_for(ds, station, spec.exclude))
		if (a->source() == *spec.mode.source)
			return a->horizon_h();
	return -1;
}

// Sorted intersection of init vectors.
std::vector<Timestamp> intersect_inits(const std::vector<std::vector<Timestamp>>& sets)
{
	if (sets.empty())
		return {};
	std::vector<Timestamp> acc = sets.front();
	for (std::size_t i = 1; i < sets.size(); ++i) {
		std::vector<Timestamp> next;
		std::set_intersection(acc.begin(), acc.end(), sets[i].begin(), sets[i].end(), std::back_inserter(next));
		acc = std::move(next);
	}
	return acc;
}

void append_predictions(LeadPredictions& lp, const EmosFit& fit, const DesignMatrix& test_dm)
{
	for (std::size_t r = 0; r < test_dm.n_rows(); ++r) {
		const auto pred = predict_row(fit, test_dm, r);
		lp.inits.push_back(test_dm.inits[r]);
		lp.mu.push_back(pred.mu);
		lp.sigma.push_back(pred.sigma);
		lp.y.push_back(test_dm.target[r]);
	}
}

void sort_by_init(LeadPredictions& lp)
{
	std::vector<std::size_t> order(lp.inits.size());
	for (std::size_t i = 0; i < order.size(); ++i)
		order[i] = i;
	std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lp.inits[a] < lp.inits[b]; });
	LeadPredictions sorted;
	sorted.inits.reserve(order.size());
	for (const std::size_t i : order) {
		sorted.inits.push_back(lp.inits[i]);
		sorted.mu.push_back(lp.mu[i]);
		sorted.sigma.push_back(lp.sigma[i]);
		sorted.y.push_back(lp.y[i]);
	}
	lp = std::move(sorted);
}

} // namespace

StationRuns run_cv(const Dataset& ds, const LeadTimeGrid& grid, const std::vector<ModeSpec>& specs,
                   const FoldSpec& folds, const CvOptions& opts, SplitAudit* audit)
{
	if (specs.empty())
		throw DataError("no prediction streams requested");

	std::vector<std::pair<std::vector<Timestamp>, std::vector<Timestamp>>> splits;
	for (int f = 0; f < folds.k; ++f) {
		// A single fold has an empty complement; it degenerates to
		// in-sample scoring.
		auto train = folds.k == 1 ? folds.members(f) : folds.complement(f);
		splits.emplace_back(std::move(train), folds.members(f));
		if (audit)
			audit->entries.push_back({f, splits.back().first, splits.back().second});
	}

	AssembleOptions test_opts = opts.assemble;
	test_opts.min_rows = 1;

	StationRuns runs;
	for (const auto& meta : ds.stations) {
		const auto obs_it = ds.obs.find(meta.id);
		if (obs_it == ds.obs.end() || !ds.forecasts.count(meta.id))
			continue;
		const auto& obs = obs_it->second;

		for (int f = 0; f < folds.k; ++f) {
			const auto& [train_inits, test_inits] = splits[static_cast<std::size_t>(f)];
			for (const int lead : grid.leads_h) {
				// Assemble train and test designs for every stream live at
				// this lead.
				std::vector<std::size_t> live;
				std::vector<DesignMatrix> train_dms(specs.size()), test_dms(specs.size());
				std::vector<bool> has_test(specs.size(), false);
				for (std::size_t s = 0; s < specs.size(); ++s) {
					const auto& spec = specs[s];
					if (spec.cap_to_horizon && single_horizon(ds, meta.id, spec) < lead)
						continue;
					const auto archives = archives_for(ds, meta.id, spec.exclude);
					const std::string ctx = "station " + meta.id + " mode " + spec.label + " lead " +
					                        std::to_string(lead) + " fold " + std::to_string(f);
					train_dms[s] = with_cell_context(ctx, [&] {
						return assemble(meta.id, lead, spec.mode, grid, obs, archives, train_inits,
						                opts.assemble);
					});
					try {
						test_dms[s] = assemble(meta.id, lead, spec.mode, grid, obs, archives, test_inits,
						                       test_opts);
						has_test[s] = true;
					} catch (const EmptyDesign&) {
						// no test cases from this fold for this cell
					}
					live.push_back(s);
				}

				// Comparable streams share one complete-case row set.
				std::vector<std::vector<Timestamp>> train_sets, test_sets;
				for (const std::size_t s : live) {
					if (!specs[s].comparable)
						continue;
					train_sets.push_back(train_dms[s].inits);
					if (has_test[s])
						test_sets.push_back(test_dms[s].inits);
					else
						test_sets.push_back({});
				}
				if (train_sets.size() > 1) {
					const auto train_common = intersect_inits(train_sets);
					const auto test_common = intersect_inits(test_sets);
					for (const std::size_t s : live) {
						if (!specs[s].comparable)
							continue;
						train_dms[s] = restrict_rows(train_dms[s], train_common);
						if (train_dms[s].n_rows() < opts.assemble.min_rows)
							throw EmptyDesign("station " + meta.id + " mode " + specs[s].label + " lead " +
							                  std::to_string(lead) + " fold " + std::to_string(f) + ": only " +
							                  std::to_string(train_dms[s].n_rows()) +
							                  " shared complete rows across comparable modes");
						if (has_test[s]) {
							test_dms[s] = restrict_rows(test_dms[s], test_common);
							has_test[s] = test_dms[s].n_rows() > 0;
						}
					}
				}

				for (const std::size_t s : live) {
					const std::string ctx = "station " + meta.id + " mode " + specs[s].label + " lead " +
					                        std::to_string(lead) + " fold " + std::to_string(f);
					const EmosFit fit =
					    with_cell_context(ctx, [&] { return fit_emos(train_dms[s], opts.fit); });
					if (has_test[s])
						append_predictions(runs[meta.id][specs[s].label][lead], fit, test_dms[s]);
				}
			}
		}

		for (auto& [label, run] : runs[meta.id]) {
			(void)label;
			for (auto& [lead, lp] : run) {
				(void)lead;
				sort_by_init(lp);
			}
		}
	}
	return runs;
}

ScoreTable score_runs(const StationRuns& runs, const std::string& numerator, const std::string& reference)
{
	ScoreTable table;

	// Per-station MAE rows.
	for (const auto& [station, by_label] : runs)
		for (const auto& [label, run] : by_label)
			for (const auto& [lead, lp] : run) {
				if (lp.size() == 0)
					continue;
				table.rows.push_back({station, label, lead, lp.size(), mae(lp.mu, lp.y)});
			}

	// Pooled-across-station rows, from summed absolute errors.
	if (runs.size() > 1) {
		std::map<std::pair<std::string, int>, std::pair<double, std::size_t>> pooled; // (label, lead) -> (sum|e|, n)
		for (const auto& [station, by_label] : runs) {
			(void)station;
			for (const auto& [label, run] : by_label)
				for (const auto& [lead, lp] : run) {
					auto& [acc, n] = pooled[{label, lead}];
					for (std::size_t i = 0; i < lp.size(); ++i)
						acc += std::abs(lp.mu[i] - lp.y[i]);
					n += lp.size();
				}
		}
		for (const auto& [key, agg] : pooled)
			if (agg.second > 0)
				table.rows.push_back(
				    {"all_pooled", key.first, key.second, agg.second, agg.first / static_cast<double>(agg.second)});
	}

	// Skill rows: numerator vs reference wherever both scored, straight from
	// the table's own MAE rows.
	std::map<std::string, std::map<int, std::pair<const ScoreRow*, const ScoreRow*>>> paired;
	for (const auto& r : table.rows) {
		if (r.mode == numerator)
			paired[r.station][r.lead_h].first = &r;
		if (r.mode == reference)
			paired[r.station][r.lead_h].second = &r;
	}
	std::map<int, std::pair<double, std::size_t>> mean_acc; // lead -> (sum of skills, count), real stations only
	for (const auto& [station, by_lead] : paired)
		for (const auto& [lead, pr] : by_lead) {
			if (!pr.first || !pr.second)
				continue;
			const double skill = skill_score(pr.first->mae, pr.second->mae);
			table.skill.push_back({station, lead, skill, reference});
			if (station != "all_pooled") {
				auto& [acc, n] = mean_acc[lead];
				acc += skill;
				++n;
			}
		}
	if (runs.size() > 1)
		for (const auto& [lead, agg] : mean_acc)
			if (agg.second > 0)
				table.skill.push_back(
				    {"all_mean", lead, agg.first / static_cast<double>(agg.second), reference});

	std::sort(table.skill.begin(), table.skill.end(), [](const SkillRow& a, const SkillRow& b) {
		return std::tie(a.station, a.reference_mode, a.lead_h) < std::tie(b.station, b.reference_mode, b.lead_h);
	});
	return table;
}

ScoreTable cross_validate(const Dataset& ds, const LeadTimeGrid& grid, const std::vector<PredictorMode>& modes,
                          const FoldSpec& folds, const CvOptions& opts, SplitAudit* audit)
{
	std::vector<ModeSpec> specs;
	for (const auto& m : modes) {
		ModeSpec spec;
		spec.label = m.label();
		spec.mode = m;
		spec.comparable = m.kind != PredictorMode::Kind::single;
		spec.cap_to_horizon = m.kind == PredictorMode::Kind::single;
		specs.push_back(std::move(spec));
	}
	const auto runs = run_cv(ds, grid, specs, folds, opts, audit);
	return score_runs(runs);
}

void write_scores_csv(const std::filesystem::path& path, const ScoreTable& table)
{
	std::ofstream outf(path);
	if (!outf)
		throw DataError("cannot write " + path.string());
	outf << "station,mode,lead_h,n_cases,mae\n";
	for (const auto& r : table.rows)
		outf << r.station << ',' << r.mode << ',' << r.lead_h << ',' << r.n_cases << ',' << format_double(r.mae)
		     << '\n';
}

void write_skill_csv(const std::filesystem::path& path, const ScoreTable& table)
{
	std::ofstream outf(path);
	if (!outf)
		throw DataError("cannot write " + path.string());
	outf << "station,lead_h,skill_pct,reference_mode\n";
	for (const auto& r : table.skill)
		outf << r.station << ',' << r.lead_h << ',' << format_double(r.skill_pct) << ',' << r.reference_mode
		     << '\n';
}

ScoreTable read_scores_csv(const std::filesystem::path& path)
{
	std::ifstream in(path);
	if (!in)
		throw DataError("cannot open " + path.string());
	ScoreTable table;
	std::string line;
	bool header = true;
	std::size_t line_no = 0;
	while (std::getline(in, line)) {
		++line_no;
		if (!line.empty() && line.back() == '\r')
			line.pop_back();
		if (line.empty())
			continue;
		if (header) {
			header = false;
			if (line != "station,mode,lead_h,n_cases,mae")
				throw DataError(path.string() + ": unexpected scores header");
			continue;
		}
		const auto f = split_csv_line(line);
		if (f.size() != 5)
			throw DataError(path.string() + " line " + std::to_string(line_no) + ": expected 5 fields");
		ScoreRow r;
		r.station = f[0];
		r.mode = f[1];
		r.lead_h = std::stoi(f[2]);
		r.n_cases = static_cast<std::size_t>(std::stoull(f[3]));
		r.mae = std::stod(f[4]);
		table.rows.push_back(std::move(r));
	}
	return table;
}

void read_skill_csv(const std::filesystem::path& path, ScoreTable& into)
{
	std::ifstream in(path);
	if (!in)
		throw DataError("cannot open " + path.string());
	std::string line;
	bool header = true;
	std::size_t line_no = 0;
	while (std::getline(in, line)) {
		++line_no;
		if (!line.empty() && line.back() == '\r')
			line.pop_back();
		if (line.empty())
			continue;
		if (header) {
			header = false;
			if (line != "station,lead_h,skill_pct,reference_mode")
				throw DataError(path.string() + ": unexpected skill header");
			continue;
		}
		const auto f = split_csv_line(line);
		if (f.size() != 4)
			throw DataError(path.string() + " line " + std::to_string(line_no) + ": expected 4 fields");
		SkillRow r;
		r.station = f[0];
		r.lead_h = std::stoi(f[1]);
		r.skill_pct = std::stod(f[2]);
		r.reference_mode = f[3];
		into.skill.push_back(std::move(r));
	}
}

std::string format_transition_summary(const ScoreTable& table, const std::vector<std::pair<int, int>>& lead_pairs)
{
	std::set<std::pair<std::string, std::string>> cells;
	for (const auto& r : table.rows)
		cells.insert({r.station, r.mode});

	std::ostringstream out;
	out << "transition summary (MAE degC on both sides of each model horizon):\n";
	for (const auto& [station, mode] : cells) {
		if (station == "all_pooled")
			continue;
		bool any = false;
		std::ostringstream lineout;
		lineout << "  " << station << " / " << mode << ":";
		for (const auto& [before, after] : lead_pairs) {
			const auto* a = table.find(station, mode, before);
			const auto* b = table.find(station, mode, after);
			if (!a || !b)
				continue;
			any = true;
			char buf[96];
			std::snprintf(buf, sizeof buf, "  +%dh %.3f -> +%dh %.3f (delta %+.3f)", before, a->mae, after,
			              b->mae, b->mae - a->mae);
			lineout << buf;
		}
		if (any)
			out << lineout.str() << '\n';
	}
	return out.str();
}

} // namespace seampp
