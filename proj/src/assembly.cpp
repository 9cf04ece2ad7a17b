#include "seampp/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

#include "seampp/csvio.hpp"
#include "seampp/errors.hpp"

namespace seampp {

std::string PredictorMode::label() const
{
	switch (kind) {
		case Kind::persistence: return "persistence";
		case Kind::reference: return "reference";
		case Kind::single: break;
	}
	return source == Source::ens_mu ? "single_ensmu" : "single_" + source_name(*source);
}

std::optional<PredictorMode> PredictorMode::from_label(std::string_view s)
{
	if (s == "persistence")
		return persistence();
	if (s == "reference")
		return reference();
	if (s == "single_aro")
		return single(Source::aro);
	if (s == "single_det")
		return single(Source::det);
	if (s == "single_ensmu")
		return single(Source::ens_mu);
	return std::nullopt;
}

std::string source_column(Source s)
{
	return source_name(s);
}

std::array<double, 4> seasonal_basis(int doy)
{
	if (doy < 1 || doy > 366)
		throw DataError("day of year " + std::to_string(doy) + " outside 1..366");
	const double w = 2.0 * std::numbers::pi * static_cast<double>(doy) / 365.0;
	return {std::sin(w), std::cos(w), std::sin(2.0 * w), std::cos(2.0 * w)};
}

int effective_lead(int requested_lead_h, int horizon_h)
{
	return std::min(requested_lead_h, horizon_h);
}

std::optional<double> observation_persistence(Timestamp init, const ObservationSeries& obs)
{
	return obs.at(valid_time(init, 0));
}

std::optional<std::size_t> DesignMatrix::column_index(std::string_view name) const
{
	const auto it = std::find(columns.begin(), columns.end(), name);
	if (it == columns.end())
		return std::nullopt;
	return static_cast<std::size_t>(it - columns.begin());
}

namespace {

const ForecastArchive* find_archive(const std::vector<const ForecastArchive*>& archives, Source s)
{
	for (const auto* a : archives)
		if (a && a->source() == s)
			return a;
	return nullptr;
}

} // namespace

DesignMatrix assemble(const std::string& station, int lead_h, PredictorMode mode, const LeadTimeGrid& grid,
                      const ObservationSeries& obs, const std::vector<const ForecastArchive*>& archives,
                      const std::vector<Timestamp>& train_inits, const AssembleOptions& opts)
{
	if (!grid.contains(lead_h))
		throw DataError("lead " + std::to_string(lead_h) + " not in grid");
	if (train_inits.empty())
		throw EmptyDesign("no candidate inits for " + station + " lead " + std::to_string(lead_h));

	// Resolve the column plan: which sources enter, at which archive lead,
	// and whether the pers column is present.
	struct ModelColumn {
		const ForecastArchive* archive;
		int read_lead;
	};
	std::vector<std::pair<std::string, ModelColumn>> model_cols;
	bool with_pers = false;

	switch (mode.kind) {
		case PredictorMode::Kind::persistence:
			with_pers = lead_h <= opts.pers_max_lead_h;
			for (const Source s : kAllSources)
				if (const auto* a = find_archive(archives, s))
					model_cols.push_back({source_column(s), {a, effective_lead(lead_h, a->horizon_h())}});
			break;
		case PredictorMode::Kind::reference:
			for (const Source s : kAllSources)
				if (const auto* a = find_archive(archives, s); a && a->horizon_h() >= lead_h)
					model_cols.push_back({source_column(s), {a, lead_h}});
			break;
		case PredictorMode::Kind::single: {
			const auto* a = find_archive(archives, *mode.source);
			if (!a || a->horizon_h() < lead_h)
				throw NoPredictor("source " + source_name(*mode.source) + " not available at lead " +
				                  std::to_string(lead_h));
			model_cols.push_back({source_column(*mode.source), {a, lead_h}});
			break;
		}
	}

	DesignMatrix dm;
	dm.station = station;
	dm.lead_h = lead_h;
	dm.columns.push_back("intercept");
	if (with_pers)
		dm.columns.push_back("pers");
	for (const auto& [name, mc] : model_cols) {
		(void)mc;
		dm.columns.push_back(name);
	}
	for (const auto* h : {"sin1", "cos1", "sin2", "cos2"})
		dm.columns.push_back(h);
	dm.cols.assign(dm.columns.size(), {});

	const std::set<Timestamp> inits(train_inits.begin(), train_inits.end());
	for (const Timestamp init : inits) {
		const auto y = obs.at(valid_time(init, lead_h));
		if (!y)
			continue;
		std::optional<double> pers;
		if (with_pers) {
			pers = observation_persistence(init, obs);
			if (!pers)
				continue;
		}
		std::vector<double> model_vals;
		model_vals.reserve(model_cols.size());
		bool complete = true;
		for (const auto& [name, mc] : model_cols) {
			(void)name;
			const auto v = mc.archive->at(init, mc.read_lead);
			if (!v) {
				complete = false;
				break;
			}
			model_vals.push_back(*v);
		}
		if (!complete)
			continue;

		const auto harm = seasonal_basis(day_of_year(valid_time(init, lead_h)));
		std::size_t c = 0;
		dm.cols[c++].push_back(1.0);
		if (with_pers)
			dm.cols[c++].push_back(*pers);
		for (const double v : model_vals)
			dm.cols[c++].push_back(v);
		for (const double h : harm)
			dm.cols[c++].push_back(h);
		dm.target.push_back(*y);
		dm.inits.push_back(init);
	}

	if (dm.n_rows() == 0)
		throw EmptyDesign("all rows dropped for " + station + " " + mode.label() + " lead " +
		                  std::to_string(lead_h));
	if (dm.n_rows() < opts.min_rows)
		throw EmptyDesign("only " + std::to_string(dm.n_rows()) + " complete rows (< " +
		                  std::to_string(opts.min_rows) + ") for " + station + " " + mode.label() + " lead " +
		                  std::to_string(lead_h));
	return dm;
}

DesignMatrix restrict_rows(const DesignMatrix& dm, const std::vector<Timestamp>& keep)
{
	DesignMatrix out;
	out.station = dm.station;
	out.lead_h = dm.lead_h;
	out.columns = dm.columns;
	out.cols.assign(dm.cols.size(), {});
	std::size_t k = 0;
	for (std::size_t i = 0; i < dm.inits.size(); ++i) {
		while (k < keep.size() && keep[k] < dm.inits[i])
			++k;
		if (k == keep.size())
			break;
		if (keep[k] != dm.inits[i])
			continue;
		for (std::size_t c = 0; c < dm.cols.size(); ++c)
			out.cols[c].push_back(dm.cols[c][i]);
		out.target.push_back(dm.target[i]);
		out.inits.push_back(dm.inits[i]);
	}
	return out;
}

void write_design_csv(const std::filesystem::path& path, const DesignMatrix& dm)
{
	std::ofstream outf(path);
	if (!outf)
		throw DataError("cannot write " + path.string());
	outf << "init_time_utc";
	for (const auto& c : dm.columns)
		outf << ',' << c;
	outf << ",target\n";
	for (std::size_t i = 0; i < dm.n_rows(); ++i) {
		outf << format_iso_hour(dm.inits[i]);
		for (const auto& col : dm.cols)
			outf << ',' << format_double(col[i]);
		outf << ',' << format_double(dm.target[i]) << '\n';
	}
}

} // namespace seampp
