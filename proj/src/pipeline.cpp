#include <seampp/pipeline.hpp>

#include <seampp/csvio.hpp>
#include <seampp/emos.hpp>
#include <seampp/errors.hpp>
#include <seampp/svgplot.hpp>
#include <seampp/synthgen.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <set>

namespace seampp {

namespace {

namespace fs = std::filesystem;

void write_text_file(const fs::path& path, const std::string& text) {
	std::ofstream out(path, std::ios::binary);
	if (!out)
		throw DataError("cannot open " + path.string() + " for writing");
	out << text;
	if (!out)
		throw DataError("failed writing " + path.string());
}

fs::path ensure_out_dir(const RunConfig& cfg) {
	std::error_code ec;
	fs::create_directories(cfg.out_dir, ec);
	if (ec)
		throw DataError("cannot create output directory " + cfg.out_dir.string()
		                + ": " + ec.message());
	return cfg.out_dir;
}

void log_ingest(std::ostream& log, const std::string& what, const IngestReport& report) {
	log << what << ": " << report.accepted << " rows accepted, " << report.rejected
	    << " rejected\n";
	for (const auto& d : report.diagnostics)
		log << "  " << d << '\n';
}

// Daily init times of the dataset, the unit the folds block over.
std::vector<Timestamp> dataset_inits(const Dataset& ds) {
	const std::vector<Timestamp> inits = ds.init_times();
	if (inits.empty())
		throw DataError("dataset contains no forecast initializations");
	return inits;
}

FoldSpec make_configured_folds(const RunConfig& cfg, const Dataset& ds) {
	const std::vector<Timestamp> inits = dataset_inits(ds);
	if (!cfg.folds.ranges.empty())
		return make_folds_by_ranges(inits, cfg.folds.ranges);
	return make_folds(inits, cfg.folds.k);
}

// The PredictorMode part of the configured mode list, preserving order.
std::vector<PredictorMode> fit_modes(const RunConfig& cfg, std::ostream& log) {
	std::vector<PredictorMode> modes;
	for (const auto& label : cfg.modes) {
		if (const auto m = PredictorMode::from_label(label))
			modes.push_back(*m);
		else
			log << "note: \"" << label << "\" has no fitted coefficients; skipped in fits\n";
	}
	return modes;
}

// Fit every configured (station, mode, lead) cell on all inits at once.
std::vector<EmosFit> fit_full_dataset(const RunConfig& cfg, const Dataset& ds, std::ostream& log) {
	const std::vector<Timestamp> inits = dataset_inits(ds);
	const std::vector<PredictorMode> modes = fit_modes(cfg, log);
	if (modes.empty())
		throw ConfigError("no fittable modes configured");

	std::vector<EmosFit> fits;
	for (const auto& station : ds.stations) {
		const auto oit = ds.obs.find(station.id);
		const auto fct = ds.forecasts.find(station.id);
		if (oit == ds.obs.end() || fct == ds.forecasts.end()) {
			log << "note: station " << station.id << " lacks observations or forecasts; skipped\n";
			continue;
		}
		std::vector<const ForecastArchive*> archives;
		for (const auto& [src, archive] : fct->second)
			archives.push_back(&archive);

		for (const PredictorMode& mode : modes) {
			for (const int lead : cfg.grid.leads_h) {
				if (mode.kind == PredictorMode::Kind::single) {
					const auto ait = fct->second.find(*mode.source);
					if (ait == fct->second.end() || lead > ait->second.horizon_h())
						continue;
				}
				DesignMatrix dm;
				try {
					dm = assemble(station.id, lead, mode, cfg.grid, oit->second, archives,
					              inits, cfg.assemble);
				} catch (const DataError& e) {
					throw DataError("fit " + station.id + "/" + mode.label() + "/+"
					                + std::to_string(lead) + "h: " + e.what());
				}
				EmosFit fit = fit_emos(dm, cfg.fit);
				fit.mode = mode;
				fits.push_back(std::move(fit));
			}
		}
	}
	return fits;
}

std::vector<int> marker_leads(const RunConfig& cfg) {
	std::set<int> markers;
	for (const Source s : kAllSources) {
		const int h = source_default_horizon(s);
		if (h < cfg.grid.leads_h.back())
			markers.insert(h);
	}
	markers.insert(cfg.transition.transition_lead_h);
	return {markers.begin(), markers.end()};
}

void render_charts(const RunConfig& cfg, std::ostream& log) {
	const fs::path scores_path = cfg.out_dir / "scores.csv";
	const fs::path skill_path = cfg.out_dir / "skill.csv";
	ScoreTable table = read_scores_csv(scores_path);
	if (fs::exists(skill_path))
		read_skill_csv(skill_path, table);

	const std::vector<int> markers = marker_leads(cfg);
	const fs::path mae_path = cfg.out_dir / "mae_by_lead.svg";
	write_text_file(mae_path, render_mae_chart(table, markers));
	log << "wrote " << mae_path.string() << '\n';

	const std::string skill_svg = render_skill_chart(table, markers);
	if (skill_svg.empty()) {
		log << "notice: no persistence-vs-reference skill in the tables; skill chart omitted\n";
		return;
	}
	const fs::path skill_svg_path = cfg.out_dir / "skill.svg";
	write_text_file(skill_svg_path, skill_svg);
	log << "wrote " << skill_svg_path.string() << '\n';
}

} // namespace

Dataset build_dataset(const RunConfig& cfg, std::ostream& log) {
	Dataset ds;
	if (cfg.synth) {
		for (const auto& station : cfg.synth->stations)
			generate_station(cfg.seed, station.meta, station.profile, cfg.synth->options, ds);
		log << "generated " << ds.stations.size() << " synthetic station(s), "
		    << dataset_inits(ds).size() << " initializations\n";
		return ds;
	}
	if (!cfg.data)
		throw ConfigError("config has neither synth nor data section");
	IngestOptions opts;
	opts.init_offset_h = cfg.data->init_offset_h;
	log_ingest(log, cfg.data->observations_csv.string(),
	           read_observations_csv(cfg.data->observations_csv, ds));
	log_ingest(log, cfg.data->forecasts_csv.string(),
	           read_forecasts_csv(cfg.data->forecasts_csv, ds, opts));
	return ds;
}

void cmd_synth(const RunConfig& cfg, std::ostream& log) {
	if (!cfg.synth)
		throw ConfigError("the synth command requires a config with a \"synth\" section");
	const Dataset ds = build_dataset(cfg, log);
	const fs::path out = ensure_out_dir(cfg);

	const fs::path obs_path = out / "observations.csv";
	write_observations_csv(obs_path, ds);
	std::size_t obs_rows = 0;
	for (const auto& [station, series] : ds.obs)
		obs_rows += series.size();
	log << "wrote " << obs_path.string() << " (" << obs_rows << " rows)\n";

	const fs::path fc_path = out / "forecasts.csv";
	write_forecasts_csv(fc_path, ds);
	std::size_t fc_rows = 0;
	for (const auto& [station, archives] : ds.forecasts)
		for (const auto& [src, archive] : archives)
			fc_rows += archive.values().size();
	log << "wrote " << fc_path.string() << " (" << fc_rows << " rows)\n";
}

void cmd_fit(const RunConfig& cfg, std::ostream& log) {
	const Dataset ds = build_dataset(cfg, log);
	const fs::path out = ensure_out_dir(cfg);
	const std::vector<EmosFit> fits = fit_full_dataset(cfg, ds, log);
	const fs::path fits_path = out / "fits.csv";
	write_fits_csv(fits_path, fits);
	log << "wrote " << fits_path.string() << " (" << fits.size() << " cells)\n";
}

ScoreTable run_verification(const RunConfig& cfg, const Dataset& ds, std::ostream& log) {
	const bool want_t1 = std::count(cfg.modes.begin(), cfg.modes.end(), "transition1") > 0;
	const bool want_t2 = std::count(cfg.modes.begin(), cfg.modes.end(), "transition2") > 0;
	const bool want_transitions = want_t1 || want_t2;
	const std::string without_label =
		"without_" + std::string(source_name(cfg.transition.source));

	std::vector<ModeSpec> specs;
	bool have_reference = false;
	for (const auto& label : cfg.modes) {
		const auto mode = PredictorMode::from_label(label);
		if (!mode)
			continue; // transitions are derived after the CV pass
		ModeSpec spec;
		spec.label = label;
		spec.mode = *mode;
		spec.comparable = mode->kind != PredictorMode::Kind::single;
		spec.cap_to_horizon = mode->kind == PredictorMode::Kind::single;
		specs.push_back(std::move(spec));
		have_reference = have_reference || label == "reference";
	}
	if (want_transitions) {
		if (!have_reference) {
			ModeSpec spec;
			spec.label = "reference";
			spec.mode = PredictorMode::reference();
			specs.push_back(std::move(spec));
			log << "note: transitions requested; reference mode added to the run\n";
		}
		ModeSpec without;
		without.label = without_label;
		without.mode = PredictorMode::reference();
		without.exclude = {cfg.transition.source};
		specs.push_back(std::move(without));
	}
	if (specs.empty())
		throw ConfigError("no runnable modes configured");

	const FoldSpec folds = make_configured_folds(cfg, ds);
	StationRuns runs = run_cv(ds, cfg.grid, specs, folds, {cfg.assemble, cfg.fit});

	if (want_transitions) {
		for (auto& [station, by_label] : runs) {
			const auto wit = by_label.find("reference");
			const auto nit = by_label.find(without_label);
			if (wit == by_label.end() || nit == by_label.end())
				continue;
			auto transitions =
				derive_transitions(wit->second, nit->second, cfg.grid, cfg.transition);
			if (want_t1)
				by_label["transition1"] = std::move(transitions.at("transition1"));
			if (want_t2)
				by_label["transition2"] = std::move(transitions.at("transition2"));
		}
		// The helper stream was only needed to derive the blends.
		for (auto& [station, by_label] : runs)
			by_label.erase(without_label);
	}

	return score_runs(runs);
}

void cmd_verify(const RunConfig& cfg, std::ostream& log) {
	const Dataset ds = build_dataset(cfg, log);
	const fs::path out = ensure_out_dir(cfg);
	const ScoreTable table = run_verification(cfg, ds, log);

	const fs::path scores_path = out / "scores.csv";
	write_scores_csv(scores_path, table);
	log << "wrote " << scores_path.string() << " (" << table.rows.size() << " rows)\n";
	const fs::path skill_path = out / "skill.csv";
	write_skill_csv(skill_path, table);
	log << "wrote " << skill_path.string() << " (" << table.skill.size() << " rows)\n";
	log << format_transition_summary(table);
}

void cmd_run(const RunConfig& cfg, std::ostream& log) {
	const Dataset ds = build_dataset(cfg, log);
	const fs::path out = ensure_out_dir(cfg);

	if (cfg.synth) {
		const fs::path obs_path = out / "observations.csv";
		write_observations_csv(obs_path, ds);
		const fs::path fc_path = out / "forecasts.csv";
		write_forecasts_csv(fc_path, ds);
		log << "wrote " << obs_path.string() << " and " << fc_path.string() << '\n';
	}

	// Full-data fits for the coefficient table; the CV pass below refits
	// per fold and never reuses these.
	{
		const std::vector<EmosFit> fits = fit_full_dataset(cfg, ds, log);
		const fs::path fits_path = out / "fits.csv";
		write_fits_csv(fits_path, fits);
		log << "wrote " << fits_path.string() << " (" << fits.size() << " cells)\n";
	}

	const ScoreTable table = run_verification(cfg, ds, log);
	const fs::path scores_path = out / "scores.csv";
	write_scores_csv(scores_path, table);
	log << "wrote " << scores_path.string() << " (" << table.rows.size() << " rows)\n";
	const fs::path skill_path = out / "skill.csv";
	write_skill_csv(skill_path, table);
	log << "wrote " << skill_path.string() << " (" << table.skill.size() << " rows)\n";
	log << format_transition_summary(table);

	// Charts are rendered from the CSVs just written, never from live
	// state, so plotting can always be reproduced from the files alone.
	render_charts(cfg, log);
}

void cmd_plot(const RunConfig& cfg, std::ostream& log) {
	render_charts(cfg, log);
}

} // namespace seampp
