#pragma once

#include <seampp/config.hpp>
#include <seampp/verification.hpp>

#include <iosfwd>

namespace seampp {

/// Materialize the configured dataset: generate the synthetic stations or
/// ingest the configured CSVs (logging per-file ingest diagnostics).
Dataset build_dataset(const RunConfig& cfg, std::ostream& log);

/// Write the dataset CSVs into cfg.out_dir.  Requires a synth config.
void cmd_synth(const RunConfig& cfg, std::ostream& log);

/// Fit every (station, mode, lead) cell on the full dataset and write
/// fits.csv.  Transition labels are skipped: they blend predictions and
/// have no fitted coefficients of their own.
void cmd_fit(const RunConfig& cfg, std::ostream& log);

/// Cross-validate the configured modes and write scores.csv + skill.csv,
/// printing the transition summary.
void cmd_verify(const RunConfig& cfg, std::ostream& log);

/// Full pipeline: dataset (+ CSVs when synthetic), fits, verification
/// tables, and the two SVG charts rendered from the freshly written
/// score CSVs.
void cmd_run(const RunConfig& cfg, std::ostream& log);

/// Re-render the charts from score CSVs already in cfg.out_dir.
void cmd_plot(const RunConfig& cfg, std::ostream& log);

/// Shared helper for cmd_verify/cmd_run: runs the CV engine for
/// cfg.modes, derives any requested transition baselines, and scores the
/// result.
ScoreTable run_verification(const RunConfig& cfg, const Dataset& ds, std::ostream& log);

} // namespace seampp
