#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "seampp/datamodel.hpp"

namespace seampp {

// Which predictors enter the regression.
//
// persistence: every model at its latest available lead plus the +0 h
//              observation, so the predictor set is the same at every lead.
// reference:   only models whose horizon covers the lead, no persistence;
//              predictors drop out as horizons are passed.
// single:      one model plus the seasonal terms, capped at its horizon.
struct PredictorMode {
	enum class Kind { persistence, reference, single };

	Kind kind = Kind::persistence;
	std::optional<Source> source; // set iff kind == single

	static PredictorMode persistence() { return {Kind::persistence, std::nullopt}; }
	static PredictorMode reference() { return {Kind::reference, std::nullopt}; }
	static PredictorMode single(Source s) { return {Kind::single, s}; }

	std::string label() const;
	static std::optional<PredictorMode> from_label(std::string_view s);

	bool operator==(const PredictorMode&) const = default;
};

// Canonical column order shared by every design matrix and fit.
inline constexpr std::array<const char*, 9> kCanonicalColumns{
    "intercept", "pers", "aro", "det", "ens_mu", "sin1", "cos1", "sin2", "cos2"};

std::string source_column(Source s);

// sin/cos of one and two cycles per year, evaluated with the fixed 365-day
// divisor. doy must be in 1..366 (a leap-year day 366 slightly overshoots one
// period).
std::array<double, 4> seasonal_basis(int doy);

// The latest lead a source can serve: its own value up to the horizon, the
// frozen horizon value afterwards.
int effective_lead(int requested_lead_h, int horizon_h);

// The +0 h observation used as the persistence predictor for every lead of
// this init; absent observations propagate as dropped rows.
std::optional<double> observation_persistence(Timestamp init, const ObservationSeries& obs);

struct AssembleOptions {
	// Minimum surviving rows for a training design; complete-case dropping
	// below this aborts the cell.
	std::size_t min_rows = 100;
	// Leads beyond this exclude the pers column from persistence mode.
	int pers_max_lead_h = 132;
};

// Named predictor columns x training rows, plus the target vector. Rows that
// miss any required value are dropped before construction, so columns never
// contain gaps. Row order follows init time, ascending.
struct DesignMatrix {
	std::string station;
	int lead_h = 0;
	std::vector<std::string> columns;
	std::vector<std::vector<double>> cols; // column-major, aligned with `columns`
	std::vector<double> target;
	std::vector<Timestamp> inits;

	std::size_t n_rows() const { return target.size(); }
	std::size_t n_cols() const { return columns.size(); }
	std::optional<std::size_t> column_index(std::string_view name) const;
};

DesignMatrix assemble(const std::string& station, int lead_h, PredictorMode mode, const LeadTimeGrid& grid,
                      const ObservationSeries& obs, const std::vector<const ForecastArchive*>& archives,
                      const std::vector<Timestamp>& train_inits, const AssembleOptions& opts = {});

// Rows restricted to the given inits (which must be sorted ascending).
DesignMatrix restrict_rows(const DesignMatrix& dm, const std::vector<Timestamp>& keep);

// Debug dump, one row per init, columns in canonical order.
void write_design_csv(const std::filesystem::path& path, const DesignMatrix& dm);

} // namespace seampp
