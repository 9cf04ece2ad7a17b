#pragma once

#include <seampp/verification.hpp>

#include <string>
#include <vector>

namespace seampp {

/// One polyline of a chart.
struct ChartSeries {
	std::string label;
	std::vector<std::pair<double, double>> points; // (x, y), sorted by x
	std::string color = "#000000";
	bool dashed = false;
	double width = 1.6;
};

/// One panel of a chart: a titled coordinate box with its own y scaling.
struct ChartPanel {
	std::string title;
	std::vector<ChartSeries> series;
	std::vector<double> vlines;  // vertical marker positions in x units
	bool zero_line = false;      // draw a horizontal rule at y = 0
};

struct ChartOptions {
	int width = 960;
	int panel_height = 280;
	std::string x_label;
	std::string y_label;
};

/// Fixed per-mode palette so every chart colors a mode the same way.
/// Unknown labels get a neutral fallback.
ChartSeries styled_series(const std::string& mode_label);

/// Render stacked panels that share the x axis into a complete SVG
/// document.  Pure function of its inputs.
std::string render_chart(const std::vector<ChartPanel>& panels, const ChartOptions& opts);

/// MAE against lead, one panel per station in the table (pooled rows
/// last), one polyline per mode, with vertical markers at the given
/// leads.
std::string render_mae_chart(const ScoreTable& table, const std::vector<int>& marker_leads);

/// Skill of the persistence run against the reference, plus the
/// transition baselines' skill recomputed from the MAE rows; single
/// panel.  Uses the pooled station when several are present.  Returns an
/// empty string when the table has no skill rows to draw.
std::string render_skill_chart(const ScoreTable& table, const std::vector<int>& marker_leads);

} // namespace seampp
