#include <seampp/svgplot.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace seampp {

namespace {

constexpr double kMarginLeft = 64.0;
constexpr double kMarginRight = 18.0;
constexpr double kMarginTop = 34.0;
constexpr double kMarginBottom = 30.0;
constexpr double kLegendHeight = 24.0;
constexpr double kAxisLabelGap = 44.0;

std::string fmt(double v) {
	char buf[48];
	std::snprintf(buf, sizeof buf, "%g", v);
	return buf;
}

std::string escape(const std::string& s) {
	std::string out;
	for (const char c : s) {
		switch (c) {
		case '&': out += "&amp;"; break;
		case '<': out += "&lt;"; break;
		case '>': out += "&gt;"; break;
		default: out += c;
		}
	}
	return out;
}

// Tick step of the form {1, 2, 5} * 10^k giving roughly `target` ticks.
double nice_step(double span, int target) {
	if (!(span > 0.0))
		return 1.0;
	const double raw = span / target;
	const double mag = std::pow(10.0, std::floor(std::log10(raw)));
	for (const double m : {1.0, 2.0, 5.0, 10.0}) {
		if (m * mag >= raw)
			return m * mag;
	}
	return 10.0 * mag;
}

std::vector<double> ticks_for(double lo, double hi, int target) {
	const double step = nice_step(hi - lo, target);
	std::vector<double> ticks;
	double t = std::ceil(lo / step) * step;
	for (; t <= hi + step * 1e-9; t += step)
		ticks.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
	return ticks;
}

struct Scale {
	double lo = 0.0, hi = 1.0, px0 = 0.0, px1 = 1.0;

	double operator()(double v) const {
		return px0 + (v - lo) / (hi - lo) * (px1 - px0);
	}
};

} // namespace

ChartSeries styled_series(const std::string& mode_label) {
	ChartSeries s;
	s.label = mode_label;
	if (mode_label == "persistence") {
		s.color = "#000000";
		s.width = 2.0;
	} else if (mode_label == "reference") {
		s.color = "#888888";
		s.width = 2.0;
	} else if (mode_label == "single_aro") {
		s.color = "#1f77b4";
	} else if (mode_label == "single_det") {
		s.color = "#d62728";
	} else if (mode_label == "single_ensmu") {
		s.color = "#2ca02c";
	} else if (mode_label == "transition1") {
		s.color = "#9467bd";
		s.dashed = true;
	} else if (mode_label == "transition2") {
		s.color = "#8c564b";
		s.dashed = true;
	} else {
		s.color = "#bbaa33";
	}
	return s;
}

std::string render_chart(const std::vector<ChartPanel>& panels, const ChartOptions& opts) {
	// Shared x range and legend across panels.
	double xlo = std::numeric_limits<double>::infinity();
	double xhi = -xlo;
	std::vector<const ChartSeries*> legend;
	std::set<std::string> seen;
	for (const auto& p : panels) {
		for (const auto& s : p.series) {
			for (const auto& [x, y] : s.points) {
				(void)y;
				xlo = std::min(xlo, x);
				xhi = std::max(xhi, x);
			}
			if (seen.insert(s.label).second)
				legend.push_back(&s);
		}
	}
	if (!(xlo < xhi)) {
		xlo = 0.0;
		xhi = 1.0;
	}

	const double total_height = kMarginTop + kLegendHeight
		+ panels.size() * (opts.panel_height + kMarginBottom);
	std::ostringstream svg;
	svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << opts.width << ' '
	    << fmt(total_height) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
	svg << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

	// Legend row at the top.
	{
		double lx = kMarginLeft;
		const double ly = kMarginTop - 10.0;
		for (const auto* s : legend) {
			svg << "<line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(ly) << "\" x2=\"" << fmt(lx + 22)
			    << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << s->color << "\" stroke-width=\""
			    << fmt(s->width) << '"' << (s->dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
			svg << "<text x=\"" << fmt(lx + 26) << "\" y=\"" << fmt(ly + 4) << "\">"
			    << escape(s->label) << "</text>\n";
			lx += 34.0 + 7.2 * s->label.size();
		}
	}

	double top = kMarginTop + kLegendHeight;
	for (const auto& panel : panels) {
		double ylo = std::numeric_limits<double>::infinity();
		double yhi = -ylo;
		for (const auto& s : panel.series) {
			for (const auto& [x, y] : s.points) {
				(void)x;
				ylo = std::min(ylo, y);
				yhi = std::max(yhi, y);
			}
		}
		if (!(ylo < yhi)) {
			ylo = ylo < yhi ? ylo : 0.0;
			yhi = ylo + 1.0;
		}
		if (panel.zero_line) {
			ylo = std::min(ylo, 0.0);
			yhi = std::max(yhi, 0.0);
		}
		const double pad = 0.05 * (yhi - ylo);
		ylo -= pad;
		yhi += pad;

		const Scale sx{xlo, xhi, kMarginLeft, opts.width - kMarginRight};
		const Scale sy{ylo, yhi, top + opts.panel_height, top}; // y grows upward

		svg << "<text x=\"" << fmt(kMarginLeft) << "\" y=\"" << fmt(top - 6) << "\" font-weight=\"bold\">"
		    << escape(panel.title) << "</text>\n";
		svg << "<rect x=\"" << fmt(kMarginLeft) << "\" y=\"" << fmt(top) << "\" width=\""
		    << fmt(opts.width - kMarginLeft - kMarginRight) << "\" height=\"" << fmt(opts.panel_height)
		    << "\" fill=\"none\" stroke=\"#444444\"/>\n";

		for (const double t : ticks_for(xlo, xhi, 10)) {
			const double px = sx(t);
			svg << "<line x1=\"" << fmt(px) << "\" y1=\"" << fmt(top) << "\" x2=\"" << fmt(px)
			    << "\" y2=\"" << fmt(top + opts.panel_height)
			    << "\" stroke=\"#eeeeee\"/>\n";
			svg << "<text x=\"" << fmt(px) << "\" y=\"" << fmt(top + opts.panel_height + 16)
			    << "\" text-anchor=\"middle\">" << fmt(t) << "</text>\n";
		}
		for (const double t : ticks_for(ylo, yhi, 6)) {
			const double py = sy(t);
			svg << "<line x1=\"" << fmt(kMarginLeft) << "\" y1=\"" << fmt(py) << "\" x2=\""
			    << fmt(opts.width - kMarginRight) << "\" y2=\"" << fmt(py)
			    << "\" stroke=\"#eeeeee\"/>\n";
			svg << "<text x=\"" << fmt(kMarginLeft - 8) << "\" y=\"" << fmt(py + 4)
			    << "\" text-anchor=\"end\">" << fmt(t) << "</text>\n";
		}

		for (const double v : panel.vlines) {
			if (v < xlo || v > xhi)
				continue;
			const double px = sx(v);
			svg << "<line x1=\"" << fmt(px) << "\" y1=\"" << fmt(top) << "\" x2=\"" << fmt(px)
			    << "\" y2=\"" << fmt(top + opts.panel_height)
			    << "\" stroke=\"#999999\" stroke-dasharray=\"3 3\"/>\n";
		}
		if (panel.zero_line && ylo < 0.0 && yhi > 0.0) {
			const double py = sy(0.0);
			svg << "<line x1=\"" << fmt(kMarginLeft) << "\" y1=\"" << fmt(py) << "\" x2=\""
			    << fmt(opts.width - kMarginRight) << "\" y2=\"" << fmt(py)
			    << "\" stroke=\"#bbbbbb\"/>\n";
		}

		for (const auto& s : panel.series) {
			if (s.points.empty())
				continue;
			svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\""
			    << fmt(s.width) << '"' << (s.dashed ? " stroke-dasharray=\"6 4\"" : "")
			    << " points=\"";
			for (const auto& [x, y] : s.points)
				svg << fmt(sx(x)) << ',' << fmt(sy(y)) << ' ';
			svg << "\"/>\n";
		}

		// Per-panel y label, rotated.
		if (!opts.y_label.empty()) {
			const double py = top + opts.panel_height / 2.0;
			svg << "<text x=\"" << fmt(kMarginLeft - kAxisLabelGap) << "\" y=\"" << fmt(py)
			    << "\" transform=\"rotate(-90 " << fmt(kMarginLeft - kAxisLabelGap) << ' ' << fmt(py)
			    << ")\" text-anchor=\"middle\">" << escape(opts.y_label) << "</text>\n";
		}

		top += opts.panel_height + kMarginBottom;
	}

	if (!opts.x_label.empty())
		svg << "<text x=\"" << fmt((kMarginLeft + opts.width - kMarginRight) / 2.0) << "\" y=\""
		    << fmt(total_height - 4) << "\" text-anchor=\"middle\">" << escape(opts.x_label)
		    << "</text>\n";
	svg << "</svg>\n";
	return svg.str();
}

namespace {

const std::vector<std::string>& canonical_mode_order() {
	static const std::vector<std::string> order{
		"persistence", "reference", "single_aro", "single_det", "single_ensmu",
		"transition1", "transition2"};
	return order;
}

std::vector<std::string> stations_in(const ScoreTable& table) {
	std::vector<std::string> stations;
	std::set<std::string> seen;
	for (const auto& r : table.rows)
		if (r.station != "all_pooled" && seen.insert(r.station).second)
			stations.push_back(r.station);
	std::sort(stations.begin(), stations.end());
	for (const auto& r : table.rows)
		if (r.station == "all_pooled" && seen.insert(r.station).second)
			stations.push_back(r.station);
	return stations;
}

} // namespace

std::string render_mae_chart(const ScoreTable& table, const std::vector<int>& marker_leads) {
	// station -> mode -> (lead, mae)
	std::map<std::string, std::map<std::string, std::map<int, double>>> by_station;
	for (const auto& r : table.rows)
		by_station[r.station][r.mode][r.lead_h] = r.mae;

	std::vector<ChartPanel> panels;
	for (const auto& station : stations_in(table)) {
		ChartPanel panel;
		panel.title = station;
		for (const double v : marker_leads)
			panel.vlines.push_back(v);
		const auto& modes = by_station.at(station);
		for (const auto& label : canonical_mode_order()) {
			const auto mit = modes.find(label);
			if (mit == modes.end())
				continue;
			ChartSeries s = styled_series(label);
			for (const auto& [lead, value] : mit->second)
				s.points.emplace_back(lead, value);
			panel.series.push_back(std::move(s));
		}
		panels.push_back(std::move(panel));
	}

	ChartOptions opts;
	opts.x_label = "lead time (h)";
	opts.y_label = "MAE (degC)";
	return render_chart(panels, opts);
}

std::string render_skill_chart(const ScoreTable& table, const std::vector<int>& marker_leads) {
	if (table.skill.empty())
		return {};

	// Prefer the pooled station for the headline curves.
	std::string station;
	for (const auto& s : table.skill)
		if (s.station == "all_pooled")
			station = s.station;
	if (station.empty()) {
		std::set<std::string> stations;
		for (const auto& s : table.skill)
			if (s.station != "all_mean")
				stations.insert(s.station);
		if (stations.empty())
			return {};
		station = *stations.begin();
	}

	ChartPanel panel;
	panel.title = "skill vs " + table.skill.front().reference_mode + " (" + station + ")";
	panel.zero_line = true;
	for (const double v : marker_leads)
		panel.vlines.push_back(v);

	ChartSeries pers = styled_series("persistence");
	for (const auto& s : table.skill)
		if (s.station == station)
			pers.points.emplace_back(s.lead_h, s.skill_pct);
	std::sort(pers.points.begin(), pers.points.end());
	panel.series.push_back(std::move(pers));

	// Transition curves, recomputed from the MAE rows against the same
	// reference; a display-only view of the stored scores.
	const std::string reference = table.skill.front().reference_mode;
	std::map<std::string, std::map<int, double>> mae_rows;
	for (const auto& r : table.rows)
		if (r.station == station)
			mae_rows[r.mode][r.lead_h] = r.mae;
	const auto rit = mae_rows.find(reference);
	if (rit != mae_rows.end()) {
		for (const std::string label : {"transition1", "transition2"}) {
			const auto mit = mae_rows.find(label);
			if (mit == mae_rows.end())
				continue;
			ChartSeries s = styled_series(label);
			for (const auto& [lead, value] : mit->second) {
				const auto ref = rit->second.find(lead);
				if (ref == rit->second.end() || !(ref->second > 0.0))
					continue;
				s.points.emplace_back(lead, skill_score(value, ref->second));
			}
			panel.series.push_back(std::move(s));
		}
	}

	// The averaged all-station curve as context when present.
	ChartSeries mean;
	mean.label = "persistence (all_mean)";
	mean.color = "#555555";
	mean.dashed = true;
	mean.width = 1.2;
	for (const auto& s : table.skill)
		if (s.station == "all_mean")
			mean.points.emplace_back(s.lead_h, s.skill_pct);
	std::sort(mean.points.begin(), mean.points.end());
	if (!mean.points.empty() && station != "all_mean")
		panel.series.push_back(std::move(mean));

	ChartOptions opts;
	opts.x_label = "lead time (h)";
	opts.y_label = "skill (%)";
	return render_chart({panel}, opts);
}

} // namespace seampp
