#include "seampp/csvio.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>

#include "seampp/errors.hpp"

namespace seampp {

int IngestOptions::horizon_for(Source s) const
{
	switch (s) {
		case Source::aro: return aro_horizon_h;
		case Source::det: return det_horizon_h;
		case Source::ens_mu: return ensmu_horizon_h;
	}
	return 0;
}

std::string format_double(double v)
{
	char buf[40];
	for (int prec = 15; prec <= 17; ++prec) {
		std::snprintf(buf, sizeof buf, "%.*g", prec, v);
		double back = 0.0;
		std::sscanf(buf, "%lf", &back);
		if (back == v)
			break;
	}
	return buf;
}

std::vector<std::string> split_csv_line(const std::string& line)
{
	std::vector<std::string> out;
	std::size_t start = 0;
	while (true) {
		const auto pos = line.find(',', start);
		if (pos == std::string::npos) {
			out.push_back(line.substr(start));
			break;
		}
		out.push_back(line.substr(start, pos - start));
		start = pos + 1;
	}
	return out;
}

namespace {

bool parse_double_field(const std::string& s, double& out)
{
	const auto* end = s.data() + s.size();
	const auto res = std::from_chars(s.data(), end, out);
	return res.ec == std::errc{} && res.ptr == end;
}

bool parse_int_field(const std::string& s, int& out)
{
	const auto* end = s.data() + s.size();
	const auto res = std::from_chars(s.data(), end, out);
	return res.ec == std::errc{} && res.ptr == end;
}

std::string strip_cr(std::string line)
{
	if (!line.empty() && line.back() == '\r')
		line.pop_back();
	return line;
}

void reject(IngestReport& rep, std::size_t line_no, const std::string& why)
{
	++rep.rejected;
	rep.diagnostics.push_back("line " + std::to_string(line_no) + ": " + why);
}

std::ifstream open_or_throw(const std::filesystem::path& path)
{
	std::ifstream in(path);
	if (!in)
		throw DataError("cannot open " + path.string());
	return in;
}

} // namespace

IngestReport read_observations_csv(const std::filesystem::path& path, Dataset& out)
{
	auto in = open_or_throw(path);
	IngestReport rep;
	std::string line;
	std::size_t line_no = 0;
	bool header_seen = false;
	while (std::getline(in, line)) {
		++line_no;
		line = strip_cr(line);
		if (line.empty())
			continue;
		if (!header_seen) {
			header_seen = true;
			if (line != "station,valid_time_utc,temp_c")
				throw DataError(path.string() + ": unexpected observations header '" + line + "'");
			continue;
		}
		const auto f = split_csv_line(line);
		if (f.size() != 3) {
			reject(rep, line_no, "expected 3 fields, got " + std::to_string(f.size()));
			continue;
		}
		if (f[0].empty()) {
			reject(rep, line_no, "empty station id");
			continue;
		}
		const auto t = parse_iso_hour(f[1]);
		if (!t) {
			reject(rep, line_no, "bad valid_time_utc '" + f[1] + "'");
			continue;
		}
		double temp = 0.0;
		if (!parse_double_field(f[2], temp)) {
			reject(rep, line_no, "bad temp_c '" + f[2] + "'");
			continue;
		}
		out.ensure_station(f[0]);
		auto [it, inserted] = out.obs.try_emplace(f[0], ObservationSeries(f[0]));
		(void)inserted;
		if (!it->second.insert(*t, temp)) {
			reject(rep, line_no, "temp_c " + f[2] + " outside plausible range");
			continue;
		}
		++rep.accepted;
	}
	return rep;
}

IngestReport read_forecasts_csv(const std::filesystem::path& path, Dataset& out, const IngestOptions& opts)
{
	auto in = open_or_throw(path);
	IngestReport rep;
	std::string line;
	std::size_t line_no = 0;
	bool header_seen = false;
	while (std::getline(in, line)) {
		++line_no;
		line = strip_cr(line);
		if (line.empty())
			continue;
		if (!header_seen) {
			header_seen = true;
			if (line != "station,source,init_time_utc,lead_h,temp_c")
				throw DataError(path.string() + ": unexpected forecasts header '" + line + "'");
			continue;
		}
		const auto f = split_csv_line(line);
		if (f.size() != 5) {
			reject(rep, line_no, "expected 5 fields, got " + std::to_string(f.size()));
			continue;
		}
		if (f[0].empty()) {
			reject(rep, line_no, "empty station id");
			continue;
		}
		const auto src = parse_source(f[1]);
		if (!src) {
			reject(rep, line_no, "unknown source '" + f[1] + "'");
			continue;
		}
		const auto raw_init = parse_iso_hour(f[2]);
		if (!raw_init) {
			reject(rep, line_no, "bad init_time_utc '" + f[2] + "'");
			continue;
		}
		int raw_lead = 0;
		if (!parse_int_field(f[3], raw_lead)) {
			reject(rep, line_no, "bad lead_h '" + f[3] + "'");
			continue;
		}
		double temp = 0.0;
		if (!parse_double_field(f[4], temp)) {
			reject(rep, line_no, "bad temp_c '" + f[4] + "'");
			continue;
		}
		const Timestamp init = valid_time(*raw_init, opts.init_offset_h);
		const int lead = raw_lead - opts.init_offset_h;

		out.ensure_station(f[0]);
		auto& by_source = out.forecasts[f[0]];
		auto [it, inserted] = by_source.try_emplace(*src, ForecastArchive(*src, opts.horizon_for(*src)));
		(void)inserted;
		switch (it->second.insert(init, lead, temp)) {
			case ForecastArchive::Insert::ok:
				++rep.accepted;
				break;
			case ForecastArchive::Insert::beyond_horizon:
				reject(rep, line_no,
				       "lead " + std::to_string(lead) + " beyond " + source_name(*src) + " horizon " +
				           std::to_string(it->second.horizon_h()));
				break;
			case ForecastArchive::Insert::negative_lead:
				reject(rep, line_no, "negative postprocessing lead " + std::to_string(lead));
				break;
			case ForecastArchive::Insert::init_hour_mismatch:
				reject(rep, line_no, "init hour differs from previously seen inits");
				break;
			case ForecastArchive::Insert::not_finite:
				reject(rep, line_no, "non-finite temp_c");
				break;
			case ForecastArchive::Insert::duplicate:
				reject(rep, line_no, "duplicate (init, lead) for this station/source");
				break;
		}
	}
	return rep;
}

void write_observations_csv(const std::filesystem::path& path, const Dataset& ds)
{
	std::ofstream outf(path);
	if (!outf)
		throw DataError("cannot write " + path.string());
	outf << "station,valid_time_utc,temp_c\n";
	for (const auto& [station, series] : ds.obs)
		for (const auto& [t, v] : series.values())
			outf << station << ',' << format_iso_hour(t) << ',' << format_double(v) << '\n';
}

void write_forecasts_csv(const std::filesystem::path& path, const Dataset& ds)
{
	std::ofstream outf(path);
	if (!outf)
		throw DataError("cannot write " + path.string());
	outf << "station,source,init_time_utc,lead_h,temp_c\n";
	for (const auto& [station, by_source] : ds.forecasts)
		for (const auto& [src, archive] : by_source)
			for (const auto& [key, v] : archive.values())
				outf << station << ',' << source_name(src) << ',' << format_iso_hour(key.first) << ','
				     << key.second << ',' << format_double(v) << '\n';
}

} // namespace seampp
