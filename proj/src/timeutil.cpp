#include "seampp/timeutil.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>

namespace seampp {

namespace {

namespace chr = std::chrono;

chr::sys_days to_sys_days(Timestamp t)
{
	const auto day = t.hours >= 0 ? t.hours / 24 : (t.hours - 23) / 24;
	return chr::sys_days{chr::days{day}};
}

} // namespace

Timestamp make_timestamp(int year, unsigned month, unsigned day, int hour_utc)
{
	const chr::sys_days sd{chr::year{year} / chr::month{month} / chr::day{day}};
	return Timestamp{sd.time_since_epoch().count() * std::int64_t{24} + hour_utc};
}

Timestamp valid_time(Timestamp init, int lead_h)
{
	return Timestamp{init.hours + lead_h};
}

int day_of_year(Timestamp t)
{
	const auto sd = to_sys_days(t);
	const chr::year_month_day ymd{sd};
	const chr::sys_days jan1{ymd.year() / chr::January / chr::day{1}};
	return static_cast<int>((sd - jan1).count()) + 1;
}

int hour_of_day(Timestamp t)
{
	const auto h = t.hours % 24;
	return static_cast<int>(h >= 0 ? h : h + 24);
}

int year_of(Timestamp t)
{
	const chr::year_month_day ymd{to_sys_days(t)};
	return static_cast<int>(ymd.year());
}

CivilDate civil_date(Timestamp t)
{
	const chr::year_month_day ymd{to_sys_days(t)};
	return {static_cast<int>(ymd.year()), static_cast<int>(static_cast<unsigned>(ymd.month())),
	        static_cast<int>(static_cast<unsigned>(ymd.day()))};
}

std::string format_iso_hour(Timestamp t)
{
	const chr::year_month_day ymd{to_sys_days(t)};
	char buf[32];
	std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:00:00Z", static_cast<int>(ymd.year()),
	              static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), hour_of_day(t));
	return buf;
}

namespace {

bool parse_int(std::string_view s, int& out)
{
	const auto* end = s.data() + s.size();
	const auto res = std::from_chars(s.data(), end, out);
	return res.ec == std::errc{} && res.ptr == end;
}

bool parse_ymd(std::string_view s, int& y, int& m, int& d)
{
	// "YYYY-MM-DD"
	if (s.size() != 10 || s[4] != '-' || s[7] != '-')
		return false;
	if (!parse_int(s.substr(0, 4), y) || !parse_int(s.substr(5, 2), m) || !parse_int(s.substr(8, 2), d))
		return false;
	if (m < 1 || m > 12 || d < 1 || d > 31)
		return false;
	const std::chrono::year_month_day ymd{std::chrono::year{y} / std::chrono::month{static_cast<unsigned>(m)} /
	                                      std::chrono::day{static_cast<unsigned>(d)}};
	return ymd.ok();
}

} // namespace

std::optional<Timestamp> parse_iso_hour(std::string_view s)
{
	// "YYYY-MM-DDTHH:00:00Z", strictly on the hour
	if (s.size() != 20 || s[10] != 'T' || s[19] != 'Z')
		return std::nullopt;
	if (s.substr(13, 6) != ":00:00")
		return std::nullopt;
	int y = 0, m = 0, d = 0, hh = 0;
	if (!parse_ymd(s.substr(0, 10), y, m, d))
		return std::nullopt;
	if (!parse_int(s.substr(11, 2), hh) || hh < 0 || hh > 23)
		return std::nullopt;
	return make_timestamp(y, static_cast<unsigned>(m), static_cast<unsigned>(d), hh);
}

std::optional<Timestamp> parse_iso_date(std::string_view s, int hour_utc)
{
	int y = 0, m = 0, d = 0;
	if (!parse_ymd(s, y, m, d) || hour_utc < 0 || hour_utc > 23)
		return std::nullopt;
	return make_timestamp(y, static_cast<unsigned>(m), static_cast<unsigned>(d), hour_utc);
}

} // namespace seampp
