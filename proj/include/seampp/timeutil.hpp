#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace seampp {

// Calendar time at hourly resolution, UTC. Minutes and seconds are always zero
// by construction; the value counts whole hours since 1970-01-01T00:00Z.
struct Timestamp {
	std::int64_t hours = 0;

	auto operator<=>(const Timestamp&) const = default;
};

Timestamp make_timestamp(int year, unsigned month, unsigned day, int hour_utc);

// init shifted forward by lead_h hours (lead_h >= 0).
Timestamp valid_time(Timestamp init, int lead_h);

// 1-based ordinal day within the calendar year, 1..366.
int day_of_year(Timestamp t);

int hour_of_day(Timestamp t);
int year_of(Timestamp t);

struct CivilDate {
	int year = 1970;
	int month = 1;
	int day = 1;
};

CivilDate civil_date(Timestamp t);

// "YYYY-MM-DDTHH:00:00Z"
std::string format_iso_hour(Timestamp t);
std::optional<Timestamp> parse_iso_hour(std::string_view s);

// "YYYY-MM-DD" plus an explicit hour of day.
std::optional<Timestamp> parse_iso_date(std::string_view s, int hour_utc);

} // namespace seampp
