#include <doctest.h>

#include <seampp/datamodel.hpp>
#include <seampp/errors.hpp>

#include "helpers.hpp"

#include <cmath>

using namespace seampp;

TEST_CASE("standard grid is hourly to 84 then 3-hourly to 132") {
	const LeadTimeGrid grid = LeadTimeGrid::standard();
	CHECK(grid.leads_h.size() == 100);
	CHECK(grid.leads_h.front() == 1);
	CHECK(grid.leads_h.back() == 132);
	CHECK(grid.persistence_anchor_h == 0);

	for (std::size_t i = 1; i < grid.leads_h.size(); ++i)
		CHECK(grid.leads_h[i] > grid.leads_h[i - 1]);

	// Membership agrees with the two-segment rule for every integer lead.
	for (int lead = 1; lead <= 132; ++lead) {
		const bool expected = lead <= 84 || (lead - 84) % 3 == 0;
		CHECK(grid.contains(lead) == expected);
	}
	CHECK_FALSE(grid.contains(0));
	CHECK_FALSE(grid.contains(133));
	CHECK_FALSE(grid.contains(-5));
}

TEST_CASE("grid index_of counts grid positions") {
	const LeadTimeGrid grid = LeadTimeGrid::standard();
	CHECK(grid.index_of(1) == 0);
	CHECK(grid.index_of(84) == 83);
	CHECK(grid.index_of(87) == 84);
	CHECK(grid.index_of(132) == 99);
	CHECK_FALSE(grid.index_of(85).has_value());
	CHECK_FALSE(grid.index_of(0).has_value());
}

TEST_CASE("grid construction validates its parameters") {
	CHECK_THROWS_AS(LeadTimeGrid::make(0, 3, 132), DataError);
	CHECK_THROWS_AS(LeadTimeGrid::make(84, 0, 132), DataError);
	CHECK_THROWS_AS(LeadTimeGrid::make(84, 3, 60), DataError);
	const LeadTimeGrid g = LeadTimeGrid::make(6, 3, 12);
	CHECK(g.leads_h == std::vector<int>{1, 2, 3, 4, 5, 6, 9, 12});
}

TEST_CASE("observation series screens implausible temperatures") {
	ObservationSeries obs("st");
	const Timestamp t = make_timestamp(2021, 7, 1, 12);
	CHECK(obs.insert(t, 18.2));
	CHECK(obs.at(t) == 18.2);
	CHECK_FALSE(obs.insert({t.hours + 1}, -90.5));
	CHECK_FALSE(obs.insert({t.hours + 2}, 60.5));
	CHECK(obs.insert({t.hours + 3}, -89.9));
	CHECK(obs.insert({t.hours + 4}, 59.9));
	CHECK_FALSE(obs.at({t.hours + 1}).has_value());
	CHECK(obs.size() == 3);
	CHECK(obs.station() == "st");
}

TEST_CASE("forecast archive rejects invalid inserts") {
	ForecastArchive archive(Source::aro, 36);
	const Timestamp init = make_timestamp(2021, 7, 1, 12);

	CHECK(archive.insert(init, 1, 15.0) == ForecastArchive::Insert::ok);
	CHECK(archive.insert(init, 36, 14.0) == ForecastArchive::Insert::ok);
	CHECK(archive.insert(init, 37, 14.0) == ForecastArchive::Insert::beyond_horizon);
	CHECK(archive.insert(init, -1, 14.0) == ForecastArchive::Insert::negative_lead);
	CHECK(archive.insert(init, 1, 16.0) == ForecastArchive::Insert::duplicate);
	CHECK(archive.insert({init.hours + 24}, 2, std::nan("")) == ForecastArchive::Insert::not_finite);

	// All inits must share the first init's hour of day.
	CHECK(archive.insert({init.hours + 25}, 2, 14.0) == ForecastArchive::Insert::init_hour_mismatch);
	CHECK(archive.insert({init.hours + 24}, 2, 14.0) == ForecastArchive::Insert::ok);

	CHECK(archive.at(init, 1) == 15.0);
	CHECK_FALSE(archive.at(init, 2).has_value());
	CHECK(archive.source() == Source::aro);
	CHECK(archive.horizon_h() == 36);
	REQUIRE(archive.init_hour().has_value());
	CHECK(*archive.init_hour() == 12);
	CHECK(archive.init_times() == std::vector<Timestamp>{init, {init.hours + 24}});
}

TEST_CASE("dataset init_times is the sorted union across stations and sources") {
	Dataset ds;
	ds.ensure_station("a");
	ds.ensure_station("b", Archetype::valley);
	ds.ensure_station("a"); // idempotent
	CHECK(ds.stations.size() == 2);
	REQUIRE(ds.find_station("b") != nullptr);
	CHECK(ds.find_station("b")->archetype == Archetype::valley);
	CHECK(ds.find_station("missing") == nullptr);

	const Timestamp i0 = make_timestamp(2021, 7, 1, 12);
	const Timestamp i1{i0.hours + 24};
	const Timestamp i2{i0.hours + 48};
	ForecastArchive fa(Source::aro, 36);
	fa.insert(i1, 1, 10.0);
	ForecastArchive fb(Source::det, 84);
	fb.insert(i0, 1, 10.0);
	fb.insert(i2, 1, 10.0);
	ds.forecasts["a"].emplace(Source::aro, std::move(fa));
	ds.forecasts["b"].emplace(Source::det, std::move(fb));

	CHECK(ds.init_times() == std::vector<Timestamp>{i0, i1, i2});
}

TEST_CASE("source and archetype names round-trip") {
	for (const Source s : kAllSources) {
		const auto parsed = parse_source(source_name(s));
		REQUIRE(parsed.has_value());
		CHECK(*parsed == s);
	}
	CHECK_FALSE(parse_source("ecmwf").has_value());
	for (const Archetype a : {Archetype::plain, Archetype::valley, Archetype::mountain}) {
		const auto parsed = parse_archetype(archetype_name(a));
		REQUIRE(parsed.has_value());
		CHECK(*parsed == a);
	}
	CHECK_FALSE(parse_archetype("coastal").has_value());
}

TEST_CASE("default horizons follow the source cutoffs") {
	CHECK(source_default_horizon(Source::aro) == 36);
	CHECK(source_default_horizon(Source::det) == 84);
	CHECK(source_default_horizon(Source::ens_mu) == 132);
}
