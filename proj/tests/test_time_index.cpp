#include <catch2/catch_amalgamated.hpp>

#include "pvcast/synthetic.hpp"
#include "pvcast/time_index.hpp"

using namespace pvcast;

TEST_CASE("hour_of_day identity case") {
  CHECK(hour_of_day({0, 0}) == 1);
  CHECK(hour_of_day({48, 0}) == 1);
}

TEST_CASE("hour_of_day applies the site offset") {
  // epoch hour 20 of some day, offset -8: (20 - 8) mod 24 + 1 = 13
  CHECK(hour_of_day({20, -8}) == 13);
  CHECK(hour_of_day({24 * 1000 + 20, -8}) == 13);
}

TEST_CASE("hour_of_day is 24-periodic and always in 1..24") {
  PortableRng rng(11);
  for (int i = 0; i < 200; ++i) {
    auto epoch = static_cast<std::int64_t>(rng.next_raw() % 2000000) - 1000000;
    int offset = static_cast<int>(rng.next_raw() % 27) - 13;
    TimeIndex t{epoch, offset};
    int h = hour_of_day(t);
    CHECK(h >= 1);
    CHECK(h <= 24);
    CHECK(hour_of_day(t.plus_hours(24)) == h);
    CHECK(hour_of_day(t.plus_hours(-24)) == h);
  }
}

TEST_CASE("epoch reference points") {
  CHECK(epoch_hour_utc(1970, 1, 1, 0) == 0);
  CHECK(epoch_hour_utc(1970, 1, 2, 0) == 24);
  CHECK(epoch_hour_utc(1969, 12, 31, 23) == -1);
}

TEST_CASE("ISO hour parse/format round-trip") {
  const std::string iso = "2018-01-15T06:00:00Z";
  TimeIndex t = parse_iso_hour(iso);
  CHECK(t.epoch_hour == epoch_hour_utc(2018, 1, 15, 6));
  CHECK(format_iso_hour(t) == iso);

  PortableRng rng(3);
  for (int i = 0; i < 100; ++i) {
    TimeIndex u{static_cast<std::int64_t>(rng.next_raw() % 1000000), 0};
    CHECK(parse_iso_hour(format_iso_hour(u)).epoch_hour == u.epoch_hour);
  }
}

TEST_CASE("ISO hour parser rejects sub-hour and malformed stamps") {
  CHECK_THROWS_AS(parse_iso_hour("2018-01-15T06:30:00Z"), RowError);
  CHECK_THROWS_AS(parse_iso_hour("2018-01-15T06:00:30Z"), RowError);
  CHECK_THROWS_AS(parse_iso_hour("2018-01-15 06:00:00Z"), RowError);
  CHECK_THROWS_AS(parse_iso_hour("2018-13-15T06:00:00Z"), RowError);
  CHECK_THROWS_AS(parse_iso_hour("20180115T060000Z"), RowError);
  CHECK_THROWS_AS(parse_iso_hour(""), RowError);
}

TEST_CASE("date parsing") {
  CHECK(parse_iso_date("2018-01-15") == epoch_hour_utc(2018, 1, 15, 0));
  CHECK_THROWS_AS(parse_iso_date("2018/01/15"), ConfigError);
  CHECK_THROWS_AS(parse_iso_date("2018-1-15"), ConfigError);
}
