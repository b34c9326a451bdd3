#include <catch2/catch_amalgamated.hpp>
#include <set>

#include "helpers.hpp"
#include "pvcast/dataset.hpp"
#include "pvcast/point_csv.hpp"
#include "pvcast/synthetic.hpp"

using namespace pvcast;

namespace {

const char* kGoodCsv =
    "valid_time_utc,issued_time_utc,lead_hours,dswrf_wm2,t2m_k,wind10_ms\n"
    "2018-01-15T06:00:00Z,2018-01-15T06:00:00Z,0,0,281.5,3.2\n"
    "2018-01-16T00:00:00Z,2018-01-15T06:00:00Z,18,120.5,282,4\n"
    "2018-01-15T07:00:00Z,2018-01-15T07:00:00Z,0,5.5,281.7,3\n";

}  // namespace

TEST_CASE("well-formed file parses to one record per row") {
  testutil::TempDir dir("csv_ok");
  testutil::spit(dir / "a.csv", kGoodCsv);
  auto records = parse_point_csv(dir / "a.csv");
  REQUIRE(records.size() == 3);
  CHECK(records[1].lead_hours == 18);
  CHECK(records[1].sample.irradiance == 120.5);
  CHECK(records[1].valid_at.epoch_hour - records[1].issued_at.epoch_hour == 18);
}

TEST_CASE("negative irradiance is rejected naming the row") {
  testutil::TempDir dir("csv_neg");
  testutil::spit(dir / "bad.csv",
                 "valid_time_utc,issued_time_utc,lead_hours,dswrf_wm2,t2m_k,wind10_ms\n"
                 "2018-01-15T06:00:00Z,2018-01-15T06:00:00Z,0,10,281.5,3.2\n"
                 "2018-01-15T07:00:00Z,2018-01-15T07:00:00Z,0,-4,281.5,3.2\n");
  try {
    parse_point_csv(dir / "bad.csv");
    FAIL("expected RowError");
  } catch (const RowError& e) {
    CHECK(std::string(e.what()).find("row 3") != std::string::npos);
  }
}

TEST_CASE("non-canonical units in the header are a schema violation") {
  testutil::TempDir dir("csv_units");
  testutil::spit(dir / "kmh.csv",
                 "valid_time_utc,issued_time_utc,lead_hours,dswrf_wm2,t2m_k,wind10_kmh\n"
                 "2018-01-15T06:00:00Z,2018-01-15T06:00:00Z,0,10,281.5,3.2\n");
  CHECK_THROWS_AS(parse_point_csv(dir / "kmh.csv"), SchemaError);
  testutil::spit(dir / "empty.csv", "");
  CHECK_THROWS_AS(parse_point_csv(dir / "empty.csv"), SchemaError);
  CHECK_THROWS_AS(parse_point_csv(dir / "nope.csv"), IoError);
}

TEST_CASE("inconsistent lead or sub-hour stamps are row errors") {
  testutil::TempDir dir("csv_rows");
  testutil::spit(dir / "lead.csv",
                 "valid_time_utc,issued_time_utc,lead_hours,dswrf_wm2,t2m_k,wind10_ms\n"
                 "2018-01-16T01:00:00Z,2018-01-15T06:00:00Z,18,120.5,282,4\n");
  CHECK_THROWS_AS(parse_point_csv(dir / "lead.csv"), RowError);

  testutil::spit(dir / "lead19.csv",
                 "valid_time_utc,issued_time_utc,lead_hours,dswrf_wm2,t2m_k,wind10_ms\n"
                 "2018-01-16T01:00:00Z,2018-01-15T06:00:00Z,19,120.5,282,4\n");
  CHECK_THROWS_AS(parse_point_csv(dir / "lead19.csv"), RowError);

  testutil::spit(dir / "minutes.csv",
                 "valid_time_utc,issued_time_utc,lead_hours,dswrf_wm2,t2m_k,wind10_ms\n"
                 "2018-01-15T06:30:00Z,2018-01-15T06:30:00Z,0,120.5,282,4\n");
  CHECK_THROWS_AS(parse_point_csv(dir / "minutes.csv"), RowError);

  testutil::spit(dir / "fields.csv",
                 "valid_time_utc,issued_time_utc,lead_hours,dswrf_wm2,t2m_k,wind10_ms\n"
                 "2018-01-15T06:00:00Z,2018-01-15T06:00:00Z,0,120.5,282\n");
  CHECK_THROWS_AS(parse_point_csv(dir / "fields.csv"), RowError);
}

TEST_CASE("build_dataset separates measurements from forecasts") {
  auto t = parse_iso_hour("2018-01-15T06:00:00Z");
  std::vector<ForecastRecord> records{
      {t, 0, t, {10.0, 281.0, 3.0}},
      {t, 18, t.plus_hours(18), {20.0, 282.0, 4.0}},
  };
  DatasetBuild build = build_dataset(records, "moffett");
  CHECK(build.dataset.site_id == "moffett");
  CHECK(build.dataset.measurements.size() == 1);
  CHECK(build.dataset.forecasts.size() == 2);
  CHECK(build.duplicates_dropped == 0);
  CHECK(build.dataset.measurements.at(t).irradiance == 10.0);
}

TEST_CASE("duplicate cycle keys resolve last-write-wins with a count") {
  auto t = parse_iso_hour("2018-01-15T06:00:00Z");
  std::vector<ForecastRecord> records{
      {t, 0, t, {10.0, 281.0, 3.0}},
      {t, 0, t, {11.0, 281.5, 3.1}},
  };
  DatasetBuild build = build_dataset(records);
  CHECK(build.duplicates_dropped == 1);
  REQUIRE(build.dataset.forecasts.size() == 1);
  CHECK(build.dataset.measurements.at(t).irradiance == 11.0);
}

TEST_CASE("build_dataset on no records reports EmptyInput") {
  CHECK_THROWS_AS(build_dataset({}), EmptyInputError);
}

TEST_CASE("measurement count equals distinct lead-0 valid times") {
  SyntheticConfig cfg;
  cfg.days = 5;
  cfg.seed = 31;
  Dataset ds = generate(cfg);
  std::set<std::int64_t> lead0;
  for (const auto& f : ds.forecasts) {
    if (f.lead_hours == 0) lead0.insert(f.valid_at.epoch_hour);
  }
  CHECK(ds.measurements.size() == lead0.size());
  CHECK(lead0.size() == 5 * 24);
}

TEST_CASE("measurement stream is value-identical to the lead-0 stream") {
  SyntheticConfig cfg;
  cfg.days = 4;
  cfg.seed = 17;
  cfg.set_sigma(Variable::wind, 0.5);
  Dataset ds = generate(cfg);
  for (const auto& f : ds.forecasts) {
    if (f.lead_hours == 0) {
      REQUIRE(ds.measurements.count(f.valid_at) == 1);
      CHECK(ds.measurements.at(f.valid_at) == f.sample);
    }
  }
}

TEST_CASE("canonical CSV round-trips a dataset exactly") {
  SyntheticConfig cfg;
  cfg.days = 4;
  cfg.seed = 23;
  cfg.set_sigma(Variable::irradiance, 30.0);
  cfg.set_sigma(Variable::temperature, 1.3);
  Dataset ds = generate(cfg);

  testutil::TempDir dir("roundtrip");
  write_point_csv(ds, dir / "ds.csv");
  Dataset back = load_dataset_csv(dir / "ds.csv", cfg.utc_offset_hours).dataset;

  REQUIRE(back.forecasts.size() == ds.forecasts.size());
  for (std::size_t i = 0; i < ds.forecasts.size(); ++i) {
    CHECK(back.forecasts[i] == ds.forecasts[i]);
  }
  REQUIRE(back.measurements.size() == ds.measurements.size());
  CHECK(back.measurements == ds.measurements);

  // Serialize again: identical bytes.
  write_point_csv(back, dir / "ds2.csv");
  CHECK(testutil::slurp(dir / "ds.csv") == testutil::slurp(dir / "ds2.csv"));
}
