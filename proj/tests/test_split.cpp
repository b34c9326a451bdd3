#include <catch2/catch_amalgamated.hpp>

#include "pvcast/split.hpp"
#include "pvcast/synthetic.hpp"

using namespace pvcast;

namespace {

HourlyBuckets bucket_with(int hour, int n) {
  HourlyBuckets b;
  for (int i = 0; i < n; ++i) {
    AlignedSample s;
    s.hour_of_day = hour;
    s.target = i;
    s.valid_at = {static_cast<std::int64_t>(i) * 24, 0};
    b.bucket(hour).push_back(s);
  }
  return b;
}

}  // namespace

TEST_CASE("four samples at the default fraction split 3:1") {
  SplitResult r = split(bucket_with(5, 4), {});
  CHECK(r.train.bucket(5).size() == 3);
  CHECK(r.test.bucket(5).size() == 1);
  CHECK(r.warnings.empty());
}

TEST_CASE("a single-sample bucket trains and warns about the empty test set") {
  SplitResult r = split(bucket_with(2, 1), {});
  CHECK(r.train.bucket(2).size() == 1);
  CHECK(r.test.bucket(2).empty());
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0].find("DegenerateSplit") != std::string::npos);
  CHECK(r.warnings[0].find("hour 2") != std::string::npos);
}

TEST_CASE("half fraction on ten samples is 5/5 and chronological") {
  SplitResult r = split(bucket_with(9, 10), {0.5});
  REQUIRE(r.train.bucket(9).size() == 5);
  REQUIRE(r.test.bucket(9).size() == 5);
  std::int64_t max_train = r.train.bucket(9).back().valid_at.epoch_hour;
  std::int64_t min_test = r.test.bucket(9).front().valid_at.epoch_hour;
  CHECK(max_train < min_test);
}

TEST_CASE("split is a chronological partition of every bucket") {
  PortableRng rng(40);
  for (int trial = 0; trial < 50; ++trial) {
    HourlyBuckets b;
    for (int hour = 1; hour <= 24; ++hour) {
      int n = static_cast<int>(rng.next_raw() % 13);
      for (int i = 0; i < n; ++i) {
        AlignedSample s;
        s.hour_of_day = hour;
        s.target = rng.uniform();
        s.valid_at = {static_cast<std::int64_t>(i) * 24 + hour, 0};
        b.bucket(hour).push_back(s);
      }
    }
    double f = rng.uniform(0.05, 0.95);
    SplitResult r = split(b, {f});
    for (int hour = 1; hour <= 24; ++hour) {
      const auto& all = b.bucket(hour);
      const auto& train = r.train.bucket(hour);
      const auto& test = r.test.bucket(hour);
      REQUIRE(train.size() + test.size() == all.size());
      const auto expected_train =
          static_cast<std::size_t>(std::ceil(f * static_cast<double>(all.size())));
      CHECK(train.size() == expected_train);
      for (std::size_t i = 0; i < all.size(); ++i) {
        const AlignedSample& from =
            i < train.size() ? train[i] : test[i - train.size()];
        CHECK(from.valid_at == all[i].valid_at);
        CHECK(from.target == all[i].target);
      }
      if (!train.empty() && !test.empty()) {
        CHECK(train.back().valid_at.epoch_hour < test.front().valid_at.epoch_hour);
      }
    }
  }
}

TEST_CASE("split validates the fraction") {
  CHECK_THROWS_AS(split(bucket_with(1, 3), {0.0}), ConfigError);
  CHECK_THROWS_AS(split(bucket_with(1, 3), {1.0}), ConfigError);
  CHECK_THROWS_AS(split(bucket_with(1, 3), {-0.5}), ConfigError);
}
