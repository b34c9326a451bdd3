#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "helpers.hpp"
#include "pvcast/metrics.hpp"
#include "pvcast/model.hpp"
#include "pvcast/synthetic.hpp"

using namespace pvcast;

namespace {

/// Bucket whose target follows target = a*lag + b*exog + g exactly.
HourlyBuckets exact_bucket(int hour, int n, double a, double b, double g, PortableRng& rng) {
  HourlyBuckets out;
  for (int i = 0; i < n; ++i) {
    AlignedSample s;
    s.hour_of_day = hour;
    s.lag = rng.uniform(0.0, 100.0);
    s.exog = rng.uniform(0.0, 100.0);
    s.target = a * s.lag + b * s.exog + g;
    s.valid_at = {static_cast<std::int64_t>(i) * 24 + hour - 1, 0};
    out.bucket(hour).push_back(s);
  }
  return out;
}

double in_sample_rmse(const FitDiagnostics& diag) {
  double ss = 0.0;
  for (double r : diag.residuals) ss += r * r;
  return diag.residuals.empty() ? 0.0 : std::sqrt(ss / static_cast<double>(diag.residuals.size()));
}

}  // namespace

TEST_CASE("all-zero night bucket produces the exact zero model") {
  HourlyBuckets b;
  for (int i = 0; i < 20; ++i) {
    AlignedSample s;
    s.hour_of_day = 3;
    s.target = 0.0;
    s.lag = 0.0;
    s.exog = 0.0;
    s.valid_at = {static_cast<std::int64_t>(i) * 24 + 2, 0};
    b.bucket(3).push_back(s);
  }
  HourlyFit fit = fit_hourly(b, ModelKind::arx, Variable::irradiance);
  const HourlyModel& m = fit.set.model_for_hour(3);
  CHECK(m.alpha == 0.0);
  CHECK(m.beta.value() == 0.0);
  CHECK(m.gamma == 0.0);
  CHECK(m.sigma_eps == 0.0);
  CHECK(m.is_zero());
  CHECK(fit.diagnostics[2].degenerate);
}

TEST_CASE("noiseless ARX bucket is recovered to 1e-8") {
  PortableRng rng(7);
  HourlyBuckets b = exact_bucket(12, 40, 0.3, 0.7, 5.0, rng);
  HourlyFit fit = fit_hourly(b, ModelKind::arx, Variable::irradiance);
  const HourlyModel& m = fit.set.model_for_hour(12);
  CHECK(m.alpha == Catch::Approx(0.3).margin(1e-8));
  CHECK(m.beta.value() == Catch::Approx(0.7).margin(1e-8));
  CHECK(m.gamma == Catch::Approx(5.0).margin(1e-8));
  CHECK(m.sigma_eps == Catch::Approx(0.0).margin(1e-8));
  CHECK(m.n_train == 40);
}

TEST_CASE("AR fit has no beta") {
  PortableRng rng(8);
  HourlyBuckets b = exact_bucket(7, 30, 0.4, 0.0, 2.0, rng);
  HourlyFit fit = fit_hourly(b, ModelKind::ar, Variable::wind);
  const HourlyModel& m = fit.set.model_for_hour(7);
  CHECK_FALSE(m.beta.has_value());
  CHECK(m.alpha == Catch::Approx(0.4).margin(1e-8));
  CHECK(m.gamma == Catch::Approx(2.0).margin(1e-8));
}

TEST_CASE("ARX never fits worse than AR in sample") {
  PortableRng rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    HourlyBuckets b;
    const int hour = 1 + static_cast<int>(rng.next_raw() % 24);
    const int n = 4 + static_cast<int>(rng.next_raw() % 40);
    for (int i = 0; i < n; ++i) {
      AlignedSample s;
      s.hour_of_day = hour;
      s.lag = rng.normal(50.0, 20.0);
      s.exog = rng.normal(50.0, 20.0);
      s.target = 0.2 * s.lag + 0.5 * s.exog + rng.normal(0.0, 5.0);
      s.valid_at = {static_cast<std::int64_t>(i) * 24 + hour - 1, 0};
      b.bucket(hour).push_back(s);
    }
    HourlyFit ar = fit_hourly(b, ModelKind::ar, Variable::temperature);
    HourlyFit arx = fit_hourly(b, ModelKind::arx, Variable::temperature);
    CHECK(in_sample_rmse(arx.diagnostics[hour - 1]) <=
          in_sample_rmse(ar.diagnostics[hour - 1]) + 1e-12);
  }
}

TEST_CASE("sigma_eps equals the sample standard deviation of residuals") {
  PortableRng rng(10);
  HourlyBuckets b;
  for (int i = 0; i < 50; ++i) {
    AlignedSample s;
    s.hour_of_day = 14;
    s.lag = rng.normal(10.0, 4.0);
    s.exog = rng.normal(10.0, 4.0);
    s.target = 0.3 * s.lag - 0.2 * s.exog + 1.0 + rng.normal(0.0, 2.0);
    s.valid_at = {static_cast<std::int64_t>(i) * 24 + 13, 0};
    b.bucket(14).push_back(s);
  }
  HourlyFit fit = fit_hourly(b, ModelKind::arx, Variable::temperature);
  CHECK(fit.set.model_for_hour(14).sigma_eps ==
        Catch::Approx(sample_std(fit.diagnostics[13].residuals)));
}

TEST_CASE("collinear exogenous column is dropped with a warning") {
  HourlyBuckets b;
  for (int i = 0; i < 12; ++i) {
    AlignedSample s;
    s.hour_of_day = 6;
    s.lag = 1.0 + i;
    s.exog = 2.0 * s.lag;  // exactly collinear
    s.target = 3.0 * s.lag + 1.0;
    s.valid_at = {static_cast<std::int64_t>(i) * 24 + 5, 0};
    b.bucket(6).push_back(s);
  }
  HourlyFit fit = fit_hourly(b, ModelKind::arx, Variable::temperature);
  const HourlyModel& m = fit.set.model_for_hour(6);
  CHECK(m.beta.value() == 0.0);
  CHECK(m.alpha == Catch::Approx(3.0).margin(1e-8));
  bool warned = false;
  for (const auto& w : fit.warnings) {
    if (w.find("hour 6") != std::string::npos && w.find("collinear") != std::string::npos) {
      warned = true;
    }
  }
  CHECK(warned);
}

TEST_CASE("constant exogenous column duplicating the intercept is dropped") {
  HourlyBuckets b;
  for (int i = 0; i < 12; ++i) {
    AlignedSample s;
    s.hour_of_day = 8;
    s.lag = 1.0 + i;
    s.exog = 7.0;  // constant
    s.target = 2.0 * s.lag + 4.0;
    s.valid_at = {static_cast<std::int64_t>(i) * 24 + 7, 0};
    b.bucket(8).push_back(s);
  }
  HourlyFit fit = fit_hourly(b, ModelKind::arx, Variable::temperature);
  const HourlyModel& m = fit.set.model_for_hour(8);
  CHECK(m.beta.value() == 0.0);
  CHECK(m.alpha == Catch::Approx(2.0).margin(1e-8));
  CHECK(m.gamma == Catch::Approx(4.0).margin(1e-8));
}

TEST_CASE("empty buckets fit to the zero model with a warning") {
  HourlyBuckets b;
  b.bucket(1).push_back({1, 5.0, 4.0, 3.0, {0, 0}});
  b.bucket(1).push_back({1, 6.0, 5.0, 4.0, {24, 0}});
  b.bucket(1).push_back({1, 7.0, 6.0, 5.0, {48, 0}});
  HourlyFit fit = fit_hourly(b, ModelKind::arx, Variable::wind);
  CHECK(fit.set.model_for_hour(2).is_zero());
  CHECK(fit.set.model_for_hour(2).n_train == 0);
  CHECK_FALSE(fit.warnings.empty());
}

TEST_CASE("predict applies the affine rule and the physical floor") {
  ModelSet set;
  set.variable = Variable::irradiance;
  set.kind = ModelKind::arx;
  for (int h = 1; h <= 24; ++h) set.models[h - 1].hour = h;

  SECTION("zero model predicts zero") {
    CHECK(predict(set, 12, 123.0, 456.0) == 0.0);
  }

  SECTION("convex-combination identity") {
    set.models[11] = {12, 0.5, 0.5, 0.0, 0.0, 10};
    CHECK(predict(set, 12, 42.0, 42.0) == Catch::Approx(42.0));
  }

  SECTION("hand-computed affine value") {
    // 0.01*420 + 0.91*610 + 7.5 = 4.2 + 555.1 + 7.5 = 566.8
    set.models[11] = {12, 0.01, 0.91, 7.5, 0.0, 10};
    CHECK(predict(set, 12, 420.0, 610.0) == Catch::Approx(566.8).margin(1e-9));
  }

  SECTION("irradiance floors at zero, temperature does not") {
    set.models[11] = {12, 1.0, 1.0, -1000.0, 0.0, 10};
    CHECK(predict(set, 12, 10.0, 10.0) == 0.0);
    ModelSet temp = set;
    temp.variable = Variable::temperature;
    CHECK(predict(temp, 12, 10.0, 10.0) == Catch::Approx(-980.0));
  }

  SECTION("missing exogenous input is an error for ARX") {
    CHECK_THROWS_AS(predict(set, 12, 1.0, std::nullopt), MissingExogenousError);
  }

  SECTION("hour derived from the target time") {
    set.models[12] = {13, 0.0, 0.0, 99.0, 0.0, 10};
    TimeIndex t{20, -8};  // hour_of_day 13
    CHECK(predict(set, t, 0.0, 0.0) == Catch::Approx(99.0));
  }
}

TEST_CASE("prediction is affine: scaling inputs scales the zero-bias output") {
  ModelSet set;
  set.variable = Variable::wind;
  set.kind = ModelKind::arx;
  for (int h = 1; h <= 24; ++h) set.models[h - 1] = {h, 0.3, 0.6, 0.0, 0.0, 5};
  PortableRng rng(77);
  for (int i = 0; i < 50; ++i) {
    double lag = rng.uniform(-10.0, 10.0);
    double exog = rng.uniform(-10.0, 10.0);
    double c = rng.uniform(0.1, 5.0);
    CHECK(predict_linear(set, 4, c * lag, c * exog) ==
          Catch::Approx(c * predict_linear(set, 4, lag, exog)).margin(1e-9));
  }
}

TEST_CASE("AR prediction ignores the exogenous value") {
  ModelSet set;
  set.variable = Variable::temperature;
  set.kind = ModelKind::ar;
  for (int h = 1; h <= 24; ++h) set.models[h - 1] = {h, 0.5, std::nullopt, 1.0, 0.0, 5};
  CHECK(predict(set, 3, 10.0, std::nullopt) == Catch::Approx(6.0));
  CHECK(predict(set, 3, 10.0, 999.0) == Catch::Approx(6.0));
}

TEST_CASE("model files round-trip and validate") {
  PortableRng rng(13);
  HourlyBuckets b = exact_bucket(12, 30, 0.2, 0.6, 3.0, rng);
  for (int i = 0; i < 25; ++i) {
    AlignedSample s;
    s.hour_of_day = 4;
    s.lag = rng.normal(5.0, 2.0);
    s.exog = rng.normal(5.0, 2.0);
    s.target = 0.1 * s.lag + 0.8 * s.exog + rng.normal(0.0, 0.4);
    s.valid_at = {static_cast<std::int64_t>(i) * 24 + 3, 0};
    b.bucket(4).push_back(s);
  }
  HourlyFit fit = fit_hourly(b, ModelKind::arx, Variable::temperature);

  testutil::TempDir dir("models");
  save_models(fit.set, dir / "m.json");
  ModelSet back = load_models(dir / "m.json");
  CHECK(back == fit.set);

  SECTION("truncated file is corrupt") {
    auto text = testutil::slurp(dir / "m.json");
    testutil::spit(dir / "trunc.json", text.substr(0, text.size() / 2));
    CHECK_THROWS_AS(load_models(dir / "trunc.json"), CorruptFileError);
  }

  SECTION("unknown schema version is a version mismatch") {
    auto text = testutil::slurp(dir / "m.json");
    auto pos = text.find("\"schema_version\": 1");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, std::string("\"schema_version\": 1").size(), "\"schema_version\": 99");
    testutil::spit(dir / "v99.json", text);
    CHECK_THROWS_AS(load_models(dir / "v99.json"), VersionMismatchError);
  }

  SECTION("missing file is ModelNotFound") {
    CHECK_THROWS_AS(load_models(dir / "absent.json"), ModelNotFoundError);
  }

  SECTION("wrong model count is corrupt") {
    nlohmann::json doc = nlohmann::json::parse(testutil::slurp(dir / "m.json"));
    doc["models"].erase(0);
    testutil::spit(dir / "short.json", doc.dump());
    CHECK_THROWS_AS(load_models(dir / "short.json"), CorruptFileError);
  }
}

TEST_CASE("a minimal hand-written model document loads to a 24-entry set") {
  nlohmann::json doc;
  doc["schema_version"] = 1;
  doc["variable"] = "wind";
  doc["kind"] = "ar";
  doc["lag"] = 24;
  doc["lead"] = 18;
  doc["models"] = nlohmann::json::array();
  for (int h = 1; h <= 24; ++h) {
    doc["models"].push_back({{"hour", h},
                             {"alpha", 0.1 * h},
                             {"gamma", 1.0},
                             {"sigma_eps", 0.5},
                             {"n_train", 7}});
  }
  testutil::TempDir dir("handwritten");
  testutil::spit(dir / "ar.json", doc.dump());
  ModelSet set = load_models(dir / "ar.json");
  CHECK(set.kind == ModelKind::ar);
  CHECK(set.variable == Variable::wind);
  CHECK(set.model_for_hour(24).alpha == Catch::Approx(2.4));
  CHECK_FALSE(set.model_for_hour(1).beta.has_value());
}
