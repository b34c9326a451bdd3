#pragma once

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <random>
#include <semaphore>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <httplib.h>

// glibc's <resolv.h> (dragged in by httplib) leaks a `_res` object macro
// that mangles any Eigen header included later in the same TU.
#ifdef _res
#undef _res
#endif

#include "pvcast/error.hpp"
#include "pvcast/time_index.hpp"

namespace pvcast {

/**
 * @brief Expand an archive URL template for one (cycle, lead) pair.
 *
 * Placeholders: {date} -> YYYYMMDD of the cycle, {cycle} -> two-digit UTC
 * cycle hour, {lead} -> two-digit lead hour.
 */
inline std::string substitute_url(const std::string& url_template, const TimeIndex& cycle,
                                  int lead_hours) {
  if (url_template.find("{date}") == std::string::npos ||
      url_template.find("{cycle}") == std::string::npos ||
      url_template.find("{lead}") == std::string::npos) {
    throw ConfigError("url template must contain {date}, {cycle} and {lead}");
  }
  std::int64_t days = cycle.epoch_hour / 24;
  int hour = static_cast<int>(cycle.epoch_hour % 24);
  if (hour < 0) {
    hour += 24;
    --days;
  }
  int y = 0, m = 0, d = 0;
  detail::civil_from_days(days, y, m, d);
  char date_buf[12], hh_buf[4], ll_buf[4];
  std::snprintf(date_buf, sizeof date_buf, "%04d%02d%02d", y, m, d);
  std::snprintf(hh_buf, sizeof hh_buf, "%02d", hour);
  std::snprintf(ll_buf, sizeof ll_buf, "%02d", lead_hours);

  std::string url = url_template;
  auto replace_all = [&url](const std::string& key, const std::string& value) {
    for (std::size_t pos = url.find(key); pos != std::string::npos; pos = url.find(key, pos)) {
      url.replace(pos, key.size(), value);
      pos += value.size();
    }
  };
  replace_all("{date}", date_buf);
  replace_all("{cycle}", hh_buf);
  replace_all("{lead}", ll_buf);
  return url;
}

/// Cache location for one file: <cache_dir>/<YYYYMMDD>/<HH>z/f<LL>.
inline std::filesystem::path cache_path(const std::filesystem::path& cache_dir,
                                        const TimeIndex& cycle, int lead_hours) {
  std::int64_t days = cycle.epoch_hour / 24;
  int hour = static_cast<int>(cycle.epoch_hour % 24);
  if (hour < 0) {
    hour += 24;
    --days;
  }
  int y = 0, m = 0, d = 0;
  detail::civil_from_days(days, y, m, d);
  char date_buf[12], cycle_buf[8], lead_buf[8];
  std::snprintf(date_buf, sizeof date_buf, "%04d%02d%02d", y, m, d);
  std::snprintf(cycle_buf, sizeof cycle_buf, "%02dz", hour);
  std::snprintf(lead_buf, sizeof lead_buf, "f%02d", lead_hours);
  return cache_dir / date_buf / cycle_buf / lead_buf;
}

struct FetchOutcome {
  std::filesystem::path path;
  bool from_cache = false;
};

/**
 * @brief Cached archive downloader.
 *
 * A nonzero-length cache file satisfies a request without network I/O.
 * Downloads land atomically (temp file + rename), so concurrent fetches of
 * the same key cannot expose partial files. 404 means the archive has a
 * gap (NotFound); connection failures and 5xx are retried, then surface as
 * NetworkError.
 */
class ArchiveFetcher {
 public:
  ArchiveFetcher(std::string url_template, std::filesystem::path cache_dir, int max_retries = 2)
      : url_template_(std::move(url_template)),
        cache_dir_(std::move(cache_dir)),
        max_retries_(max_retries) {}

  FetchOutcome fetch(const TimeIndex& cycle, int lead_hours) const {
    namespace fs = std::filesystem;
    const fs::path target = cache_path(cache_dir_, cycle, lead_hours);
    std::error_code ec;
    if (fs::exists(target, ec) && fs::file_size(target, ec) > 0 && !ec) {
      return {target, true};
    }

    const std::string url = substitute_url(url_template_, cycle, lead_hours);
    const auto [host, path] = split_url(url);

    std::string body;
    int last_status = 0;
    for (int attempt = 0; attempt <= max_retries_; ++attempt) {
      if (attempt > 0) std::this_thread::sleep_for(std::chrono::milliseconds(100 * attempt));
      httplib::Client client(host);
      client.set_connection_timeout(10, 0);
      client.set_read_timeout(30, 0);
      client.set_follow_location(true);
      auto res = client.Get(path);
      if (res && res->status == 404) {
        throw NotFoundError(url + " (archive gap)");
      }
      if (res && res->status == 200) {
        if (res->body.empty()) throw NetworkError(url + " returned an empty body");
        body = res->body;
        last_status = 200;
        break;
      }
      last_status = res ? res->status : 0;
    }
    if (last_status != 200) {
      throw NetworkError(url + " failed after " + std::to_string(max_retries_ + 1) +
                         " attempt(s), last status " + std::to_string(last_status));
    }

    fs::create_directories(target.parent_path(), ec);
    const fs::path tmp = target.string() + ".tmp" + std::to_string(temp_counter_++);
    {
      std::ofstream out(tmp, std::ios::binary);
      if (!out) throw IoError("cannot write '" + tmp.string() + "'");
      out << body;
      if (!out) throw IoError("short write to '" + tmp.string() + "'");
    }
    fs::rename(tmp, target, ec);
    if (ec) throw IoError("rename to '" + target.string() + "' failed: " + ec.message());
    return {target, false};
  }

  /// "http://host:port/path" -> ("http://host:port", "/path").
  static std::pair<std::string, std::string> split_url(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw ConfigError("url '" + url + "' has no scheme");
    auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
  }

 private:
  std::string url_template_;
  std::filesystem::path cache_dir_;
  int max_retries_;
  mutable std::atomic<std::uint64_t> temp_counter_{0};
};

struct FetchJob {
  TimeIndex cycle;
  int lead_hours = 0;
};

struct FetchSummary {
  std::size_t requested = 0;
  std::size_t downloaded = 0;
  std::size_t cache_hits = 0;
  std::vector<FetchJob> gaps;          // 404s, recorded not fatal
  std::vector<std::string> failures;   // network errors after retries
};

/**
 * @brief Fetch a batch of (cycle, lead) pairs with a bounded in-flight limit.
 *
 * Gaps (404) are collected; network failures are collected and reported by
 * the caller. Jobs run concurrently but the summary is deterministic.
 */
inline FetchSummary fetch_many(const ArchiveFetcher& fetcher, const std::vector<FetchJob>& jobs,
                               int concurrency = 4) {
  if (concurrency < 1) throw ConfigError("concurrency must be >= 1");
  FetchSummary summary;
  summary.requested = jobs.size();

  std::counting_semaphore<64> slots(std::min(concurrency, 64));
  struct JobResult {
    bool downloaded = false, cached = false, gap = false;
    std::string failure;
  };
  std::vector<std::future<JobResult>> futures;
  futures.reserve(jobs.size());
  for (const auto& job : jobs) {
    futures.push_back(std::async(std::launch::async, [&fetcher, &slots, job]() {
      slots.acquire();
      JobResult r;
      try {
        auto outcome = fetcher.fetch(job.cycle, job.lead_hours);
        (outcome.from_cache ? r.cached : r.downloaded) = true;
      } catch (const NotFoundError&) {
        r.gap = true;
      } catch (const Error& e) {
        r.failure = e.what();
      }
      slots.release();
      return r;
    }));
  }
  for (std::size_t i = 0; i < futures.size(); ++i) {
    JobResult r = futures[i].get();
    if (r.downloaded) ++summary.downloaded;
    if (r.cached) ++summary.cache_hits;
    if (r.gap) summary.gaps.push_back(jobs[i]);
    if (!r.failure.empty()) summary.failures.push_back(r.failure);
  }
  return summary;
}

}  // namespace pvcast
