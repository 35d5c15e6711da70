#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "kra/catalog.hpp"

namespace kra {

/// One page request from the access log.
struct PageViewRecord {
  std::int64_t timestamp = 0;  ///< seconds since the epoch
  std::string visitor_id;
  std::string url;
};

struct PageView {
  std::int64_t timestamp = 0;
  std::string url;

  friend bool operator==(const PageView&, const PageView&) = default;
};

/// A time-ordered run of page views by one visitor.
struct Session {
  std::int64_t session_id = 0;
  std::string visitor_id;
  std::vector<PageView> views;

  std::int64_t start() const { return views.front().timestamp; }
  std::int64_t end() const { return views.back().timestamp; }
  std::int64_t span() const { return end() - start(); }
};

struct RowWarning {
  std::size_t line = 0;  ///< 1-based line number in the input
  std::string reason;
};

struct ParseResult {
  std::vector<PageViewRecord> records;
  std::vector<RowWarning> skipped;
};

/// Preprocessing constants. The defaults are a 30 minute inactivity timeout,
/// a 2 hour session cap, at least 3 views per session and at least 6 views
/// per page (pages seen 5 times or fewer are dropped).
struct PreprocessOptions {
  std::int64_t timeout = 30 * 60;
  std::int64_t max_duration = 2 * 60 * 60;
  std::size_t min_views = 3;
  std::size_t min_frequency = 6;
};

inline constexpr const char* kLogHeader = "timestamp,visitor_id,url";

/// Reads the `timestamp,visitor_id,url` CSV format. A missing or different
/// header throws DataError; rows that fail to parse are skipped and listed in
/// ParseResult::skipped. Blank lines are ignored.
ParseResult parse_log(std::istream& input);

/// Groups records by visitor, orders each visitor's views by time (file order
/// breaks ties) and cuts a new session whenever consecutive views are more
/// than `timeout` seconds apart. Sessions spanning more than `max_duration`
/// seconds are dropped. Surviving sessions are numbered from 1 in
/// (visitor_id, start time) order.
std::vector<Session> sessionize(const std::vector<PageViewRecord>& records,
                                std::int64_t timeout,
                                std::int64_t max_duration);

/// Keeps sessions with at least `min_views` views, preserving order.
std::vector<Session> filter_sessions(std::vector<Session> sessions,
                                     std::size_t min_views);

struct PageFilterResult {
  std::vector<Session> sessions;
  PageCatalog catalog;
};

/// Counts total views per url over all sessions and drops the views of urls
/// seen fewer than `min_frequency` times. Sessions left without views are
/// removed. This is a single pass: sessions that fall below the min-view rule
/// afterwards are kept.
PageFilterResult filter_pages(std::vector<Session> sessions,
                              std::size_t min_frequency);

/// Writes `session_id,visitor_id,start,end,urls` with urls joined by '|'.
void write_sessions_csv(std::ostream& out, const std::vector<Session>& sessions);

}  // namespace kra
