#include "kra/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <ostream>
#include <string_view>

#include "kra/error.hpp"

namespace kra {
namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t begin = 0;
  while (true) {
    const std::size_t pos = line.find(sep, begin);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(begin));
      return fields;
    }
    fields.push_back(line.substr(begin, pos - begin));
    begin = pos + 1;
  }
}

bool valid_utf8(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size()) {
    const auto lead = static_cast<unsigned char>(text[i]);
    std::size_t extra = 0;
    if (lead < 0x80) {
      extra = 0;
    } else if ((lead & 0xE0) == 0xC0 && lead >= 0xC2) {
      extra = 1;
    } else if ((lead & 0xF0) == 0xE0) {
      extra = 2;
    } else if ((lead & 0xF8) == 0xF0 && lead <= 0xF4) {
      extra = 3;
    } else {
      return false;
    }
    if (i + extra >= text.size()) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      if ((static_cast<unsigned char>(text[i + k]) & 0xC0) != 0x80) return false;
    }
    i += extra + 1;
  }
  return true;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

ParseResult parse_log(std::istream& input) {
  std::string line;
  if (!std::getline(input, line)) throw DataError("log: missing header (empty input)");
  strip_cr(line);
  if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
  if (line != kLogHeader) {
    throw DataError("log: line 1: expected header '" + std::string(kLogHeader) + "', got '" +
                    line + "'");
  }

  ParseResult result;
  std::size_t line_no = 1;
  while (std::getline(input, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    auto skip = [&](std::string reason) {
      result.skipped.push_back({line_no, std::move(reason)});
    };
    if (!valid_utf8(line)) {
      skip("invalid UTF-8");
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != 3) {
      skip("expected 3 fields, got " + std::to_string(fields.size()));
      continue;
    }
    std::int64_t timestamp = 0;
    const auto ts = fields[0];
    const auto [end, ec] = std::from_chars(ts.data(), ts.data() + ts.size(), timestamp);
    if (ts.empty() || ec != std::errc{} || end != ts.data() + ts.size()) {
      skip("unparsable timestamp '" + std::string(ts) + "'");
      continue;
    }
    if (timestamp < 0) {
      skip("negative timestamp");
      continue;
    }
    if (fields[1].empty() || fields[2].empty()) {
      skip("empty visitor_id or url");
      continue;
    }
    result.records.push_back({timestamp, std::string(fields[1]), std::string(fields[2])});
  }
  return result;
}

std::vector<Session> sessionize(const std::vector<PageViewRecord>& records,
                                std::int64_t timeout, std::int64_t max_duration) {
  if (timeout <= 0) throw std::invalid_argument("sessionize: timeout must be > 0");
  if (max_duration <= 0) throw std::invalid_argument("sessionize: max_duration must be > 0");

  std::vector<std::size_t> order(records.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ra = records[a];
    const auto& rb = records[b];
    if (ra.visitor_id != rb.visitor_id) return ra.visitor_id < rb.visitor_id;
    return ra.timestamp < rb.timestamp;
  });

  std::vector<Session> sessions;
  Session current;
  auto flush = [&] {
    if (!current.views.empty() && current.span() <= max_duration) {
      current.session_id = static_cast<std::int64_t>(sessions.size()) + 1;
      sessions.push_back(std::move(current));
    }
    current = Session{};
  };

  for (const std::size_t idx : order) {
    const auto& rec = records[idx];
    const bool same_visitor = !current.views.empty() && current.visitor_id == rec.visitor_id;
    if (!same_visitor || rec.timestamp - current.end() > timeout) {
      flush();
      current.visitor_id = rec.visitor_id;
    }
    current.views.push_back({rec.timestamp, rec.url});
  }
  flush();
  return sessions;
}

std::vector<Session> filter_sessions(std::vector<Session> sessions, std::size_t min_views) {
  if (min_views < 1) throw std::invalid_argument("filter_sessions: min_views must be >= 1");
  std::erase_if(sessions, [&](const Session& s) { return s.views.size() < min_views; });
  return sessions;
}

PageFilterResult filter_pages(std::vector<Session> sessions, std::size_t min_frequency) {
  if (min_frequency < 1) throw std::invalid_argument("filter_pages: min_frequency must be >= 1");

  std::map<std::string, std::size_t> counts;
  for (const auto& s : sessions)
    for (const auto& v : s.views) ++counts[v.url];

  std::vector<std::string> urls;
  std::vector<std::size_t> frequency;
  for (const auto& [url, count] : counts) {
    if (count >= min_frequency) {
      urls.push_back(url);
      frequency.push_back(count);
    }
  }

  for (auto& s : sessions) {
    std::erase_if(s.views, [&](const PageView& v) { return counts[v.url] < min_frequency; });
  }
  std::erase_if(sessions, [](const Session& s) { return s.views.empty(); });

  return {std::move(sessions), PageCatalog(std::move(urls), std::move(frequency))};
}

void write_sessions_csv(std::ostream& out, const std::vector<Session>& sessions) {
  out << "session_id,visitor_id,start,end,urls\n";
  for (const auto& s : sessions) {
    out << s.session_id << ',' << s.visitor_id << ',' << s.start() << ',' << s.end() << ',';
    for (std::size_t i = 0; i < s.views.size(); ++i) {
      if (i) out << '|';
      out << s.views[i].url;
    }
    out << '\n';
  }
}

}  // namespace kra
