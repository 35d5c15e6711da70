#include "kra/synthetic.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "kra/random.hpp"

namespace kra {

PlantedFixture planted_noise_fixture(const PlantedOptions& options) {
  constexpr std::size_t kGroups = 3;
  constexpr std::size_t kProtoPages = 6;
  constexpr std::size_t kPoolPages = 4;
  constexpr std::size_t kNoisePerOutlier = 2;
  constexpr std::array<const char*, kGroups> kNames = {"A", "B", "C"};

  const std::size_t pool_begin = kGroups * kProtoPages;
  const std::size_t noise_begin = pool_begin + kPoolPages;
  const std::size_t m = noise_begin + kNoisePerOutlier * options.outliers;

  std::vector<std::string> cols;
  cols.reserve(m);
  for (std::size_t g = 0; g < kGroups; ++g)
    for (std::size_t p = 0; p < kProtoPages; ++p)
      cols.push_back("/" + std::string(kNames[g]) + "/page" + std::to_string(p + 1));
  for (std::size_t p = 0; p < kPoolPages; ++p) cols.push_back("/shared/page" + std::to_string(p + 1));
  for (std::size_t p = 0; p < kNoisePerOutlier * options.outliers; ++p)
    cols.push_back("/noise/page" + std::to_string(p + 1));

  Rng rng(options.seed);
  std::vector<std::uint8_t> cells;
  std::vector<std::optional<std::string>> classes;

  for (std::size_t g = 0; g < kGroups; ++g) {
    for (std::size_t i = 0; i < options.members_per_group; ++i) {
      std::vector<std::uint8_t> row(m, 0);
      for (std::size_t p = 0; p < kProtoPages; ++p) row[g * kProtoPages + p] = 1;
      if (uniform_index(rng, 2) == 1) row[pool_begin + uniform_index(rng, kPoolPages)] = 1;
      cells.insert(cells.end(), row.begin(), row.end());
      classes.emplace_back(kNames[g]);
    }
  }

  PlantedFixture fixture;
  for (std::size_t o = 0; o < options.outliers; ++o) {
    const std::size_t g = o % kGroups;
    std::array<std::size_t, kProtoPages> pages{};
    std::iota(pages.begin(), pages.end(), g * kProtoPages);
    shuffle(std::span(pages), rng);
    std::vector<std::uint8_t> row(m, 0);
    for (std::size_t p = 0; p < 4; ++p) row[pages[p]] = 1;
    for (std::size_t p = 0; p < kNoisePerOutlier; ++p) row[noise_begin + kNoisePerOutlier * o + p] = 1;
    fixture.outlier_rows.push_back(classes.size());
    cells.insert(cells.end(), row.begin(), row.end());
    classes.emplace_back("noise");
  }

  const std::size_t n = classes.size();
  std::vector<std::int64_t> ids(n);
  std::iota(ids.begin(), ids.end(), std::int64_t{1});
  fixture.matrix = SessionMatrix(n, m, std::move(cells), std::move(ids), std::move(cols));
  fixture.labels.class_of_row = std::move(classes);
  return fixture;
}

void write_labels_csv(std::ostream& out, const SessionMatrix& matrix, const ClassLabels& labels) {
  out << "session_id,class\n";
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    if (labels.class_of_row[i]) out << matrix.row_ids()[i] << ',' << *labels.class_of_row[i] << '\n';
  }
}

namespace {

constexpr std::int64_t kEpoch = 1'700'000'000;

struct LogBuilder {
  std::vector<PageViewRecord> records;

  void visit(const std::string& visitor, std::int64_t start, std::int64_t step,
             const std::vector<std::string>& urls) {
    for (std::size_t i = 0; i < urls.size(); ++i)
      records.push_back({start + static_cast<std::int64_t>(i) * step, visitor, urls[i]});
  }
  void at(const std::string& visitor, const std::vector<std::int64_t>& offsets, std::int64_t start,
          const std::vector<std::string>& urls) {
    for (std::size_t i = 0; i < urls.size(); ++i) records.push_back({start + offsets[i], visitor, urls[i]});
  }
};

}  // namespace

std::string synthetic_log_csv() {
  const std::vector<std::vector<std::string>> sections = {
      {"/courses/algebra", "/courses/calculus", "/courses/index", "/courses/physics",
       "/courses/programming"},
      {"/exams/index", "/exams/registration", "/exams/results", "/exams/schedule"},
      {"/library/catalog", "/library/hours", "/library/index", "/library/search"},
  };

  LogBuilder log;

  // 24 regular visitors, 8 per section: /index.html followed by every page of
  // the section, one view a minute. Visitors 1-5 also read /news/five and
  // visitors 6-11 read /news/six, so those urls end with 5 and 6 views.
  for (std::size_t v = 0; v < 24; ++v) {
    std::vector<std::string> urls = {"/index.html"};
    const auto& section = sections[v / 8];
    urls.insert(urls.end(), section.begin(), section.end());
    if (v < 5) urls.push_back("/news/five");
    else if (v < 11) urls.push_back("/news/six");
    log.visit(fmt::format("v{:03}", v + 1), kEpoch + static_cast<std::int64_t>(v) * 600, 60, urls);
  }

  const auto& courses = sections[0];
  const auto& exams = sections[1];
  const auto& library = sections[2];
  std::int64_t start = kEpoch + 20'000;
  auto next_start = [&] { return start += 10'000; };

  // Gap of exactly the timeout stays in one session; one second more splits.
  log.at("edge-gap-1800", {0, 60, 120, 1920, 1980}, next_start(),
         {courses[0], courses[1], courses[2], courses[3], courses[4]});
  log.at("edge-gap-1801", {0, 60, 120, 1921, 1981, 2041}, next_start(),
         {exams[0], exams[1], exams[2], library[0], library[1], library[2]});
  // Span of exactly two hours is kept; one second more is dropped.
  log.at("edge-span-7200", {0, 1440, 2880, 4320, 5760, 7200}, next_start(),
         {library[0], library[1], library[2], library[3], courses[0], courses[1]});
  log.at("edge-span-7201", {0, 1440, 2880, 4320, 5760, 7201}, next_start(),
         {exams[0], exams[1], exams[2], exams[3], courses[0], courses[1]});
  // Two views are too few; three are enough.
  log.visit("edge-views-2", next_start(), 60, {courses[0], courses[1]});
  log.visit("edge-views-3", next_start(), 60, {exams[0], exams[1], exams[3]});
  // Enough views, but every page is too rare to survive.
  log.visit("orphan", next_start(), 60, {"/orphan/a", "/orphan/b", "/orphan/c"});

  std::stable_sort(log.records.begin(), log.records.end(),
                   [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });

  std::ostringstream out;
  out << kLogHeader << '\n';
  for (std::size_t i = 0; i < log.records.size(); ++i) {
    const auto& r = log.records[i];
    out << r.timestamp << ',' << r.visitor_id << ',' << r.url << '\n';
    if (i == 10) out << "abc,v099,/index.html\n";
    if (i == 50) out << "-5,v099,/index.html\n";
    if (i == 90) out << kEpoch << ",v099,/courses/index,extra\n";
  }
  return out.str();
}

}  // namespace kra
