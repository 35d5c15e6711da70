#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "kra/ingest.hpp"
#include "kra/matrix.hpp"
#include "kra/metrics.hpp"

namespace kra {

/// Three prototype groups of sessions plus a handful of injected outliers.
///
/// Each prototype owns six pages. A member session views its prototype's
/// pages plus, at random, one page from a shared pool of four. Members are
/// therefore within Jaccard distance 0.25 of each other. Each outlier views
/// four of one prototype's pages plus two pages nobody else views, which puts
/// it at Jaccard distance >= 0.5 from every member while staying closest (in
/// Euclidean terms) to that prototype. Outliers are spread evenly over the
/// prototypes.
struct PlantedFixture {
  SessionMatrix matrix;
  ClassLabels labels;  ///< "A", "B", "C" for members, "noise" for outliers
  std::vector<std::size_t> outlier_rows;
};

struct PlantedOptions {
  std::size_t members_per_group = 20;
  std::size_t outliers = 6;
  std::uint64_t seed = 7;
};

PlantedFixture planted_noise_fixture(const PlantedOptions& options = {});

/// Writes `session_id,class` for every labelled row.
void write_labels_csv(std::ostream& out, const SessionMatrix& matrix, const ClassLabels& labels);

/// Deterministic access log exercising every preprocessing boundary:
/// a 1800 s gap (kept together) and a 1801 s gap (split), a 7200 s span
/// (kept) and a 7201 s span (dropped), 2- and 3-view sessions, urls viewed
/// exactly 5 and 6 times, a session made only of rare pages, and three
/// malformed rows. See tests for the expected survival counts.
std::string synthetic_log_csv();

}  // namespace kra
