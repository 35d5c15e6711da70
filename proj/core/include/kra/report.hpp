#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "kra/clustering.hpp"
#include "kra/kmeans.hpp"
#include "kra/matrix.hpp"
#include "kra/metrics.hpp"
#include "kra/refine.hpp"
#include "kra/som.hpp"

namespace kra {

/// `session_id,cluster`, one line per assigned row, in row order.
void write_assignments_csv(std::ostream& out, const SessionMatrix& matrix,
                           const Clustering& clustering);

/// Sidecar for a k-means run: k, seed, iterations, convergence flag, final J.
std::string kmeans_sidecar_json(const KMeansResult& result, std::uint64_t seed);

/// Grid shape, schedule, seed and all weights.
std::string som_grid_json(const SomGrid& grid, const SomSchedule& schedule, std::uint64_t seed);

std::string refinement_report_json(const RefinementReport& report);

/// Original and refined metrics side by side.
std::string metrics_json(const MetricsReport& original, const MetricsReport& refined);

/// `metric,original,refined` with rows db, dunn, precision, recall,
/// f_measure. Unavailable values are written as NA.
void write_comparison_csv(std::ostream& out, const MetricsReport& original,
                          const MetricsReport& refined);

/// Fixed-width text table (4 decimals) for terminal output.
std::string format_comparison_table(std::string_view title, const MetricsReport& original,
                                    const MetricsReport& refined);

}  // namespace kra
