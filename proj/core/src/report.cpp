#include "kra/report.hpp"

#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

namespace kra {
namespace {

using Json = nlohmann::ordered_json;

Json metric_json(const MetricValue& m) {
  if (m.value) return *m.value;
  return Json{{"error", m.error}};
}

Json report_json(const MetricsReport& r) {
  Json j;
  j["k_effective"] = r.k_effective;
  j["scored_sessions"] = r.scored_sessions;
  j["db"] = metric_json(r.db);
  j["dunn"] = metric_json(r.dunn);
  j["precision"] = metric_json(r.precision);
  j["recall"] = metric_json(r.recall);
  j["f_measure"] = metric_json(r.f_measure);
  Json table = Json::array();
  for (const auto& p : r.table) {
    table.push_back({{"class", p.class_id},
                     {"cluster", p.cluster},
                     {"overlap", p.overlap},
                     {"precision", p.precision},
                     {"recall", p.recall},
                     {"f", p.f}});
  }
  j["pairs"] = std::move(table);
  return j;
}

std::string csv_value(const MetricValue& m) {
  return m.value ? fmt::format("{}", *m.value) : std::string("NA");
}

std::string table_value(const MetricValue& m) {
  return m.value ? fmt::format("{:.4f}", *m.value) : std::string("n/a");
}

}  // namespace

void write_assignments_csv(std::ostream& out, const SessionMatrix& matrix,
                           const Clustering& clustering) {
  out << "session_id,cluster\n";
  for (std::size_t i = 0; i < clustering.rows(); ++i) {
    if (!clustering.assigned(i)) continue;
    out << matrix.row_ids()[i] << ',' << clustering.label(i) << '\n';
  }
}

std::string kmeans_sidecar_json(const KMeansResult& result, std::uint64_t seed) {
  Json j;
  j["algorithm"] = "kmeans";
  j["k"] = result.clustering.k();
  j["seed"] = seed;
  j["iterations"] = result.iterations;
  j["converged"] = result.converged;
  j["objective"] = result.final_objective();
  return j.dump(2) + "\n";
}

std::string som_grid_json(const SomGrid& grid, const SomSchedule& schedule, std::uint64_t seed) {
  Json j;
  j["algorithm"] = "som";
  j["rows"] = grid.rows();
  j["cols"] = grid.cols();
  j["dim"] = grid.dim();
  j["seed"] = seed;
  j["schedule"] = {{"lambda", schedule.lambda}, {"alpha0", schedule.alpha0}, {"sigma0", schedule.sigma0}};
  Json weights = Json::array();
  for (std::size_t v = 0; v < grid.neuron_count(); ++v) {
    const auto w = grid.weights(v);
    weights.push_back(Json(std::vector<double>(w.begin(), w.end())));
  }
  j["weights"] = std::move(weights);
  return j.dump(2) + "\n";
}

std::string refinement_report_json(const RefinementReport& report) {
  Json j;
  j["threshold"] = report.params.threshold;
  j["count_limit"] = report.params.count_limit;
  j["removed_total"] = report.removed_total();
  Json clusters = Json::array();
  for (const auto& c : report.clusters) {
    Json counts = Json::object();
    for (const auto& [id, count] : c.counts) counts[std::to_string(id)] = count;
    clusters.push_back({{"cluster", c.cluster},
                        {"kept", c.kept_ids},
                        {"removed", c.removed_ids},
                        {"counts", std::move(counts)}});
  }
  j["clusters"] = std::move(clusters);
  return j.dump(2) + "\n";
}

std::string metrics_json(const MetricsReport& original, const MetricsReport& refined) {
  Json j;
  j["original"] = report_json(original);
  j["refined"] = report_json(refined);
  return j.dump(2) + "\n";
}

void write_comparison_csv(std::ostream& out, const MetricsReport& original,
                          const MetricsReport& refined) {
  out << "metric,original,refined\n";
  const std::pair<const char*, const MetricValue MetricsReport::*> rows[] = {
      {"db", &MetricsReport::db},
      {"dunn", &MetricsReport::dunn},
      {"precision", &MetricsReport::precision},
      {"recall", &MetricsReport::recall},
      {"f_measure", &MetricsReport::f_measure},
  };
  for (const auto& [name, member] : rows)
    out << name << ',' << csv_value(original.*member) << ',' << csv_value(refined.*member) << '\n';
}

std::string format_comparison_table(std::string_view title, const MetricsReport& original,
                                    const MetricsReport& refined) {
  std::ostringstream os;
  os << title << '\n';
  os << fmt::format("{:<20}{:>20}{:>20}\n", "", "ORIGINAL CLUSTERS", "REFINED CLUSTERS");
  const std::pair<const char*, const MetricValue MetricsReport::*> rows[] = {
      {"Davies-Bouldin", &MetricsReport::db},
      {"Dunn", &MetricsReport::dunn},
      {"Precision", &MetricsReport::precision},
      {"Recall", &MetricsReport::recall},
      {"F-Measure", &MetricsReport::f_measure},
  };
  for (const auto& [name, member] : rows) {
    os << fmt::format("{:<20}{:>20}{:>20}\n", name, table_value(original.*member),
                      table_value(refined.*member));
  }
  os << fmt::format("{:<20}{:>20}{:>20}\n", "Clusters (non-empty)", original.k_effective,
                    refined.k_effective);
  os << fmt::format("{:<20}{:>20}{:>20}\n", "Sessions scored", original.scored_sessions,
                    refined.scored_sessions);
  return os.str();
}

}  // namespace kra
