#include "kra/metrics.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "kra/distance.hpp"
#include "kra/error.hpp"

namespace kra {
namespace {

double dist(const SessionMatrix& matrix, std::size_t a, std::size_t b) {
  return euclidean(matrix.row(a), matrix.row(b));
}

void require_non_empty(std::span<const std::size_t> a, std::span<const std::size_t> b,
                       const char* what) {
  if (a.empty() || b.empty()) throw std::invalid_argument(std::string(what) + ": empty cluster");
}

std::vector<std::span<const std::size_t>> non_empty_clusters(const Clustering& clustering) {
  std::vector<std::span<const std::size_t>> out;
  for (std::size_t c = 0; c < clustering.k(); ++c) {
    if (!clustering.members(c).empty()) out.push_back(clustering.members(c));
  }
  return out;
}

std::vector<double> mean_vector(const SessionMatrix& matrix, std::span<const std::size_t> members) {
  std::vector<double> mean(matrix.cols(), 0.0);
  for (const auto row : members) {
    const auto r = matrix.row(row);
    for (std::size_t c = 0; c < mean.size(); ++c) mean[c] += r[c];
  }
  for (auto& v : mean) v /= static_cast<double>(members.size());
  return mean;
}

}  // namespace

double diameter(const SessionMatrix& matrix, std::span<const std::size_t> members) {
  if (members.empty()) throw std::invalid_argument("diameter: empty cluster");
  double best = 0.0;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      best = std::max(best, dist(matrix, members[i], members[j]));
  return best;
}

double avg_inter_distance(const SessionMatrix& matrix, std::span<const std::size_t> a,
                          std::span<const std::size_t> b) {
  require_non_empty(a, b, "avg_inter_distance");
  double sum = 0.0;
  for (const auto i : a)
    for (const auto j : b) sum += dist(matrix, i, j);
  return sum / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

double min_inter_distance(const SessionMatrix& matrix, std::span<const std::size_t> a,
                          std::span<const std::size_t> b) {
  require_non_empty(a, b, "min_inter_distance");
  double best = std::numeric_limits<double>::infinity();
  for (const auto i : a)
    for (const auto j : b) best = std::min(best, dist(matrix, i, j));
  return best;
}

double centroid_distance(const SessionMatrix& matrix, std::span<const std::size_t> a,
                         std::span<const std::size_t> b) {
  require_non_empty(a, b, "centroid_distance");
  const auto ma = mean_vector(matrix, a);
  const auto mb = mean_vector(matrix, b);
  return euclidean(std::span<const double>(ma), std::span<const double>(mb));
}

double db_index(const SessionMatrix& matrix, const Clustering& clustering, Linkage linkage) {
  const auto clusters = non_empty_clusters(clustering);
  const std::size_t k = clusters.size();
  if (k < 2) throw DegenerateClustering("db_index: needs at least 2 non-empty clusters");

  std::vector<double> diam(k);
  for (std::size_t i = 0; i < k; ++i) diam[i] = diameter(matrix, clusters[i]);

  std::vector<double> worst(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const double d = linkage == Linkage::average
                           ? avg_inter_distance(matrix, clusters[i], clusters[j])
                           : centroid_distance(matrix, clusters[i], clusters[j]);
      if (d == 0.0) throw DegenerateClustering("db_index: two clusters at distance 0");
      const double ratio = (diam[i] + diam[j]) / d;
      worst[i] = std::max(worst[i], ratio);
      worst[j] = std::max(worst[j], ratio);
    }
  }
  double sum = 0.0;
  for (const double w : worst) sum += w;
  return sum / static_cast<double>(k);
}

double dunn_index(const SessionMatrix& matrix, const Clustering& clustering) {
  const auto clusters = non_empty_clusters(clustering);
  const std::size_t k = clusters.size();
  if (k < 2) throw DegenerateClustering("dunn_index: needs at least 2 non-empty clusters");

  double max_diam = 0.0;
  for (const auto& c : clusters) max_diam = std::max(max_diam, diameter(matrix, c));
  if (max_diam == 0.0) throw DegenerateClustering("dunn_index: every cluster has diameter 0");

  double min_sep = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      min_sep = std::min(min_sep, min_inter_distance(matrix, clusters[i], clusters[j]));
  return min_sep / max_diam;
}

ClassLabels read_labels_csv(std::istream& in, const SessionMatrix& matrix) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("labels: missing header (empty input)");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "session_id,class") throw DataError("labels: line 1: expected header 'session_id,class'");

  std::unordered_map<std::int64_t, std::size_t> row_of;
  for (std::size_t i = 0; i < matrix.rows(); ++i) row_of.emplace(matrix.row_ids()[i], i);

  ClassLabels labels;
  labels.class_of_row.assign(matrix.rows(), std::nullopt);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
      throw DataError("labels: line " + std::to_string(line_no) + ": expected 2 fields");
    std::int64_t id = 0;
    try {
      std::size_t used = 0;
      id = std::stoll(line.substr(0, comma), &used);
      if (used != comma) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw DataError("labels: line " + std::to_string(line_no) + ": bad session_id");
    }
    std::string cls = line.substr(comma + 1);
    if (cls.empty()) throw DataError("labels: line " + std::to_string(line_no) + ": empty class");
    if (const auto it = row_of.find(id); it != row_of.end())
      labels.class_of_row[it->second] = std::move(cls);
  }
  return labels;
}

ExternalMeasures external_measures(const Clustering& clustering, const ClassLabels& labels) {
  if (labels.class_of_row.size() != clustering.rows())
    throw std::invalid_argument("external_measures: labels do not cover the clustering rows");

  std::map<std::string, std::size_t> class_size;
  std::map<std::string, std::map<std::size_t, std::size_t>> overlap;
  std::size_t n = 0;
  for (std::size_t row = 0; row < clustering.rows(); ++row) {
    if (!clustering.assigned(row)) continue;
    const auto& cls = labels.class_of_row[row];
    if (!cls) throw std::invalid_argument("external_measures: row " + std::to_string(row) + " has no class");
    ++class_size[*cls];
    ++overlap[*cls][clustering.label(row)];
    ++n;
  }
  if (n == 0) throw DegenerateClustering("external_measures: no assigned sessions");

  ExternalMeasures out;
  for (const auto& [cls, size] : class_size) {
    const auto& row = overlap[cls];
    double best_f = -1.0;
    double best_p = 0.0;
    double best_r = 0.0;
    for (std::size_t j = 0; j < clustering.k(); ++j) {
      const std::size_t cluster_size = clustering.members(j).size();
      if (cluster_size == 0) continue;
      const auto it = row.find(j);
      const std::size_t x = it == row.end() ? 0 : it->second;
      PairScore score{cls, j, x, 0.0, 0.0, 0.0};
      score.recall = static_cast<double>(x) / static_cast<double>(size);
      score.precision = static_cast<double>(x) / static_cast<double>(cluster_size);
      const double sum = score.precision + score.recall;
      score.f = sum > 0.0 ? 2.0 * score.precision * score.recall / sum : 0.0;
      if (score.f > best_f) {
        best_f = score.f;
        best_p = score.precision;
        best_r = score.recall;
      }
      out.table.push_back(std::move(score));
    }
    const double weight = static_cast<double>(size) / static_cast<double>(n);
    out.f += weight * best_f;
    out.precision += weight * best_p;
    out.recall += weight * best_r;
  }
  return out;
}

MetricsReport evaluate(const SessionMatrix& matrix, const Clustering& clustering,
                       const ClassLabels* labels, Linkage linkage) {
  MetricsReport report;
  report.k_effective = clustering.non_empty_count();
  report.scored_sessions = clustering.assigned_count();

  auto run = [](MetricValue& slot, auto&& compute) {
    try {
      slot.value = compute();
    } catch (const std::exception& e) {
      slot.error = e.what();
    }
  };
  run(report.db, [&] { return db_index(matrix, clustering, linkage); });
  run(report.dunn, [&] { return dunn_index(matrix, clustering); });

  if (labels == nullptr) {
    for (auto* slot : {&report.precision, &report.recall, &report.f_measure})
      slot->error = "no class labels supplied";
    return report;
  }
  try {
    auto ext = external_measures(clustering, *labels);
    report.precision.value = ext.precision;
    report.recall.value = ext.recall;
    report.f_measure.value = ext.f;
    report.table = std::move(ext.table);
  } catch (const std::exception& e) {
    for (auto* slot : {&report.precision, &report.recall, &report.f_measure}) slot->error = e.what();
  }
  return report;
}

}  // namespace kra
