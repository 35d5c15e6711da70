#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kra/clustering.hpp"
#include "kra/matrix.hpp"

namespace kra {

// Internal indices use Euclidean distance between binary rows, the same
// measure the clusterers minimise.

/// Largest pairwise distance within `members`; 0 for a singleton. Throws
/// std::invalid_argument on an empty list.
double diameter(const SessionMatrix& matrix, std::span<const std::size_t> members);

/// Mean distance over all cross pairs (average linkage).
double avg_inter_distance(const SessionMatrix& matrix, std::span<const std::size_t> a,
                          std::span<const std::size_t> b);

/// Smallest distance over all cross pairs (single linkage).
double min_inter_distance(const SessionMatrix& matrix, std::span<const std::size_t> a,
                          std::span<const std::size_t> b);

/// Distance between the two clusters' mean vectors.
double centroid_distance(const SessionMatrix& matrix, std::span<const std::size_t> a,
                         std::span<const std::size_t> b);

enum class Linkage { average, centroid };

/// Davies-Bouldin index over the non-empty clusters:
///   DB = 1/K * sum_i max_{j != i} (diam(C_i) + diam(C_j)) / d(C_i, C_j)
/// where d is average linkage by default. Lower is better. Throws
/// DegenerateClustering with fewer than two non-empty clusters or when two
/// clusters are at distance 0.
double db_index(const SessionMatrix& matrix, const Clustering& clustering,
                Linkage linkage = Linkage::average);

/// Dunn's index: smallest single-linkage distance between two clusters over
/// the largest diameter. Higher is better. Throws DegenerateClustering with
/// fewer than two non-empty clusters or when every diameter is 0.
double dunn_index(const SessionMatrix& matrix, const Clustering& clustering);

/// Ground-truth class per matrix row; rows without a class hold nullopt.
struct ClassLabels {
  std::vector<std::optional<std::string>> class_of_row;
};

/// Reads `session_id,class` rows (header required) and aligns them with the
/// matrix. Ids that are not in the matrix are ignored.
ClassLabels read_labels_csv(std::istream& in, const SessionMatrix& matrix);

struct PairScore {
  std::string class_id;
  std::size_t cluster = 0;
  std::size_t overlap = 0;  ///< sessions of the class inside the cluster
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;
};

struct ExternalMeasures {
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;
  /// Every (class, non-empty cluster) pair, classes in lexicographic order.
  std::vector<PairScore> table;
};

/// Precision, recall and F-measure over the assigned rows. For class i and
/// cluster j: R = x_ij / x_i, P = x_ij / x_j, F = 2PR / (P + R) (0 when
/// P + R = 0). Overall F is the class-size weighted mean of each class's best
/// F; overall P and R are the class-size weighted P and R at that best
/// cluster (ties to the lowest cluster index). Throws std::invalid_argument
/// if an assigned row has no class.
ExternalMeasures external_measures(const Clustering& clustering, const ClassLabels& labels);

/// A metric value or the reason it could not be computed.
struct MetricValue {
  std::optional<double> value;
  std::string error;
};

struct MetricsReport {
  MetricValue db;
  MetricValue dunn;
  MetricValue precision;
  MetricValue recall;
  MetricValue f_measure;
  std::vector<PairScore> table;
  std::size_t k_effective = 0;
  std::size_t scored_sessions = 0;
};

/// All five measures; failures are recorded per metric instead of thrown.
/// External measures are reported as unavailable when labels is null.
MetricsReport evaluate(const SessionMatrix& matrix, const Clustering& clustering,
                       const ClassLabels* labels, Linkage linkage = Linkage::average);

}  // namespace kra
