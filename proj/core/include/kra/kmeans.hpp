#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "kra/clustering.hpp"
#include "kra/matrix.hpp"

namespace kra {

/// k real-valued centres of dimension m.
struct Centroids {
  std::vector<std::vector<double>> vectors;

  std::size_t k() const { return vectors.size(); }
  std::size_t dim() const { return vectors.empty() ? 0 : vectors.front().size(); }
  std::span<const double> operator[](std::size_t j) const { return vectors[j]; }
};

/// Forgy initialisation: k distinct row values drawn uniformly without
/// replacement under `seed`. Throws std::invalid_argument if k is 0, exceeds
/// the row count, or exceeds the number of distinct rows.
Centroids init_centroids(const SessionMatrix& matrix, std::size_t k, std::uint64_t seed);

/// Index of the nearest centroid per row; ties go to the lowest index.
std::vector<std::size_t> assign(const SessionMatrix& matrix, const Centroids& centroids);

/// Coordinate-wise mean of each cluster's rows. A cluster with no rows keeps
/// its centroid from `previous`, which also fixes k.
Centroids update_centroids(const SessionMatrix& matrix, std::span<const std::size_t> labels,
                           const Centroids& previous);

/// Sum over rows of the squared Euclidean distance to the row's centroid.
/// Unassigned rows contribute nothing.
double objective(const SessionMatrix& matrix, const Clustering& clustering,
                 const Centroids& centroids);

struct KMeansResult {
  Clustering clustering;
  Centroids centroids;
  std::size_t iterations = 0;
  /// True when labels reached a fixed point; false when max_iter was hit.
  bool converged = false;
  /// Objective after each centroid update, one entry per iteration.
  std::vector<double> objective_trace;

  double final_objective() const { return objective_trace.empty() ? 0.0 : objective_trace.back(); }
};

inline constexpr std::size_t kDefaultMaxIterations = 100;

/// Lloyd iterations from a seeded Forgy start until the labels stop changing
/// or max_iter iterations have run. Throws std::logic_error if the objective
/// ever increases (beyond rounding), which would indicate a bug.
KMeansResult kmeans_run(const SessionMatrix& matrix, std::size_t k, std::uint64_t seed,
                        std::size_t max_iter = kDefaultMaxIterations);

}  // namespace kra
