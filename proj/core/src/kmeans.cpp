#include "kra/kmeans.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "kra/distance.hpp"
#include "kra/random.hpp"

namespace kra {

Centroids init_centroids(const SessionMatrix& matrix, std::size_t k, std::uint64_t seed) {
  if (k == 0) throw std::invalid_argument("init_centroids: k must be >= 1");
  if (k > matrix.rows()) {
    throw std::invalid_argument("init_centroids: k=" + std::to_string(k) + " exceeds " +
                                std::to_string(matrix.rows()) + " rows");
  }

  // First occurrence of every distinct row value.
  std::vector<std::size_t> distinct;
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    const auto r = matrix.row(i);
    if (seen.emplace(r.begin(), r.end()).second) distinct.push_back(i);
  }
  if (k > distinct.size()) {
    throw std::invalid_argument("init_centroids: k=" + std::to_string(k) + " exceeds " +
                                std::to_string(distinct.size()) + " distinct rows");
  }

  Rng rng(seed);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + uniform_index(rng, distinct.size() - i);
    std::swap(distinct[i], distinct[j]);
  }

  Centroids out;
  out.vectors.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto r = matrix.row(distinct[i]);
    out.vectors.emplace_back(r.begin(), r.end());
  }
  return out;
}

std::vector<std::size_t> assign(const SessionMatrix& matrix, const Centroids& centroids) {
  if (centroids.k() == 0) throw std::invalid_argument("assign: no centroids");
  if (centroids.dim() != matrix.cols()) throw std::invalid_argument("assign: dimension mismatch");
  std::vector<std::size_t> labels(matrix.rows(), 0);
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    const auto row = matrix.row(i);
    double best = squared_euclidean(row, centroids[0]);
    for (std::size_t j = 1; j < centroids.k(); ++j) {
      const double d = squared_euclidean(row, centroids[j]);
      if (d < best) {
        best = d;
        labels[i] = j;
      }
    }
  }
  return labels;
}

Centroids update_centroids(const SessionMatrix& matrix, std::span<const std::size_t> labels,
                           const Centroids& previous) {
  const std::size_t k = previous.k();
  const std::size_t m = matrix.cols();
  if (labels.size() != matrix.rows()) throw std::invalid_argument("update_centroids: label count");

  std::vector<std::vector<double>> sums(k, std::vector<double>(m, 0.0));
  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    const std::size_t l = labels[i];
    if (l == Clustering::kUnassigned) continue;
    if (l >= k) throw std::invalid_argument("update_centroids: label out of range");
    const auto row = matrix.row(i);
    for (std::size_t c = 0; c < m; ++c) sums[l][c] += row[c];
    ++sizes[l];
  }

  Centroids out;
  out.vectors.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    if (sizes[j] == 0) {
      out.vectors.push_back(previous.vectors[j]);
      continue;
    }
    for (auto& v : sums[j]) v /= static_cast<double>(sizes[j]);
    out.vectors.push_back(std::move(sums[j]));
  }
  return out;
}

double objective(const SessionMatrix& matrix, const Clustering& clustering,
                 const Centroids& centroids) {
  if (clustering.rows() != matrix.rows() || clustering.k() != centroids.k())
    throw std::invalid_argument("objective: inconsistent shapes");
  double j = 0.0;
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    if (!clustering.assigned(i)) continue;
    j += squared_euclidean(matrix.row(i), centroids[clustering.label(i)]);
  }
  return j;
}

KMeansResult kmeans_run(const SessionMatrix& matrix, std::size_t k, std::uint64_t seed,
                        std::size_t max_iter) {
  if (max_iter == 0) throw std::invalid_argument("kmeans_run: max_iter must be >= 1");

  KMeansResult result;
  result.centroids = init_centroids(matrix, k, seed);
  std::vector<std::size_t> labels = assign(matrix, result.centroids);

  for (std::size_t it = 1; it <= max_iter; ++it) {
    result.centroids = update_centroids(matrix, labels, result.centroids);
    const double j = objective(matrix, Clustering(k, labels, Method::kmeans), result.centroids);
    if (!result.objective_trace.empty()) {
      const double prev = result.objective_trace.back();
      if (j > prev + 1e-9 * std::max(1.0, prev))
        throw std::logic_error("kmeans_run: objective increased at iteration " + std::to_string(it));
    }
    result.objective_trace.push_back(j);
    result.iterations = it;

    auto next = assign(matrix, result.centroids);
    if (next == labels) {
      result.converged = true;
      break;
    }
    // On the last iteration keep the labels the centroids were fitted to.
    if (it == max_iter) break;
    labels = std::move(next);
  }

  result.clustering = Clustering(k, std::move(labels), Method::kmeans);
  return result;
}

}  // namespace kra
