#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

namespace kra {

enum class Method { kmeans, som, refined };

std::string_view to_string(Method method);

/// A labeling of matrix rows into clusters 0..k-1. Rows may be left
/// unassigned (kUnassigned), which is how knocked-out sessions are
/// represented in a refined clustering. Clusters may be empty.
class Clustering {
 public:
  static constexpr std::size_t kUnassigned = std::numeric_limits<std::size_t>::max();

  Clustering() = default;
  /// Throws std::invalid_argument if a label is neither < k nor kUnassigned.
  Clustering(std::size_t k, std::vector<std::size_t> labels, Method method);

  std::size_t k() const { return k_; }
  Method method() const { return method_; }
  std::size_t rows() const { return labels_.size(); }
  const std::vector<std::size_t>& labels() const { return labels_; }
  std::size_t label(std::size_t row) const { return labels_[row]; }
  bool assigned(std::size_t row) const { return labels_[row] != kUnassigned; }

  /// Row indices per cluster, ascending.
  const std::vector<std::vector<std::size_t>>& members() const { return members_; }
  std::span<const std::size_t> members(std::size_t cluster) const { return members_[cluster]; }

  std::size_t non_empty_count() const;
  std::size_t assigned_count() const;

 private:
  std::size_t k_ = 0;
  std::vector<std::size_t> labels_;
  Method method_ = Method::kmeans;
  std::vector<std::vector<std::size_t>> members_;
};

}  // namespace kra
