#include "kra/clustering.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace kra {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kmeans: return "kmeans";
    case Method::som: return "som";
    case Method::refined: return "refined";
  }
  return "unknown";
}

Clustering::Clustering(std::size_t k, std::vector<std::size_t> labels, Method method)
    : k_(k), labels_(std::move(labels)), method_(method), members_(k) {
  for (std::size_t row = 0; row < labels_.size(); ++row) {
    const std::size_t label = labels_[row];
    if (label == kUnassigned) continue;
    if (label >= k_) {
      throw std::invalid_argument("Clustering: label " + std::to_string(label) + " at row " +
                                  std::to_string(row) + " is not below k=" + std::to_string(k_));
    }
    members_[label].push_back(row);
  }
}

std::size_t Clustering::non_empty_count() const {
  return static_cast<std::size_t>(
      std::ranges::count_if(members_, [](const auto& m) { return !m.empty(); }));
}

std::size_t Clustering::assigned_count() const {
  return static_cast<std::size_t>(
      std::ranges::count_if(labels_, [](std::size_t l) { return l != kUnassigned; }));
}

}  // namespace kra
