#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kra {

/// The page dimension of the session matrix: unique urls in strictly
/// increasing lexicographic order, each with its total view count.
class PageCatalog {
 public:
  PageCatalog() = default;
  /// Throws std::invalid_argument unless urls are strictly sorted, sizes
  /// match and every frequency is at least 1.
  PageCatalog(std::vector<std::string> urls, std::vector<std::size_t> frequency);

  std::size_t size() const { return urls_.size(); }
  bool empty() const { return urls_.empty(); }
  const std::vector<std::string>& urls() const { return urls_; }
  const std::vector<std::size_t>& frequency() const { return frequency_; }

  std::optional<std::size_t> index_of(std::string_view url) const;

 private:
  std::vector<std::string> urls_;
  std::vector<std::size_t> frequency_;
};

}  // namespace kra
