#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kra/clustering.hpp"
#include "kra/matrix.hpp"

namespace testing_support {

inline std::vector<std::vector<int>> to_rows(const kra::SessionMatrix& m) {
  std::vector<std::vector<int>> rows(m.rows(), std::vector<int>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m.at(i, j);
  return rows;
}

inline std::vector<int> to_int_labels(const kra::Clustering& c) {
  std::vector<int> out;
  for (const auto l : c.labels()) out.push_back(l == kra::Clustering::kUnassigned ? -1 : static_cast<int>(l));
  return out;
}

/// Random binary matrix; rows may repeat and may be all zero unless
/// `non_empty_rows` is set.
inline kra::SessionMatrix random_matrix(std::mt19937_64& rng, std::size_t n, std::size_t m,
                                        bool non_empty_rows = false, double density = 0.4) {
  std::bernoulli_distribution bit(density);
  std::uniform_int_distribution<std::size_t> col(0, m - 1);
  std::vector<std::vector<std::uint8_t>> rows(n, std::vector<std::uint8_t>(m));
  for (auto& r : rows) {
    for (auto& c : r) c = bit(rng) ? 1 : 0;
    if (non_empty_rows) r[col(rng)] = 1;
  }
  return kra::SessionMatrix::from_rows(rows);
}

/// Labels in [0, k) with every cluster non-empty (requires n >= k).
inline std::vector<std::size_t> random_labels(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  std::vector<std::size_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = i < k ? i : std::uniform_int_distribution<std::size_t>(0, k - 1)(rng);
  std::shuffle(labels.begin(), labels.end(), rng);
  return labels;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("kra-test-" + tag + "-" + std::to_string(std::random_device{}()));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace testing_support
