#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "kra/clustering.hpp"
#include "kra/matrix.hpp"

namespace kra {

/// 2x2 co-occurrence counts between two binary vectors a and b:
/// q = both 1, r = a only, s = b only, t = both 0.
struct ContingencyCounts {
  std::size_t q = 0;
  std::size_t r = 0;
  std::size_t s = 0;
  std::size_t t = 0;

  std::size_t total() const { return q + r + s + t; }
  friend bool operator==(const ContingencyCounts&, const ContingencyCounts&) = default;
};

/// Throws std::invalid_argument when the sizes differ.
ContingencyCounts contingency(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

/// (r + s) / (q + r + s), ignoring t. Two all-zero vectors give 0.
double pair_dissimilarity(const ContingencyCounts& counts);

/// Symmetric, zero-diagonal matrix of pair dissimilarities within a cluster.
class DissimilarityMatrix {
 public:
  DissimilarityMatrix() = default;
  explicit DissimilarityMatrix(std::size_t size) : size_(size), cells_(size * size, 0.0) {}

  std::size_t size() const { return size_; }
  double at(std::size_t i, std::size_t j) const { return cells_[i * size_ + j]; }
  void set(std::size_t i, std::size_t j, double value) {
    cells_[i * size_ + j] = value;
    cells_[j * size_ + i] = value;
  }

 private:
  std::size_t size_ = 0;
  std::vector<double> cells_;
};

/// SDM over the given member rows, in member order.
DissimilarityMatrix build_sdm(const SessionMatrix& matrix, std::span<const std::size_t> members);

/// Knockout parameters. A session is removed when more than `count_limit` of
/// its cluster-mates are at dissimilarity strictly greater than `threshold`.
struct KnockoutParams {
  double threshold = 0.3;
  std::size_t count_limit = 2;

  /// Throws std::invalid_argument unless threshold is in [0, 1].
  void validate() const;
};

struct KnockoutResult {
  std::vector<std::size_t> kept;
  std::vector<std::size_t> removed;
  /// Over-threshold pair count per member, aligned with the input members.
  std::vector<std::size_t> counts;
};

/// Single pass over the original SDM: counts are never recomputed after a
/// removal. `members` gives the ids reported in kept/removed and must have
/// sdm.size() entries.
KnockoutResult knockout(const DissimilarityMatrix& sdm, std::span<const std::size_t> members,
                        const KnockoutParams& params);

struct ClusterRefinement {
  std::size_t cluster = 0;
  std::vector<std::int64_t> kept_ids;
  std::vector<std::int64_t> removed_ids;
  /// (session id, over-threshold count) for every original member.
  std::vector<std::pair<std::int64_t, std::size_t>> counts;
};

struct RefinementReport {
  KnockoutParams params;
  std::vector<ClusterRefinement> clusters;

  std::size_t removed_total() const;
};

struct RefineResult {
  Clustering refined;
  RefinementReport report;
};

/// Runs build_sdm + knockout on every cluster. Removed rows become
/// unassigned; k is unchanged even if a cluster empties.
RefineResult refine(const SessionMatrix& matrix, const Clustering& clustering,
                    const KnockoutParams& params = {});

/// Debug dump: header `session_id,<id_1>,...` then one row per member.
void write_sdm_csv(std::ostream& out, const DissimilarityMatrix& sdm,
                   std::span<const std::int64_t> ids);

}  // namespace kra
