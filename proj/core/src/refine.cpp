#include "kra/refine.hpp"

#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

namespace kra {

ContingencyCounts contingency(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("contingency: vectors of length " + std::to_string(a.size()) +
                                " and " + std::to_string(b.size()));
  }
  ContingencyCounts c;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const bool x = a[k] != 0;
    const bool y = b[k] != 0;
    if (x && y) ++c.q;
    else if (x) ++c.r;
    else if (y) ++c.s;
    else ++c.t;
  }
  return c;
}

double pair_dissimilarity(const ContingencyCounts& counts) {
  const std::size_t denom = counts.q + counts.r + counts.s;
  if (denom == 0) return 0.0;
  return static_cast<double>(counts.r + counts.s) / static_cast<double>(denom);
}

DissimilarityMatrix build_sdm(const SessionMatrix& matrix, std::span<const std::size_t> members) {
  DissimilarityMatrix sdm(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i] >= matrix.rows()) throw std::out_of_range("build_sdm: member row out of range");
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      sdm.set(i, j, pair_dissimilarity(contingency(matrix.row(members[i]), matrix.row(members[j]))));
    }
  }
  return sdm;
}

void KnockoutParams::validate() const {
  if (!(threshold >= 0.0 && threshold <= 1.0))
    throw std::invalid_argument("knockout: threshold must be in [0, 1]");
}

KnockoutResult knockout(const DissimilarityMatrix& sdm, std::span<const std::size_t> members,
                        const KnockoutParams& params) {
  params.validate();
  if (members.size() != sdm.size()) throw std::invalid_argument("knockout: members/SDM size mismatch");

  KnockoutResult out;
  out.counts.assign(sdm.size(), 0);
  for (std::size_t i = 0; i < sdm.size(); ++i) {
    for (std::size_t j = 0; j < sdm.size(); ++j) {
      if (j != i && sdm.at(i, j) > params.threshold) ++out.counts[i];
    }
  }
  for (std::size_t i = 0; i < sdm.size(); ++i) {
    (out.counts[i] > params.count_limit ? out.removed : out.kept).push_back(members[i]);
  }
  return out;
}

std::size_t RefinementReport::removed_total() const {
  std::size_t total = 0;
  for (const auto& c : clusters) total += c.removed_ids.size();
  return total;
}

RefineResult refine(const SessionMatrix& matrix, const Clustering& clustering,
                    const KnockoutParams& params) {
  params.validate();
  if (clustering.rows() != matrix.rows())
    throw std::invalid_argument("refine: clustering does not cover the matrix rows");

  std::vector<std::size_t> labels = clustering.labels();
  RefinementReport report{params, {}};
  report.clusters.reserve(clustering.k());

  const auto& ids = matrix.row_ids();
  for (std::size_t c = 0; c < clustering.k(); ++c) {
    const auto members = clustering.members(c);
    const auto result = knockout(build_sdm(matrix, members), members, params);

    ClusterRefinement entry;
    entry.cluster = c;
    for (const auto row : result.kept) entry.kept_ids.push_back(ids[row]);
    for (const auto row : result.removed) {
      entry.removed_ids.push_back(ids[row]);
      labels[row] = Clustering::kUnassigned;
    }
    for (std::size_t i = 0; i < members.size(); ++i)
      entry.counts.emplace_back(ids[members[i]], result.counts[i]);
    report.clusters.push_back(std::move(entry));
  }

  return {Clustering(clustering.k(), std::move(labels), Method::refined), std::move(report)};
}

void write_sdm_csv(std::ostream& out, const DissimilarityMatrix& sdm,
                   std::span<const std::int64_t> ids) {
  if (ids.size() != sdm.size()) throw std::invalid_argument("write_sdm_csv: id count mismatch");
  out << "session_id";
  for (const auto id : ids) out << ',' << id;
  out << '\n';
  for (std::size_t i = 0; i < sdm.size(); ++i) {
    out << ids[i];
    for (std::size_t j = 0; j < sdm.size(); ++j) out << ',' << fmt::format("{:.6f}", sdm.at(i, j));
    out << '\n';
  }
}

}  // namespace kra
