#pragma once

// Brute-force reference implementations used only by tests. They work on
// plain nested vectors and recompute everything from scratch, sharing no code
// with the library.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iterator>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using Rows = std::vector<std::vector<int>>;

inline double distance(const std::vector<int>& a, const std::vector<int>& b) {
  long differing = 0;
  for (std::size_t k = 0; k < a.size(); ++k) differing += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(static_cast<double>(differing));
}

/// Cluster label -> rows, for labels >= 0 (negative means unassigned).
inline std::map<int, std::vector<std::size_t>> groups(const std::vector<int>& labels) {
  std::map<int, std::vector<std::size_t>> g;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] >= 0) g[labels[i]].push_back(i);
  return g;
}

inline double diam(const Rows& rows, const std::vector<std::size_t>& c) {
  double d = 0.0;
  for (auto i : c)
    for (auto j : c) d = std::max(d, distance(rows[i], rows[j]));
  return d;
}

inline double db(const Rows& rows, const std::vector<int>& labels) {
  const auto g = groups(labels);
  std::vector<std::vector<std::size_t>> cs;
  for (const auto& [_, c] : g) cs.push_back(c);
  double total = 0.0;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    double worst = 0.0;
    for (std::size_t j = 0; j < cs.size(); ++j) {
      if (i == j) continue;
      double sum = 0.0;
      for (auto a : cs[i])
        for (auto b : cs[j]) sum += distance(rows[a], rows[b]);
      const double avg = sum / static_cast<double>(cs[i].size() * cs[j].size());
      worst = std::max(worst, (diam(rows, cs[i]) + diam(rows, cs[j])) / avg);
    }
    total += worst;
  }
  return total / static_cast<double>(cs.size());
}

inline double dunn(const Rows& rows, const std::vector<int>& labels) {
  double min_sep = std::numeric_limits<double>::infinity();
  double max_diam = 0.0;
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = 0; b < rows.size(); ++b) {
      if (labels[a] < 0 || labels[b] < 0) continue;
      const double d = distance(rows[a], rows[b]);
      if (labels[a] == labels[b]) max_diam = std::max(max_diam, d);
      else min_sep = std::min(min_sep, d);
    }
  }
  return min_sep / max_diam;
}

struct External {
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;
};

/// Counts x_ij, x_i, x_j by scanning the rows for every (class, cluster).
inline External external(const std::vector<int>& labels, const std::vector<std::string>& classes) {
  std::set<std::string> class_set;
  std::set<int> cluster_set;
  std::size_t n = 0;
  for (std::size_t r = 0; r < labels.size(); ++r) {
    if (labels[r] < 0) continue;
    class_set.insert(classes[r]);
    cluster_set.insert(labels[r]);
    ++n;
  }
  External out;
  for (const auto& cls : class_set) {
    double best_f = -1.0, best_p = 0.0, best_r = 0.0;
    std::size_t xi = 0;
    for (std::size_t r = 0; r < labels.size(); ++r) xi += labels[r] >= 0 && classes[r] == cls;
    for (int cl : cluster_set) {
      std::size_t xij = 0, xj = 0;
      for (std::size_t r = 0; r < labels.size(); ++r) {
        if (labels[r] != cl) continue;
        ++xj;
        xij += classes[r] == cls;
      }
      const double rec = static_cast<double>(xij) / static_cast<double>(xi);
      const double prec = static_cast<double>(xij) / static_cast<double>(xj);
      const double f = prec + rec > 0 ? 2 * prec * rec / (prec + rec) : 0.0;
      if (f > best_f) {
        best_f = f;
        best_p = prec;
        best_r = rec;
      }
    }
    const double w = static_cast<double>(xi) / static_cast<double>(n);
    out.f += w * best_f;
    out.precision += w * best_p;
    out.recall += w * best_r;
  }
  return out;
}

/// |A △ B| / |A ∪ B| over the supports (equal to 1 - |A ∩ B| / |A ∪ B|, but
/// a single rounding); 0 when both are empty.
inline double jaccard_distance(const std::vector<int>& a, const std::vector<int>& b) {
  std::set<std::size_t> sa, sb, uni, sym;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k]) sa.insert(k);
    if (b[k]) sb.insert(k);
  }
  std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::inserter(uni, uni.end()));
  std::set_symmetric_difference(sa.begin(), sa.end(), sb.begin(), sb.end(), std::inserter(sym, sym.end()));
  if (uni.empty()) return 0.0;
  return static_cast<double>(sym.size()) / static_cast<double>(uni.size());
}

}  // namespace oracle
