#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <span>

namespace kra {

/// Sum of squared coordinate differences. Works for any mix of binary
/// (uint8_t) and real-valued spans of equal length.
template <typename A, typename B>
double squared_euclidean(std::span<const A> a, std::span<const B> b) {
  assert(a.size() == b.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    sum += d * d;
  }
  return sum;
}

template <typename A, typename B>
double euclidean(std::span<const A> a, std::span<const B> b) {
  return std::sqrt(squared_euclidean(a, b));
}

}  // namespace kra
