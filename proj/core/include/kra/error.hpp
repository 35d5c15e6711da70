#pragma once

#include <stdexcept>
#include <string>

namespace kra {

/// Malformed or inconsistent input data (bad log header, catalog mismatch,
/// unreadable matrix file). The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A clustering on which a validity index is undefined, e.g. fewer than two
/// non-empty clusters or two clusters at zero distance.
class DegenerateClustering : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace kra
