#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kra/catalog.hpp"
#include "kra/ingest.hpp"

namespace kra {

/// Binary session x page matrix, stored row-major. Cells are 0/1, row ids
/// (session ids) are unique and there is one column id (url) per column.
/// Immutable after construction.
class SessionMatrix {
 public:
  SessionMatrix() = default;
  SessionMatrix(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> cells,
                std::vector<std::int64_t> row_ids, std::vector<std::string> col_ids);

  /// Convenience constructor for fixtures: row ids 1..n, column ids p0..p{m-1}.
  static SessionMatrix from_rows(const std::vector<std::vector<std::uint8_t>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint8_t at(std::size_t i, std::size_t j) const { return cells_[i * cols_ + j]; }
  std::span<const std::uint8_t> row(std::size_t i) const {
    return {cells_.data() + i * cols_, cols_};
  }
  const std::vector<std::int64_t>& row_ids() const { return row_ids_; }
  const std::vector<std::string>& col_ids() const { return col_ids_; }
  std::optional<std::size_t> row_index_of(std::int64_t session_id) const;

  /// True if some row has no 1 cell. Matrices from build_matrix never do.
  bool has_empty_row() const;

  friend bool operator==(const SessionMatrix&, const SessionMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> cells_;
  std::vector<std::int64_t> row_ids_;
  std::vector<std::string> col_ids_;
};

/// cell(i, j) = 1 iff session i viewed catalog url j at least once. Throws
/// DataError if a session references a url missing from the catalog.
SessionMatrix build_matrix(const std::vector<Session>& sessions, const PageCatalog& catalog);

/// Euclidean distance between rows i and j; throws std::out_of_range.
double row_distance(const SessionMatrix& matrix, std::size_t i, std::size_t j);

/// `session_id,<url_1>,...,<url_m>` header then one 0/1 row per session.
void write_matrix_csv(std::ostream& out, const SessionMatrix& matrix);

/// Inverse of write_matrix_csv. Throws DataError with a line number on
/// malformed input, non-binary cells, duplicate ids or all-zero rows.
SessionMatrix read_matrix_csv(std::istream& in);

}  // namespace kra
