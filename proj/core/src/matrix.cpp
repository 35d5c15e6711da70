#include "kra/matrix.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string_view>
#include <unordered_set>

#include "kra/distance.hpp"
#include "kra/error.hpp"

namespace kra {

PageCatalog::PageCatalog(std::vector<std::string> urls, std::vector<std::size_t> frequency)
    : urls_(std::move(urls)), frequency_(std::move(frequency)) {
  if (urls_.size() != frequency_.size())
    throw std::invalid_argument("PageCatalog: urls and frequency differ in length");
  for (std::size_t i = 1; i < urls_.size(); ++i) {
    if (!(urls_[i - 1] < urls_[i]))
      throw std::invalid_argument("PageCatalog: urls must be strictly sorted: '" + urls_[i] + "'");
  }
  if (std::ranges::any_of(frequency_, [](std::size_t f) { return f < 1; }))
    throw std::invalid_argument("PageCatalog: frequencies must be >= 1");
}

std::optional<std::size_t> PageCatalog::index_of(std::string_view url) const {
  const auto it = std::lower_bound(urls_.begin(), urls_.end(), url);
  if (it == urls_.end() || *it != url) return std::nullopt;
  return static_cast<std::size_t>(it - urls_.begin());
}

SessionMatrix::SessionMatrix(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> cells,
                             std::vector<std::int64_t> row_ids, std::vector<std::string> col_ids)
    : rows_(rows),
      cols_(cols),
      cells_(std::move(cells)),
      row_ids_(std::move(row_ids)),
      col_ids_(std::move(col_ids)) {
  if (cells_.size() != rows_ * cols_) throw std::invalid_argument("SessionMatrix: cell count mismatch");
  if (row_ids_.size() != rows_) throw std::invalid_argument("SessionMatrix: row id count mismatch");
  if (col_ids_.size() != cols_) throw std::invalid_argument("SessionMatrix: column id count mismatch");
  if (std::ranges::any_of(cells_, [](std::uint8_t c) { return c > 1; }))
    throw std::invalid_argument("SessionMatrix: cells must be 0 or 1");
  std::unordered_set<std::int64_t> seen(row_ids_.begin(), row_ids_.end());
  if (seen.size() != row_ids_.size()) throw std::invalid_argument("SessionMatrix: duplicate row id");
  std::unordered_set<std::string> seen_cols(col_ids_.begin(), col_ids_.end());
  if (seen_cols.size() != col_ids_.size())
    throw std::invalid_argument("SessionMatrix: duplicate column id");
}

SessionMatrix SessionMatrix::from_rows(const std::vector<std::vector<std::uint8_t>>& rows) {
  const std::size_t n = rows.size();
  const std::size_t m = n == 0 ? 0 : rows.front().size();
  std::vector<std::uint8_t> cells;
  cells.reserve(n * m);
  for (const auto& r : rows) {
    if (r.size() != m) throw std::invalid_argument("SessionMatrix::from_rows: ragged rows");
    cells.insert(cells.end(), r.begin(), r.end());
  }
  std::vector<std::int64_t> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<std::int64_t>(i) + 1;
  std::vector<std::string> cols(m);
  for (std::size_t j = 0; j < m; ++j) cols[j] = "p" + std::to_string(j);
  return SessionMatrix(n, m, std::move(cells), std::move(ids), std::move(cols));
}

std::optional<std::size_t> SessionMatrix::row_index_of(std::int64_t session_id) const {
  const auto it = std::find(row_ids_.begin(), row_ids_.end(), session_id);
  if (it == row_ids_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - row_ids_.begin());
}

bool SessionMatrix::has_empty_row() const {
  for (std::size_t i = 0; i < rows_; ++i) {
    const auto r = row(i);
    if (std::ranges::none_of(r, [](std::uint8_t c) { return c != 0; })) return true;
  }
  return false;
}

SessionMatrix build_matrix(const std::vector<Session>& sessions, const PageCatalog& catalog) {
  const std::size_t n = sessions.size();
  const std::size_t m = catalog.size();
  std::vector<std::uint8_t> cells(n * m, 0);
  std::vector<std::int64_t> ids;
  ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ids.push_back(sessions[i].session_id);
    for (const auto& view : sessions[i].views) {
      const auto j = catalog.index_of(view.url);
      if (!j) {
        throw DataError("build_matrix: session " + std::to_string(sessions[i].session_id) +
                        " references url '" + view.url + "' missing from the catalog");
      }
      cells[i * m + *j] = 1;
    }
  }
  return SessionMatrix(n, m, std::move(cells), std::move(ids), catalog.urls());
}

double row_distance(const SessionMatrix& matrix, std::size_t i, std::size_t j) {
  if (i >= matrix.rows() || j >= matrix.rows())
    throw std::out_of_range("row_distance: row index out of range");
  return euclidean(matrix.row(i), matrix.row(j));
}

void write_matrix_csv(std::ostream& out, const SessionMatrix& matrix) {
  out << "session_id";
  for (const auto& url : matrix.col_ids()) out << ',' << url;
  out << '\n';
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    out << matrix.row_ids()[i];
    for (const auto cell : matrix.row(i)) out << ',' << static_cast<int>(cell);
    out << '\n';
  }
}

SessionMatrix read_matrix_csv(std::istream& in) {
  auto fail = [](std::size_t line, const std::string& what) -> DataError {
    return DataError("matrix: line " + std::to_string(line) + ": " + what);
  };

  std::string line;
  if (!std::getline(in, line)) throw DataError("matrix: missing header (empty input)");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::vector<std::string> header;
  {
    std::size_t begin = 0;
    while (true) {
      const auto pos = line.find(',', begin);
      header.push_back(line.substr(begin, pos == std::string::npos ? std::string::npos : pos - begin));
      if (pos == std::string::npos) break;
      begin = pos + 1;
    }
  }
  if (header.front() != "session_id") throw fail(1, "header must start with session_id");
  std::vector<std::string> cols(header.begin() + 1, header.end());
  const std::size_t m = cols.size();

  std::vector<std::uint8_t> cells;
  std::vector<std::int64_t> ids;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::string_view rest = line;
    const auto comma = rest.find(',');
    const std::string id_text(rest.substr(0, comma));
    std::int64_t id = 0;
    try {
      std::size_t used = 0;
      id = std::stoll(id_text, &used);
      if (used != id_text.size()) throw std::invalid_argument(id_text);
    } catch (const std::exception&) {
      throw fail(line_no, "bad session_id '" + id_text + "'");
    }
    std::size_t count = 0;
    bool any = false;
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    if (m > 0) {
      while (true) {
        const auto pos = rest.find(',');
        const auto field = rest.substr(0, pos);
        if (field != "0" && field != "1") throw fail(line_no, "cell must be 0 or 1");
        cells.push_back(field == "1" ? 1 : 0);
        any = any || field == "1";
        ++count;
        if (pos == std::string_view::npos) break;
        rest = rest.substr(pos + 1);
      }
    }
    if (count != m) throw fail(line_no, "expected " + std::to_string(m) + " cells");
    if (!any) throw fail(line_no, "session has no page views");
    ids.push_back(id);
  }

  const std::size_t n = ids.size();
  try {
    return SessionMatrix(n, m, std::move(cells), std::move(ids), std::move(cols));
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("matrix: ") + e.what());
  }
}

}  // namespace kra
