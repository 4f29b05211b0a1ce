#include "randnla/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace randnla {

namespace {

[[noreturn]] void fail(const std::string& path, long line,
                       const std::string& what) {
  throw ParseError(path + ":" + std::to_string(line) + ": " + what);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool parse_double(const std::string& tok, double& out) {
  const char* begin = tok.data();
  const char* end = begin + tok.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

bool parse_index(const std::string& tok, long& out) {
  const char* begin = tok.data();
  const char* end = begin + tok.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) toks.push_back(tok);
  return toks;
}

DenseMatrix load_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::string line;
  long lineno = 0;

  if (!std::getline(in, line)) fail(path, 1, "empty file");
  ++lineno;
  const auto header = split_ws(lower(line));
  if (header.size() < 4 || header[0] != "%%matrixmarket" ||
      header[1] != "matrix")
    fail(path, lineno, "not a Matrix Market header");
  const std::string& layout = header[2];
  if (layout != "array" && layout != "coordinate")
    fail(path, lineno, "unsupported layout '" + layout + "'");
  if (header[3] != "real" && header[3] != "integer")
    fail(path, lineno, "unsupported field '" + header[3] + "'");
  const bool symmetric =
      header.size() > 4 && header[4] == "symmetric";
  if (header.size() > 4 && header[4] != "general" && !symmetric)
    fail(path, lineno, "unsupported symmetry '" + header[4] + "'");

  // Size line (skipping comments).
  std::vector<std::string> size_toks;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line[0] == '%') continue;
    size_toks = split_ws(line);
    if (!size_toks.empty()) break;
  }
  const bool coordinate = layout == "coordinate";
  const std::size_t expected = coordinate ? 3 : 2;
  if (size_toks.size() != expected) fail(path, lineno, "malformed size line");
  long rows = 0, cols = 0, nnz = 0;
  if (!parse_index(size_toks[0], rows) || !parse_index(size_toks[1], cols) ||
      rows < 0 || cols < 0)
    fail(path, lineno, "malformed size line");
  if (coordinate &&
      (!parse_index(size_toks[2], nnz) || nnz < 0))
    fail(path, lineno, "malformed size line");

  DenseMatrix m = DenseMatrix::Zero(rows, cols);
  if (coordinate) {
    long seen = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line[0] == '%') continue;
      const auto toks = split_ws(line);
      if (toks.empty()) continue;
      if (toks.size() != 3) fail(path, lineno, "expected 'i j value'");
      long i = 0, j = 0;
      double v = 0.0;
      if (!parse_index(toks[0], i) || !parse_index(toks[1], j) ||
          !parse_double(toks[2], v))
        fail(path, lineno, "malformed entry");
      if (i < 1 || i > rows || j < 1 || j > cols)
        fail(path, lineno, "entry index out of bounds");
      m(i - 1, j - 1) = v;
      if (symmetric) m(j - 1, i - 1) = v;
      ++seen;
    }
    if (seen != nnz)
      fail(path, lineno,
           "entry count mismatch: header says " + std::to_string(nnz) +
               ", file has " + std::to_string(seen));
  } else {
    // Array layout: column-major stream of rows*cols values.
    long count = 0;
    const long total = symmetric ? rows * (rows + 1) / 2 : rows * cols;
    long i = 0, j = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line[0] == '%') continue;
      for (const auto& tok : split_ws(line)) {
        double v = 0.0;
        if (!parse_double(tok, v)) fail(path, lineno, "malformed value");
        if (count >= total) fail(path, lineno, "more values than declared");
        m(i, j) = v;
        if (symmetric) m(j, i) = v;
        ++i;
        if (i == rows) {
          ++j;
          i = symmetric ? j : 0;
        }
        ++count;
      }
    }
    if (count != total)
      fail(path, lineno,
           "value count mismatch: expected " + std::to_string(total) +
               ", file has " + std::to_string(count));
  }
  return m;
}

DenseMatrix load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::vector<std::vector<double>> rows;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      // Trim surrounding whitespace.
      const auto first = cell.find_first_not_of(" \t\r");
      const auto last = cell.find_last_not_of(" \t\r");
      if (first == std::string::npos) fail(path, lineno, "empty cell");
      cell = cell.substr(first, last - first + 1);
      double v = 0.0;
      if (!parse_double(cell, v))
        fail(path, lineno, "malformed value '" + cell + "'");
      row.push_back(v);
    }
    if (row.empty()) fail(path, lineno, "empty row");
    if (!rows.empty() && row.size() != rows.front().size())
      fail(path, lineno,
           "row has " + std::to_string(row.size()) + " cells, expected " +
               std::to_string(rows.front().size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(path + ": empty file");
  DenseMatrix m(static_cast<Index>(rows.size()),
                static_cast<Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  return m;
}

void write_value(std::ostream& out, double v) {
  char buf[64];
  auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), v,
                    std::chars_format::general, 17);
  out.write(buf, ptr - buf);
}

}  // namespace

MatrixFormat format_from_path(const std::string& path) {
  const auto dot = path.find_last_of('.');
  const std::string ext =
      dot == std::string::npos ? "" : lower(path.substr(dot + 1));
  return (ext == "mtx" || ext == "mm") ? MatrixFormat::kMatrixMarket
                                       : MatrixFormat::kCsv;
}

DenseMatrix load_matrix(const std::string& path, MatrixFormat format) {
  return format == MatrixFormat::kMatrixMarket ? load_matrix_market(path)
                                               : load_csv(path);
}

DenseMatrix load_matrix(const std::string& path) {
  return load_matrix(path, format_from_path(path));
}

void save_matrix(const DenseMatrix& m, const std::string& path,
                 MatrixFormat format) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  if (format == MatrixFormat::kMatrixMarket) {
    out << "%%MatrixMarket matrix array real general\n";
    out << m.rows() << ' ' << m.cols() << '\n';
    for (Index j = 0; j < m.cols(); ++j)
      for (Index i = 0; i < m.rows(); ++i) {
        write_value(out, m(i, j));
        out << '\n';
      }
  } else {
    for (Index i = 0; i < m.rows(); ++i) {
      for (Index j = 0; j < m.cols(); ++j) {
        if (j > 0) out << ',';
        write_value(out, m(i, j));
      }
      out << '\n';
    }
  }
  if (!out) throw std::runtime_error(path + ": write failure");
}

void save_matrix(const DenseMatrix& m, const std::string& path) {
  save_matrix(m, path, format_from_path(path));
}

}  // namespace randnla
