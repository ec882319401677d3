#include "doitk/matrix.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "doitk/error.hpp"
#include "doitk/io.hpp"

namespace doitk {

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

double DenseMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> t) {
  for (const auto& e : t) {
    if (e.row >= rows || e.col >= cols)
      throw DataError("sparse matrix: entry (" + std::to_string(e.row) + "," +
                      std::to_string(e.col) + ") outside " + std::to_string(rows) + "x" +
                      std::to_string(cols));
    if (!std::isfinite(e.value)) throw DataError("sparse matrix: non-finite value");
  }
  std::sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
  std::vector<Triplet> merged;
  merged.reserve(t.size());
  for (const auto& e : t) {
    if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col)
      merged.back().value += e.value;
    else
      merged.push_back(e);
  }
  std::erase_if(merged, [](const Triplet& e) { return e.value == 0.0; });

  SparseMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.col_ptr_.assign(cols + 1, 0);
  m.row_ptr_.assign(rows + 1, 0);
  for (const auto& e : merged) {
    ++m.col_ptr_[e.col + 1];
    ++m.row_ptr_[e.row + 1];
  }
  for (std::size_t c = 0; c < cols; ++c) m.col_ptr_[c + 1] += m.col_ptr_[c];
  for (std::size_t r = 0; r < rows; ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];
  m.row_index_.reserve(merged.size());
  m.col_values_.reserve(merged.size());
  for (const auto& e : merged) {
    m.row_index_.push_back(e.row);
    m.col_values_.push_back(e.value);
  }
  m.col_index_.resize(merged.size());
  m.row_values_.resize(merged.size());
  std::vector<std::size_t> fill(m.row_ptr_.begin(), m.row_ptr_.end() - 1);
  // Column-major traversal leaves each CSR row sorted by column.
  for (const auto& e : merged) {
    std::size_t p = fill[e.row]++;
    m.col_index_[p] = e.col;
    m.row_values_[p] = e.value;
  }
  return m;
}

std::vector<Triplet> SparseMatrix::triplets() const {
  std::vector<Triplet> out;
  out.reserve(nnz());
  for (std::size_t c = 0; c < cols_; ++c)
    for (std::size_t p = col_ptr_[c]; p < col_ptr_[c + 1]; ++p)
      out.push_back({row_index_[p], static_cast<std::uint32_t>(c), col_values_[p]});
  return out;
}

DenseMatrix SparseMatrix::to_dense() const {
  DenseMatrix d(rows_, cols_);
  for (std::size_t c = 0; c < cols_; ++c)
    for (std::size_t p = col_ptr_[c]; p < col_ptr_[c + 1]; ++p) d(row_index_[p], c) = col_values_[p];
  return d;
}

double SparseMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : col_values_) s += v * v;
  return std::sqrt(s);
}

double SparseMatrix::mean() const {
  if (rows_ == 0 || cols_ == 0) return 0.0;
  double s = 0.0;
  for (double v : col_values_) s += v;
  return s / (static_cast<double>(rows_) * static_cast<double>(cols_));
}

namespace {

template <typename T>
T parse_number(std::string_view tok, std::size_t line) {
  T v{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw DataError("triplets: bad number '" + std::string(tok) + "' on line " + std::to_string(line));
  return v;
}

std::vector<std::string_view> fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

struct Parsed {
  std::size_t rows, cols;
  std::vector<Triplet> entries;
};

Parsed parse(std::string_view text) {
  auto lines = io::split(text, '\n');
  std::size_t ln = 0;
  while (ln < lines.size() && io::trim(lines[ln]).empty()) ++ln;
  if (ln == lines.size()) throw DataError("triplets: missing header");
  auto head = fields(lines[ln]);
  if (head.size() != 3) throw DataError("triplets: header must be 'm n nnz'");
  Parsed p;
  p.rows = parse_number<std::size_t>(head[0], ln + 1);
  p.cols = parse_number<std::size_t>(head[1], ln + 1);
  auto nnz = parse_number<std::size_t>(head[2], ln + 1);
  p.entries.reserve(nnz);
  for (++ln; ln < lines.size(); ++ln) {
    auto f = fields(lines[ln]);
    if (f.empty()) continue;
    if (f.size() != 3) throw DataError("triplets: expected 'row col value' on line " + std::to_string(ln + 1));
    p.entries.push_back({parse_number<std::uint32_t>(f[0], ln + 1), parse_number<std::uint32_t>(f[1], ln + 1),
                         parse_number<double>(f[2], ln + 1)});
  }
  if (p.entries.size() != nnz)
    throw DataError("triplets: header declares " + std::to_string(nnz) + " entries, found " +
                    std::to_string(p.entries.size()));
  return p;
}

}  // namespace

std::string write_triplets(const SparseMatrix& m) {
  std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + " " +
                    std::to_string(m.nnz()) + "\n";
  for (const auto& t : m.triplets()) {
    out += std::to_string(t.row);
    out += ' ';
    out += std::to_string(t.col);
    out += ' ';
    out += io::format_double(t.value);
    out += '\n';
  }
  return out;
}

SparseMatrix read_triplets(std::string_view text) {
  auto p = parse(text);
  return SparseMatrix::from_triplets(p.rows, p.cols, std::move(p.entries));
}

std::string write_triplets(const DenseMatrix& m, double threshold) {
  std::string body;
  std::size_t nnz = 0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
      double v = m(r, c);
      if (v > threshold) {
        body += std::to_string(r);
        body += ' ';
        body += std::to_string(c);
        body += ' ';
        body += io::format_double(v);
        body += '\n';
        ++nnz;
      }
    }
  }
  return std::to_string(m.rows()) + " " + std::to_string(m.cols()) + " " + std::to_string(nnz) + "\n" + body;
}

DenseMatrix read_dense_triplets(std::string_view text) {
  auto p = parse(text);
  DenseMatrix d(p.rows, p.cols);
  for (const auto& e : p.entries) {
    if (e.row >= p.rows || e.col >= p.cols) throw DataError("triplets: entry outside matrix bounds");
    d(e.row, e.col) = e.value;
  }
  return d;
}

}  // namespace doitk
