#include "fracperc/int_matrix.hpp"

#include <sstream>

#include "fracperc/errors.hpp"

namespace fracperc {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, BigInt(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw InputError("ragged matrix literal");
    for (long v : row) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

BigInt IntMatrix::entry_sum() const {
  BigInt s = 0;
  for (const auto& v : data_) s += v;
  return s;
}

std::vector<BigInt> IntMatrix::column_sums() const {
  std::vector<BigInt> out(cols_, BigInt(0));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[c] += (*this)(r, c);
  return out;
}

std::vector<BigInt> IntMatrix::row_sums() const {
  std::vector<BigInt> out(rows_, BigInt(0));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c);
  return out;
}

bool IntMatrix::has_positive_row() const {
  for (std::size_t r = 0; r < rows_; ++r) {
    bool all = cols_ > 0;
    for (std::size_t c = 0; c < cols_ && all; ++c) all = sgn((*this)(r, c)) > 0;
    if (all) return true;
  }
  return false;
}

bool IntMatrix::is_zero() const {
  for (const auto& v : data_)
    if (sgn(v) != 0) return false;
  return true;
}

bool IntMatrix::nonnegative() const {
  for (const auto& v : data_)
    if (sgn(v) < 0) return false;
  return true;
}

IntMatrix IntMatrix::submatrix(const std::vector<std::size_t>& rows,
                               const std::vector<std::size_t>& cols) const {
  IntMatrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = (*this)(rows[i], cols[j]);
  return out;
}

IntMatrix operator*(const IntMatrix& lhs, const IntMatrix& rhs) {
  if (lhs.cols_ != rhs.rows_) throw InputError("matrix product: dimension mismatch");
  IntMatrix out(lhs.rows_, rhs.cols_);
  for (std::size_t i = 0; i < lhs.rows_; ++i)
    for (std::size_t k = 0; k < lhs.cols_; ++k) {
      const BigInt& a = lhs(i, k);
      if (sgn(a) == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

IntMatrix operator+(const IntMatrix& lhs, const IntMatrix& rhs) {
  if (lhs.rows_ != rhs.rows_ || lhs.cols_ != rhs.cols_)
    throw InputError("matrix sum: dimension mismatch");
  IntMatrix out(lhs.rows_, lhs.cols_);
  for (std::size_t i = 0; i < lhs.data_.size(); ++i) out.data_[i] = lhs.data_[i] + rhs.data_[i];
  return out;
}

bool operator==(const IntMatrix& lhs, const IntMatrix& rhs) {
  return lhs.rows_ == rhs.rows_ && lhs.cols_ == rhs.cols_ && lhs.data_ == rhs.data_;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ",[" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? "," : "") << (*this)(r, c).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

std::vector<BigInt> row_times(const std::vector<BigInt>& row, const IntMatrix& m) {
  if (row.size() != m.rows()) throw InputError("row_times: dimension mismatch");
  std::vector<BigInt> out(m.cols(), BigInt(0));
  for (std::size_t k = 0; k < m.rows(); ++k) {
    if (sgn(row[k]) == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += row[k] * m(k, j);
  }
  return out;
}

}  // namespace fracperc
