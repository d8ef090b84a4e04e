#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "fracperc/rational.hpp"

namespace fracperc {

/// Dense row-major matrix of big integers. The transition matrices of a type
/// system and all of their finite products live here, so entries never overflow.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  /// Sum of all entries, e^T A e.
  BigInt entry_sum() const;
  std::vector<BigInt> column_sums() const;
  std::vector<BigInt> row_sums() const;
  bool has_positive_row() const;
  bool is_zero() const;
  bool nonnegative() const;

  IntMatrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;

  friend IntMatrix operator*(const IntMatrix& lhs, const IntMatrix& rhs);
  friend IntMatrix operator+(const IntMatrix& lhs, const IntMatrix& rhs);
  friend bool operator==(const IntMatrix& lhs, const IntMatrix& rhs);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

/// Row vector times matrix, used for streaming norms e^T A_{a_1} ... A_{a_n} e.
std::vector<BigInt> row_times(const std::vector<BigInt>& row, const IntMatrix& m);

}  // namespace fracperc
