#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "torinv/integer.hpp"

namespace torinv {

using IntVector = std::vector<Int>;

/// Dense row-major integer matrix.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Int> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Int> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  IntVector row_vector(std::size_t i) const { return {row(i).begin(), row(i).end()}; }
  IntVector col_vector(std::size_t j) const;

  IntMatrix transpose() const;
  bool is_zero() const;
  bool is_identity() const;

  void append_row(std::span<const Int> r);
  void swap_rows(std::size_t a, std::size_t b);
  void resize_rows(std::size_t rows) { data_.resize(rows * cols_); rows_ = rows; }

  IntMatrix select_rows(std::span<const std::size_t> idx) const;
  IntMatrix select_cols(std::span<const std::size_t> idx) const;
  IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const IntMatrix& b);

  /// y = A x
  IntVector apply(std::span<const Int> x) const;
  /// y = x^T A
  IntVector apply_left(std::span<const Int> x) const;

  friend bool operator==(const IntMatrix& a, const IntMatrix& b)
  {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);

  std::string str() const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix direct_sum(const IntMatrix& a, const IntMatrix& b);

bool is_zero_vector(std::span<const Int> v);
Int dot(std::span<const Int> a, std::span<const Int> b);
/// dst += c * src
void axpy(std::span<Int> dst, const Int& c, std::span<const Int> src);

} // namespace torinv
