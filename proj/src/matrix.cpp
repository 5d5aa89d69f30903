#include "torinv/matrix.hpp"

#include <cassert>
#include <sstream>
#include <stdexcept>

namespace torinv {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
{
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n)
{
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols)
{
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntVector IntMatrix::col_vector(std::size_t j) const
{
  IntVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

IntMatrix IntMatrix::transpose() const
{
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::is_zero() const
{
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

bool IntMatrix::is_identity() const
{
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != Int(i == j ? 1 : 0)) return false;
  return true;
}

void IntMatrix::append_row(std::span<const Int> r)
{
  if (rows_ == 0 && cols_ == 0) cols_ = r.size();
  if (r.size() != cols_) throw std::invalid_argument("row length mismatch");
  data_.insert(data_.end(), r.begin(), r.end());
  ++rows_;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b)
{
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

IntMatrix IntMatrix::select_rows(std::span<const std::size_t> idx) const
{
  IntMatrix m(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(idx[i], j);
  return m;
}

IntMatrix IntMatrix::select_cols(std::span<const std::size_t> idx) const
{
  IntMatrix m(rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
  return m;
}

IntMatrix IntMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
{
  assert(r0 + nr <= rows_ && c0 + nc <= cols_);
  IntMatrix m(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
  return m;
}

void IntMatrix::set_block(std::size_t r0, std::size_t c0, const IntMatrix& b)
{
  assert(r0 + b.rows() <= rows_ && c0 + b.cols() <= cols_);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

IntVector IntMatrix::apply(std::span<const Int> x) const
{
  if (x.size() != cols_) throw std::invalid_argument("apply: dimension mismatch");
  IntVector y(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Int acc;
    auto r = row(i);
    for (std::size_t j = 0; j < cols_; ++j)
      if (!r[j].is_zero() && !x[j].is_zero()) acc.add_mul(r[j], x[j]);
    y[i] = std::move(acc);
  }
  return y;
}

IntVector IntMatrix::apply_left(std::span<const Int> x) const
{
  if (x.size() != rows_) throw std::invalid_argument("apply_left: dimension mismatch");
  IntVector y(cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    if (!x[i].is_zero()) axpy(y, x[i], row(i));
  return y;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
{
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    auto out = c.row(i);
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Int& aik = a(i, k);
      if (aik.is_zero()) continue;
      axpy(out, aik, b.row(k));
    }
  }
  return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b)
{
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("sum: dimension mismatch");
  IntMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b)
{
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("difference: dimension mismatch");
  IntMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
  return c;
}

std::string IntMatrix::str() const
{
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b)
{
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
  IntMatrix m(a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

IntMatrix vstack(const IntMatrix& a, const IntMatrix& b)
{
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column mismatch");
  IntMatrix m(a.rows() + b.rows(), a.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

IntMatrix direct_sum(const IntMatrix& a, const IntMatrix& b)
{
  IntMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

bool is_zero_vector(std::span<const Int> v)
{
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

Int dot(std::span<const Int> a, std::span<const Int> b)
{
  Int acc;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) acc.add_mul(a[i], b[i]);
  return acc;
}

void axpy(std::span<Int> dst, const Int& c, std::span<const Int> src)
{
  if (c.is_zero()) return;
  if (c.is_one()) {
    for (std::size_t j = 0; j < dst.size(); ++j)
      if (!src[j].is_zero()) dst[j] += src[j];
    return;
  }
  for (std::size_t j = 0; j < dst.size(); ++j)
    if (!src[j].is_zero()) dst[j].add_mul(c, src[j]);
}

} // namespace torinv
