#include "torinv/normal_form.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>
#include <stdexcept>
#include <utility>

namespace torinv {

namespace {

// row_i -= q * row_r
void row_sub(IntMatrix& m, std::size_t i, const Int& q, std::size_t r)
{
  if (q.is_zero()) return;
  auto dst = m.row(i);
  auto src = m.row(r);
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!src[j].is_zero()) dst[j].sub_mul(q, src[j]);
}

// col_j -= q * col_c
void col_sub(IntMatrix& m, std::size_t j, const Int& q, std::size_t c)
{
  if (q.is_zero()) return;
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (!m(i, c).is_zero()) m(i, j).sub_mul(q, m(i, c));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b)
{
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

void negate_row(IntMatrix& m, std::size_t i)
{
  for (auto& x : m.row(i)) x = -x;
}

void negate_col(IntMatrix& m, std::size_t j)
{
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = -m(i, j);
}

} // namespace

HermiteForm hermite(IntMatrix a, bool with_transform)
{
  const std::size_t m = a.rows(), n = a.cols();
  IntMatrix t = with_transform ? IntMatrix::identity(m) : IntMatrix();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    bool found = false;
    for (;;) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i) {
        if (a(i, c).is_zero()) continue;
        if (best == m || abs_less(a(i, c), a(best, c))) best = i;
        if (abs(a(best, c)).is_one()) break;
      }
      if (best == m) break;
      found = true;
      a.swap_rows(r, best);
      if (with_transform) t.swap_rows(r, best);
      bool cleared = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (a(i, c).is_zero()) continue;
        Int q = floor_div(a(i, c), a(r, c));
        row_sub(a, i, q, r);
        if (with_transform) row_sub(t, i, q, r);
        if (!a(i, c).is_zero()) cleared = false;
      }
      if (cleared) break;
    }
    if (!found) continue;
    if (a(r, c).sign() < 0) {
      negate_row(a, r);
      if (with_transform) negate_row(t, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      if (a(i, c).is_zero()) continue;
      Int q = floor_div(a(i, c), a(r, c));
      row_sub(a, i, q, r);
      if (with_transform) row_sub(t, i, q, r);
    }
    pivots.push_back(c);
    ++r;
  }
  a.resize_rows(r);
  return HermiteForm{std::move(a), std::move(pivots), std::move(t)};
}

namespace {

SmithForm smith_impl(IntMatrix a, bool with_left, bool with_right)
{
  const std::size_t m = a.rows(), n = a.cols();
  SmithForm out;
  if (with_left) {
    out.left = IntMatrix::identity(m);
    out.left_inverse = IntMatrix::identity(m);
  }
  if (with_right) out.right = IntMatrix::identity(n);

  auto row_op = [&](std::size_t i, const Int& q, std::size_t r) {
    // row_i -= q row_r ; left_inverse: col_r += q col_i
    row_sub(a, i, q, r);
    if (with_left) {
      row_sub(out.left, i, q, r);
      col_sub(out.left_inverse, r, -q, i);
    }
  };
  auto row_swap = [&](std::size_t i, std::size_t r) {
    a.swap_rows(i, r);
    if (with_left) {
      out.left.swap_rows(i, r);
      swap_cols(out.left_inverse, i, r);
    }
  };
  auto col_op = [&](std::size_t j, const Int& q, std::size_t c) {
    col_sub(a, j, q, c);
    if (with_right) col_sub(out.right, j, q, c);
  };
  auto col_swap = [&](std::size_t j, std::size_t c) {
    swap_cols(a, j, c);
    if (with_right) swap_cols(out.right, j, c);
  };

  const std::size_t k = std::min(m, n);
  out.diagonal.assign(k, Int(0));
  for (std::size_t t = 0; t < k; ++t) {
    // Pivot: smallest nonzero magnitude in the trailing block; ties broken
    // by Markowitz cost (r-1)(c-1) to limit fill-in, which is what keeps the
    // entries small on the sparse matrices this library feeds in.
    std::vector<std::size_t> row_count(m, 0), col_count(n, 0);
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (!a(i, j).is_zero()) {
          ++row_count[i];
          ++col_count[j];
        }
    std::size_t bi = m, bj = n, best_cost = 0;
    for (std::size_t i = t; i < m; ++i) {
      if (row_count[i] == 0) continue;
      for (std::size_t j = t; j < n; ++j) {
        if (a(i, j).is_zero()) continue;
        const std::size_t cost = (row_count[i] - 1) * (col_count[j] - 1);
        if (bi == m || abs_less(a(i, j), a(bi, bj)) || (!abs_less(a(bi, bj), a(i, j)) && cost < best_cost)) {
          bi = i;
          bj = j;
          best_cost = cost;
        }
      }
    }
    if (bi == m) break;
    row_swap(t, bi);
    col_swap(t, bj);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a(i, t).is_zero()) continue;
        row_op(i, floor_div(a(i, t), a(t, t)), t);
        if (!a(i, t).is_zero()) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a(t, j).is_zero()) continue;
        col_op(j, floor_div(a(t, j), a(t, t)), t);
        if (!a(t, j).is_zero()) clean = false;
      }
      if (!clean) {
        // A smaller remainder sits in row t or column t; move it to the pivot.
        std::size_t si = t, sj = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (!a(i, t).is_zero() && abs_less(a(i, t), a(si, sj))) { si = i; sj = t; }
        for (std::size_t j = t + 1; j < n; ++j)
          if (!a(t, j).is_zero() && abs_less(a(t, j), a(si, sj))) { si = t; sj = j; }
        row_swap(t, si);
        col_swap(t, sj);
        continue;
      }
      if (abs(a(t, t)).is_one()) break;
      // Enforce divisibility of the trailing block by the pivot.
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!divides(a(t, t), a(i, j))) { bad = i; break; }
      if (bad == m) break;
      row_op(t, Int(-1), bad);
    }
    if (a(t, t).sign() < 0) {
      negate_row(a, t);
      if (with_left) {
        negate_row(out.left, t);
        negate_col(out.left_inverse, t);
      }
    }
    out.diagonal[t] = a(t, t);
  }
  return out;
}

} // namespace

SmithForm smith(IntMatrix a, bool with_left, bool with_right)
{
  return smith_impl(std::move(a), with_left, with_right);
}

std::vector<Int> smith_diagonal(IntMatrix a)
{
  return smith_impl(std::move(a), false, false).diagonal;
}

std::vector<Int> cokernel_torsion(const IntMatrix& a)
{
  std::vector<Int> out;
  for (auto& d : smith_diagonal(a))
    if (!d.is_zero() && !d.is_one()) out.push_back(d);
  return out;
}

std::size_t rank(const IntMatrix& a)
{
  return hermite(a).basis.rows();
}

std::size_t rank_mod_p(const IntMatrix& a, std::uint32_t p)
{
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<std::uint64_t> w(m * n);
  const Int pp(static_cast<long>(p));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      w[i * n + j] = static_cast<std::uint64_t>(mod(a(i, j), pp).to_int64());
  auto inv = [p](std::uint64_t x) {
    std::uint64_t r = 1, e = p - 2;
    while (e) {
      if (e & 1) r = r * x % p;
      x = x * x % p;
      e >>= 1;
    }
    return r;
  };
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t piv = m;
    for (std::size_t i = r; i < m; ++i)
      if (w[i * n + c]) { piv = i; break; }
    if (piv == m) continue;
    if (piv != r)
      for (std::size_t j = 0; j < n; ++j) std::swap(w[piv * n + j], w[r * n + j]);
    std::uint64_t iv = inv(w[r * n + c]);
    for (std::size_t j = c; j < n; ++j) w[r * n + j] = w[r * n + j] * iv % p;
    for (std::size_t i = r + 1; i < m; ++i) {
      std::uint64_t f = w[i * n + c];
      if (!f) continue;
      for (std::size_t j = c; j < n; ++j)
        w[i * n + j] = (w[i * n + j] + (p - f) * w[r * n + j]) % p;
    }
    ++r;
  }
  return r;
}

KernelBuilder::KernelBuilder(std::size_t n) : n_(n)
{
  basis_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n);
    e[i] = 1;
    basis_.push_back(std::move(e));
  }
}

void KernelBuilder::add_constraint(std::span<const Int> a)
{
  if (a.size() != n_) throw std::invalid_argument("constraint length mismatch");
  std::vector<Int> v(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) v[i] = dot(basis_[i], a);
  absorb(std::move(v));
}

void KernelBuilder::add_sparse_constraint(std::span<const std::size_t> indices, std::span<const Int> values)
{
  std::vector<Int> v(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    Int acc;
    const auto& b = basis_[i];
    for (std::size_t k = 0; k < indices.size(); ++k)
      if (!b[indices[k]].is_zero()) acc.add_mul(values[k], b[indices[k]]);
    v[i] = std::move(acc);
  }
  absorb(std::move(v));
}

void KernelBuilder::absorb(std::vector<Int> v)
{
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) active.push_back(i);
  if (active.empty()) return;
  while (active.size() > 1) {
    std::size_t p = active[0];
    for (std::size_t i : active) {
      if (abs_less(v[i], v[p])) p = i;
      if (abs(v[p]).is_one()) break;
    }
    std::vector<std::size_t> next{p};
    for (std::size_t i : active) {
      if (i == p) continue;
      Int q = floor_div(v[i], v[p]);
      v[i].sub_mul(q, v[p]);
      axpy(basis_[i], -q, basis_[p]);
      if (!v[i].is_zero()) next.push_back(i);
    }
    active = std::move(next);
  }
  basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(active[0]));
}

IntMatrix KernelBuilder::basis() const
{
  if (basis_.empty()) return IntMatrix(0, n_);
  return hermite(IntMatrix::from_rows(basis_, n_)).basis;
}

IntMatrix kernel(const IntMatrix& a)
{
  KernelBuilder kb(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) kb.add_constraint(a.row(i));
  return kb.basis();
}

LatticeSolver::LatticeSolver(const IntMatrix& basis_rows)
{
  HermiteForm h = hermite(basis_rows, true);
  if (h.basis.rows() != basis_rows.rows()) {
    throw std::invalid_argument("LatticeSolver: basis rows are not independent");
  }
  echelon_ = std::move(h.basis);
  pivots_ = std::move(h.pivots);
  transform_t_ = h.transform.transpose();
  if (echelon_.rows() == 0) echelon_ = IntMatrix(0, basis_rows.cols());
}

std::optional<IntVector> LatticeSolver::coordinates(std::span<const Int> x) const
{
  if (x.size() != echelon_.cols()) throw std::invalid_argument("LatticeSolver: dimension mismatch");
  const std::size_t u = echelon_.rows();
  IntVector z(u);
  for (std::size_t i = 0; i < u; ++i) {
    Int val = x[pivots_[i]];
    for (std::size_t j = 0; j < i; ++j)
      if (!z[j].is_zero()) val.sub_mul(echelon_(j, pivots_[i]), z[j]);
    if (!divides(echelon_(i, pivots_[i]), val)) return std::nullopt;
    z[i] = divexact(val, echelon_(i, pivots_[i]));
  }
  IntVector back = echelon_.apply_left(z);
  for (std::size_t j = 0; j < x.size(); ++j)
    if (back[j] != x[j]) return std::nullopt;
  if (u == 0) return IntVector{};
  return transform_t_.apply(z);
}

IntVector LatticeSolver::coordinates_or_throw(std::span<const Int> x) const
{
  auto y = coordinates(x);
  if (!y) throw std::logic_error("vector is not in the lattice");
  return *y;
}

bool rows_saturated(const IntMatrix& rows)
{
  for (auto& d : smith_diagonal(rows))
    if (!d.is_zero() && !d.is_one()) return false;
  return true;
}

IntMatrix right_inverse(const IntMatrix& a)
{
  const std::size_t k = a.rows();
  HermiteForm h = hermite(a.transpose(), true);
  if (h.basis.rows() != k) throw std::invalid_argument("right_inverse: matrix is not surjective");
  for (std::size_t i = 0; i < k; ++i)
    if (!h.basis(i, h.pivots[i]).is_one() || h.pivots[i] != i)
      throw std::invalid_argument("right_inverse: matrix is not surjective over Z");
  // t * a^T = [I; 0]  =>  a * t^T = [I 0]
  IntMatrix r(a.cols(), k);
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t j = 0; j < k; ++j) r(i, j) = h.transform(j, i);
  return r;
}

} // namespace torinv

namespace torinv {

namespace {

struct ModMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<std::int64_t> v;
  ModMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), v(r * c, 0) {}
  std::int64_t& operator()(std::size_t i, std::size_t j) { return v[i * cols + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return v[i * cols + j]; }
};

std::int64_t reduce_mod(std::int64_t x, std::int64_t d)
{
  x %= d;
  return x < 0 ? x + d : x;
}

// s a + t b = g >= 0
std::int64_t xgcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t)
{
  std::int64_t s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (b != 0) {
    const std::int64_t q = a / b;
    std::tie(a, b) = std::make_pair(b, a - q * b);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  if (a < 0) {
    a = -a;
    s0 = -s0;
    t0 = -t0;
  }
  s = s0;
  t = t0;
  return a;
}

IntMatrix to_int_matrix(const ModMatrix& a)
{
  IntMatrix out(a.rows, a.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) out(i, j) = Int(a(i, j));
  return out;
}

} // namespace

ModularSmithForm smith_mod(const IntMatrix& in, std::int64_t d, bool with_left, bool with_right)
{
  if (d < 1 || d >= (std::int64_t(1) << 31)) throw std::invalid_argument("smith_mod: modulus out of range");
  const std::size_t m = in.rows(), n = in.cols();
  const Int dd(d);
  ModMatrix a(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = mod(in(i, j), dd).to_int64();
  ModMatrix left(with_left ? m : 0, with_left ? m : 0), right(with_right ? n : 0, with_right ? n : 0);
  for (std::size_t i = 0; i < left.rows; ++i) left(i, i) = 1 % d;
  for (std::size_t i = 0; i < right.rows; ++i) right(i, i) = 1 % d;

  // row_i <- x row_i + y row_k, row_k <- z row_i + w row_k (simultaneously)
  auto rows2 = [d](ModMatrix& mat, std::size_t i, std::size_t k, std::int64_t x, std::int64_t y, std::int64_t z,
                   std::int64_t w, std::size_t from) {
    for (std::size_t c = from; c < mat.cols; ++c) {
      const std::int64_t p = mat(i, c), q = mat(k, c);
      if (p == 0 && q == 0) continue;
      mat(i, c) = reduce_mod(x * p + y * q, d);
      mat(k, c) = reduce_mod(z * p + w * q, d);
    }
  };
  auto cols2 = [d](ModMatrix& mat, std::size_t j, std::size_t k, std::int64_t x, std::int64_t y, std::int64_t z,
                   std::int64_t w, std::size_t from) {
    for (std::size_t r = from; r < mat.rows; ++r) {
      const std::int64_t p = mat(r, j), q = mat(r, k);
      if (p == 0 && q == 0) continue;
      mat(r, j) = reduce_mod(x * p + y * q, d);
      mat(r, k) = reduce_mod(z * p + w * q, d);
    }
  };
  // row_i -= f row_k
  auto row_sub1 = [d](ModMatrix& mat, std::size_t i, std::int64_t f, std::size_t k, std::size_t from) {
    for (std::size_t c = from; c < mat.cols; ++c)
      if (mat(k, c) != 0) mat(i, c) = reduce_mod(mat(i, c) - f * mat(k, c), d);
  };
  auto col_sub1 = [d](ModMatrix& mat, std::size_t j, std::int64_t f, std::size_t k, std::size_t from) {
    for (std::size_t r = from; r < mat.rows; ++r)
      if (mat(r, k) != 0) mat(r, j) = reduce_mod(mat(r, j) - f * mat(r, k), d);
  };
  auto scale_row = [d](ModMatrix& mat, std::size_t i, std::int64_t u) {
    for (std::size_t c = 0; c < mat.cols; ++c) mat(i, c) = reduce_mod(mat(i, c) * u, d);
  };
  auto swap_r = [](ModMatrix& mat, std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t c = 0; c < mat.cols; ++c) std::swap(mat(i, c), mat(k, c));
  };
  auto swap_c = [](ModMatrix& mat, std::size_t j, std::size_t k) {
    if (j == k) return;
    for (std::size_t r = 0; r < mat.rows; ++r) std::swap(mat(r, j), mat(r, k));
  };

  ModularSmithForm out;
  out.modulus = d;
  const std::size_t kmax = std::min(m, n);
  out.diagonal.assign(kmax, 0);
  std::vector<std::size_t> row_count(m), col_count(n);
  for (std::size_t t = 0; t < kmax; ++t) {
    // Pivot: smallest ideal gcd(a, d), ties broken by Markowitz cost.
    std::fill(row_count.begin(), row_count.end(), 0);
    std::fill(col_count.begin(), col_count.end(), 0);
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (a(i, j) != 0) {
          ++row_count[i];
          ++col_count[j];
        }
    std::size_t bi = m, bj = n, best_cost = 0;
    std::int64_t best_key = 0;
    for (std::size_t i = t; i < m; ++i) {
      if (row_count[i] == 0) continue;
      for (std::size_t j = t; j < n; ++j) {
        if (a(i, j) == 0) continue;
        const std::int64_t key = std::gcd(a(i, j), d);
        const std::size_t cost = (row_count[i] - 1) * (col_count[j] - 1);
        if (bi == m || key < best_key || (key == best_key && cost < best_cost)) {
          bi = i;
          bj = j;
          best_key = key;
          best_cost = cost;
        }
      }
    }
    if (bi == m) break;
    swap_r(a, t, bi);
    if (with_left) swap_r(left, t, bi);
    swap_c(a, t, bj);
    if (with_right) swap_c(right, t, bj);

    for (;;) {
      // Normalise the pivot to the divisor gcd(a_tt, d) by a unit.
      const std::int64_t g = std::gcd(a(t, t), d);
      if (a(t, t) != g) {
        const std::int64_t dp = d / g;
        std::int64_t u = 1;
        if (dp > 1) {
          std::int64_t s, unused;
          xgcd(reduce_mod(a(t, t) / g, dp), dp, s, unused);
          u = reduce_mod(s, dp);
          while (std::gcd(u, d) != 1) u += dp;
        }
        scale_row(a, t, u);
        if (with_left) scale_row(left, t, u);
      }
      for (std::size_t i = t + 1; i < m; ++i) {
        const std::int64_t b = a(i, t);
        if (b == 0) continue;
        const std::int64_t p = a(t, t);
        if (b % p == 0) {
          row_sub1(a, i, b / p, t, t);
          if (with_left) row_sub1(left, i, b / p, t, 0);
        } else {
          std::int64_t s, r;
          const std::int64_t g2 = xgcd(p, b, s, r);
          rows2(a, t, i, s, r, -b / g2, p / g2, t);
          if (with_left) rows2(left, t, i, s, r, -b / g2, p / g2, 0);
        }
      }
      bool clean = true;
      for (std::size_t j = t + 1; j < n; ++j) {
        const std::int64_t b = a(t, j);
        if (b == 0) continue;
        const std::int64_t p = a(t, t);
        if (b % p == 0) {
          col_sub1(a, j, b / p, t, t);
          if (with_right) col_sub1(right, j, b / p, t, 0);
        } else {
          std::int64_t s, r;
          const std::int64_t g2 = xgcd(p, b, s, r);
          cols2(a, t, j, s, r, -b / g2, p / g2, t);
          if (with_right) cols2(right, t, j, s, r, -b / g2, p / g2, 0);
          clean = false;
        }
      }
      if (!clean) continue;
      const std::int64_t p = a(t, t);
      if (p == 1) break;
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a(i, j) % p != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      rows2(a, t, bad, 1, 1, 0, 1, t);
      if (with_left) rows2(left, t, bad, 1, 1, 0, 1, 0);
    }
    out.diagonal[t] = a(t, t);
  }
  if (with_left) out.left = to_int_matrix(left);
  if (with_right) out.right = to_int_matrix(right);
  return out;
}

} // namespace torinv
