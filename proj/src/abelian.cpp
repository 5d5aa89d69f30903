#include "torinv/abelian.hpp"

#include <optional>
#include <sstream>
#include <stdexcept>

#include "torinv/normal_form.hpp"

namespace torinv {

struct FiniteAbelianGroup::Reducer {
  VectorMap to_space;
  std::optional<LatticeSolver> solver;
  IntMatrix class_rows; // one row per factor
  std::vector<Int> moduli;
  // Rows that must vanish mod outside_modulus on admissible vectors.
  IntMatrix outside;
  Int outside_modulus;
};

FiniteAbelianGroup::FiniteAbelianGroup(std::size_t ambient_dim) : ambient_dim_(ambient_dim) {}

namespace {

IntVector apply_or_identity(const FiniteAbelianGroup::VectorMap& f, std::span<const Int> v)
{
  if (f) return f(v);
  return IntVector(v.begin(), v.end());
}

} // namespace

FiniteAbelianGroup FiniteAbelianGroup::saturation_quotient(const IntMatrix& columns, std::size_t ambient_dim,
                                                          VectorMap to_space, VectorMap from_space)
{
  FiniteAbelianGroup out(ambient_dim);
  auto red = std::make_shared<Reducer>();
  red->to_space = std::move(to_space);
  const std::size_t n = columns.rows();
  red->class_rows = IntMatrix(0, n);
  if (n > 0 && columns.cols() > 0) {
    SmithForm s = smith(columns, true, false);
    for (std::size_t i = 0; i < s.diagonal.size(); ++i) {
      const Int& d = s.diagonal[i];
      if (d.is_zero() || d.is_one()) continue;
      out.factors_.push_back(d);
      red->moduli.push_back(d);
      red->class_rows.append_row(s.left.row(i));
      IntVector w = s.left_inverse.col_vector(i);
      out.witnesses_.push_back(apply_or_identity(from_space, w));
    }
  }
  out.reducer_ = std::move(red);
  return out;
}

FiniteAbelianGroup FiniteAbelianGroup::bounded_saturation_quotient(const IntMatrix& columns, std::int64_t exponent,
                                                                  std::size_t ambient_dim, VectorMap to_space,
                                                                  VectorMap from_space)
{
  if (exponent < 1 || exponent > 46340) throw std::invalid_argument("torsion exponent bound out of range");
  FiniteAbelianGroup out(ambient_dim);
  auto red = std::make_shared<Reducer>();
  red->to_space = std::move(to_space);
  const std::size_t n = columns.rows();
  red->class_rows = IntMatrix(0, n);
  red->outside = IntMatrix(0, n);
  const std::int64_t d = exponent * exponent;
  red->outside_modulus = Int(exponent); // exact sat vectors satisfy these only mod d / max factor
  if (n > 0 && columns.cols() > 0) {
    ModularSmithForm s = smith_mod(columns, d, true, true);
    for (std::size_t i = 0; i < n; ++i) {
      const std::int64_t f = i < s.diagonal.size() ? s.diagonal[i] : 0;
      if (f == 0) {
        red->outside.append_row(s.left.row(i));
        continue;
      }
      if (f == 1) continue;
      if (exponent % f != 0) throw std::logic_error("cokernel torsion is not killed by the stated exponent");
      const Int fi(f);
      out.factors_.push_back(fi);
      red->moduli.push_back(fi);
      red->class_rows.append_row(s.left.row(i));
      IntVector w = columns.apply(s.right.col_vector(i));
      for (auto& x : w) x = divexact(x, fi);
      out.witnesses_.push_back(apply_or_identity(from_space, w));
    }
  } else {
    red->outside = IntMatrix::identity(n);
  }
  out.reducer_ = std::move(red);
  return out;
}

FiniteAbelianGroup FiniteAbelianGroup::subquotient(const IntMatrix& upper, const IntMatrix& lower,
                                                  std::size_t ambient_dim, VectorMap to_space, VectorMap from_space)
{
  FiniteAbelianGroup out(ambient_dim);
  auto red = std::make_shared<Reducer>();
  red->to_space = std::move(to_space);
  IntMatrix basis = upper.rows() ? hermite(upper).basis : IntMatrix(0, upper.cols());
  const std::size_t u = basis.rows();
  red->solver.emplace(basis);
  red->class_rows = IntMatrix(0, u);
  if (u > 0) {
    IntMatrix c(u, lower.rows());
    for (std::size_t j = 0; j < lower.rows(); ++j) {
      auto y = red->solver->coordinates(lower.row(j));
      if (!y) throw std::invalid_argument("subquotient: lower lattice is not contained in the upper lattice");
      for (std::size_t i = 0; i < u; ++i) c(i, j) = (*y)[i];
    }
    if (lower.rows() == 0) throw std::invalid_argument("subquotient: infinite (lower lattice is zero)");
    SmithForm s = smith(c, true, false);
    for (std::size_t i = 0; i < u; ++i) {
      const Int& d = s.diagonal[i];
      if (d.is_zero()) throw std::invalid_argument("subquotient: lower lattice has smaller rank");
      if (d.is_one()) continue;
      out.factors_.push_back(d);
      red->moduli.push_back(d);
      red->class_rows.append_row(s.left.row(i));
      IntVector y = s.left_inverse.col_vector(i);
      out.witnesses_.push_back(apply_or_identity(from_space, basis.apply_left(y)));
    }
  }
  out.reducer_ = std::move(red);
  return out;
}

FiniteAbelianGroup FiniteAbelianGroup::subgroup(const FiniteAbelianGroup& parent, const std::vector<IntVector>& gens)
{
  return quotient(parent, gens, {});
}

FiniteAbelianGroup FiniteAbelianGroup::quotient(const FiniteAbelianGroup& parent,
                                                const std::vector<IntVector>& upper_gens,
                                                const std::vector<IntVector>& lower_gens)
{
  const std::size_t t = parent.ngens();
  if (t == 0) return FiniteAbelianGroup(parent.ambient_dim());
  IntMatrix rel(t, t);
  for (std::size_t i = 0; i < t; ++i) rel(i, i) = parent.factors_[i];
  IntMatrix upper = rel, lower = rel;
  for (const auto& g : upper_gens) upper.append_row(g);
  for (const auto& g : lower_gens) lower.append_row(g);
  auto p = std::make_shared<FiniteAbelianGroup>(parent);
  return subquotient(
      upper, lower, parent.ambient_dim(), [p](std::span<const Int> v) { return p->reduce(v); },
      [p](std::span<const Int> c) { return p->lift(c); });
}

FiniteAbelianGroup FiniteAbelianGroup::direct_sum(const std::vector<FiniteAbelianGroup>& parts)
{
  std::size_t ambient = 0, t = 0;
  for (const auto& p : parts) {
    ambient += p.ambient_dim();
    t += p.ngens();
  }
  if (t == 0) return FiniteAbelianGroup(ambient);
  IntMatrix upper = IntMatrix::identity(t);
  IntMatrix lower(t, t);
  std::size_t k = 0;
  for (const auto& p : parts)
    for (const auto& d : p.invariant_factors()) {
      lower(k, k) = d;
      ++k;
    }
  auto ps = std::make_shared<std::vector<FiniteAbelianGroup>>(parts);
  auto to_space = [ps](std::span<const Int> v) {
    IntVector out;
    std::size_t off = 0;
    for (const auto& p : *ps) {
      IntVector c = p.reduce(v.subspan(off, p.ambient_dim()));
      out.insert(out.end(), c.begin(), c.end());
      off += p.ambient_dim();
    }
    return out;
  };
  auto from_space = [ps](std::span<const Int> c) {
    IntVector out;
    std::size_t off = 0;
    for (const auto& p : *ps) {
      IntVector a = p.lift(c.subspan(off, p.ngens()));
      out.insert(out.end(), a.begin(), a.end());
      off += p.ngens();
    }
    return out;
  };
  return subquotient(upper, lower, ambient, to_space, from_space);
}

Int FiniteAbelianGroup::order() const
{
  Int n(1);
  for (const auto& d : factors_) n *= d;
  return n;
}

IntVector FiniteAbelianGroup::reduce(std::span<const Int> ambient) const
{
  if (ambient.size() != ambient_dim_) throw std::invalid_argument("reduce: ambient dimension mismatch");
  if (factors_.empty()) return {};
  IntVector v = apply_or_identity(reducer_->to_space, ambient);
  if (reducer_->solver) v = reducer_->solver->coordinates_or_throw(v);
  if (reducer_->outside.rows()) {
    for (const auto& x : reducer_->outside.apply(v))
      if (!divides(reducer_->outside_modulus, x)) throw std::invalid_argument("vector is not admissible");
  }
  IntVector c = reducer_->class_rows.apply(v);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = mod(c[i], factors_[i]);
  return c;
}

IntVector FiniteAbelianGroup::lift(std::span<const Int> coords) const
{
  if (coords.size() != factors_.size()) throw std::invalid_argument("lift: coordinate count mismatch");
  IntVector out(ambient_dim_);
  for (std::size_t i = 0; i < coords.size(); ++i) axpy(out, coords[i], witnesses_[i]);
  return out;
}

Int FiniteAbelianGroup::element_order(std::span<const Int> coords) const
{
  Int ord(1);
  for (std::size_t i = 0; i < coords.size(); ++i) {
    Int c = mod(coords[i], factors_[i]);
    if (c.is_zero()) continue;
    ord = lcm(ord, divexact(factors_[i], gcd(c, factors_[i])));
  }
  return ord;
}

std::string FiniteAbelianGroup::str() const
{
  if (factors_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < factors_.size(); ++i) os << (i ? " x " : "") << "Z/" << factors_[i];
  return os.str();
}

bool same_structure(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b)
{
  return a.invariant_factors() == b.invariant_factors();
}

AbelianHom::AbelianHom(FiniteAbelianGroup source, FiniteAbelianGroup target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix))
{
  if (matrix_.rows() != target_.ngens() || matrix_.cols() != source_.ngens()) {
    throw std::invalid_argument("hom matrix has the wrong shape");
  }
  for (std::size_t i = 0; i < matrix_.rows(); ++i)
    for (std::size_t j = 0; j < matrix_.cols(); ++j) matrix_(i, j) = mod(matrix_(i, j), target_.invariant_factors()[i]);
  for (std::size_t j = 0; j < matrix_.cols(); ++j) {
    const Int& d = source_.invariant_factors()[j];
    for (std::size_t i = 0; i < matrix_.rows(); ++i)
      if (!divides(target_.invariant_factors()[i], d * matrix_(i, j))) {
        throw std::logic_error("hom does not respect the relations of its source");
      }
  }
}

AbelianHom AbelianHom::from_ambient_map(FiniteAbelianGroup source, FiniteAbelianGroup target,
                                        const FiniteAbelianGroup::VectorMap& ambient_map)
{
  IntMatrix m(target.ngens(), source.ngens());
  for (std::size_t j = 0; j < source.ngens(); ++j) {
    IntVector img = target.reduce(ambient_map(source.witnesses()[j]));
    for (std::size_t i = 0; i < img.size(); ++i) m(i, j) = img[i];
  }
  return AbelianHom(std::move(source), std::move(target), std::move(m));
}

AbelianHom AbelianHom::identity(const FiniteAbelianGroup& a)
{
  return AbelianHom(a, a, IntMatrix::identity(a.ngens()));
}

AbelianHom AbelianHom::zero(FiniteAbelianGroup source, FiniteAbelianGroup target)
{
  IntMatrix m(target.ngens(), source.ngens());
  return AbelianHom(std::move(source), std::move(target), std::move(m));
}

IntVector AbelianHom::apply(std::span<const Int> coords) const
{
  IntVector y = matrix_.apply(coords);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = mod(y[i], target_.invariant_factors()[i]);
  return y;
}

AbelianHom AbelianHom::after(const AbelianHom& first) const
{
  if (!same_structure(first.target(), source_)) throw std::invalid_argument("hom composition: groups differ");
  return AbelianHom(first.source(), target_, matrix_ * first.matrix());
}

bool AbelianHom::is_zero() const
{
  return matrix_.is_zero();
}

std::vector<IntVector> AbelianHom::image_generators() const
{
  std::vector<IntVector> gens;
  for (std::size_t j = 0; j < matrix_.cols(); ++j) gens.push_back(matrix_.col_vector(j));
  return gens;
}

FiniteAbelianGroup AbelianHom::image() const
{
  return FiniteAbelianGroup::subgroup(target_, image_generators());
}

std::vector<IntVector> AbelianHom::kernel_generators() const
{
  const std::size_t s = source_.ngens(), t = target_.ngens();
  // {(x, z) : F x - diag(b) z = 0}, projected to x.
  KernelBuilder kb(s + t);
  for (std::size_t i = 0; i < t; ++i) {
    IntVector row(s + t);
    for (std::size_t j = 0; j < s; ++j) row[j] = matrix_(i, j);
    row[s + i] = -target_.invariant_factors()[i];
    kb.add_constraint(row);
  }
  IntMatrix b = kb.basis();
  std::vector<IntVector> gens;
  for (std::size_t r = 0; r < b.rows(); ++r) {
    IntVector x(b.row(r).begin(), b.row(r).begin() + static_cast<std::ptrdiff_t>(s));
    if (!is_zero_vector(x)) gens.push_back(std::move(x));
  }
  return gens;
}

FiniteAbelianGroup AbelianHom::kernel() const
{
  return FiniteAbelianGroup::subgroup(source_, kernel_generators());
}

AbelianHom stack(const FiniteAbelianGroup& source, const FiniteAbelianGroup& sum_target,
                 const std::vector<AbelianHom>& components)
{
  // Evaluate on source witnesses: concatenate the component ambient images.
  IntMatrix m(sum_target.ngens(), source.ngens());
  for (std::size_t j = 0; j < source.ngens(); ++j) {
    IntVector amb;
    for (const auto& c : components) {
      IntVector cj = c.matrix().col_vector(j);
      IntVector a = c.target().lift(cj);
      amb.insert(amb.end(), a.begin(), a.end());
    }
    IntVector img = sum_target.reduce(amb);
    for (std::size_t i = 0; i < img.size(); ++i) m(i, j) = img[i];
  }
  return AbelianHom(source, sum_target, std::move(m));
}

} // namespace torinv
