#pragma once

// Finite abelian groups realised as subquotients of an ambient Z^n, kept in
// Smith-normalised form: invariant factors d1 | d2 | ... (all >= 2), one
// witness vector per factor, and a reduction map from ambient vectors to class
// coordinates (one residue mod d_i per factor).

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "torinv/matrix.hpp"

namespace torinv {

class FiniteAbelianGroup {
public:
  using VectorMap = std::function<IntVector(std::span<const Int>)>;

  /// The zero group inside Z^ambient_dim.
  explicit FiniteAbelianGroup(std::size_t ambient_dim = 0);

  /// Torsion of Z^n / (column span of `columns`), i.e. sat(B)/B for the lattice
  /// B spanned by the columns. `to_space` maps ambient vectors into Z^n
  /// (identity when empty) and may throw when a vector is not admissible;
  /// `from_space` maps Z^n back to the ambient (identity when empty).
  static FiniteAbelianGroup saturation_quotient(const IntMatrix& columns, std::size_t ambient_dim,
                                                VectorMap to_space = {}, VectorMap from_space = {});

  /// Same group when the torsion is known to be killed by `exponent`. The
  /// Smith form is taken over Z/exponent^2, so entries stay small; witnesses
  /// are exact ((columns * q) / d for the modular right transform q), and
  /// `reduce` rejects vectors that fail the saturation congruences.
  static FiniteAbelianGroup bounded_saturation_quotient(const IntMatrix& columns, std::int64_t exponent,
                                                        std::size_t ambient_dim, VectorMap to_space = {},
                                                        VectorMap from_space = {});

  /// span(upper rows) / span(lower rows) inside Z^n, lower contained in upper
  /// with finite index. Same conventions for the optional maps.
  static FiniteAbelianGroup subquotient(const IntMatrix& upper, const IntMatrix& lower, std::size_t ambient_dim,
                                        VectorMap to_space = {}, VectorMap from_space = {});

  /// Subgroup of `parent` generated by vectors in parent class coordinates.
  /// Lives in the parent's ambient.
  static FiniteAbelianGroup subgroup(const FiniteAbelianGroup& parent, const std::vector<IntVector>& gens);
  /// <upper_gens> / <lower_gens>, both given in parent class coordinates;
  /// lower must lie in upper.
  static FiniteAbelianGroup quotient(const FiniteAbelianGroup& parent, const std::vector<IntVector>& upper_gens,
                                     const std::vector<IntVector>& lower_gens);
  /// Direct sum on the concatenated ambient, re-normalised.
  static FiniteAbelianGroup direct_sum(const std::vector<FiniteAbelianGroup>& parts);

  const std::vector<Int>& invariant_factors() const { return factors_; }
  std::size_t ngens() const { return factors_.size(); }
  Int order() const;
  bool is_trivial() const { return factors_.empty(); }
  std::size_t ambient_dim() const { return ambient_dim_; }
  /// Ambient vectors, one per invariant factor, of exactly that order.
  const std::vector<IntVector>& witnesses() const { return witnesses_; }

  /// Class coordinates of an ambient vector (entry i reduced mod d_i).
  IntVector reduce(std::span<const Int> ambient) const;
  /// Ambient representative of a class-coordinate vector.
  IntVector lift(std::span<const Int> coords) const;
  /// Order of the class with the given coordinates.
  Int element_order(std::span<const Int> coords) const;

  /// "Z/2 x Z/4", or "0" for the trivial group.
  std::string str() const;

private:
  struct Reducer;

  std::vector<Int> factors_;
  std::size_t ambient_dim_ = 0;
  std::vector<IntVector> witnesses_;
  std::shared_ptr<const Reducer> reducer_;
};

bool same_structure(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b);

/// Homomorphism in class coordinates: column j is the image of source generator j.
class AbelianHom {
public:
  AbelianHom(FiniteAbelianGroup source, FiniteAbelianGroup target, IntMatrix matrix);

  /// Hom induced by a linear map of ambient spaces, evaluated on the source
  /// witnesses and reduced in the target. Throws when the result does not
  /// kill the source relations.
  static AbelianHom from_ambient_map(FiniteAbelianGroup source, FiniteAbelianGroup target,
                                     const FiniteAbelianGroup::VectorMap& ambient_map);
  static AbelianHom identity(const FiniteAbelianGroup& a);
  static AbelianHom zero(FiniteAbelianGroup source, FiniteAbelianGroup target);

  const FiniteAbelianGroup& source() const { return source_; }
  const FiniteAbelianGroup& target() const { return target_; }
  const IntMatrix& matrix() const { return matrix_; }

  IntVector apply(std::span<const Int> coords) const;
  /// this after `first`.
  AbelianHom after(const AbelianHom& first) const;
  bool is_zero() const;

  FiniteAbelianGroup image() const;
  FiniteAbelianGroup kernel() const;
  /// Generators (source class coordinates) of the kernel.
  std::vector<IntVector> kernel_generators() const;
  /// Generators (target class coordinates) of the image.
  std::vector<IntVector> image_generators() const;

  friend bool operator==(const AbelianHom& a, const AbelianHom& b) { return a.matrix_ == b.matrix_; }

private:
  FiniteAbelianGroup source_;
  FiniteAbelianGroup target_;
  IntMatrix matrix_;
};

/// Hom into a direct sum, stacking the component matrices.
AbelianHom stack(const FiniteAbelianGroup& source, const FiniteAbelianGroup& sum_target,
                 const std::vector<AbelianHom>& components);

} // namespace torinv
