#pragma once

// Exact integer normal forms: Hermite (row style), Smith with transforms,
// saturated kernels and lattice membership. Lattices are always given by a
// basis stored as matrix ROWS.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "torinv/matrix.hpp"

namespace torinv {

/// Row Hermite normal form. Zero rows are dropped; pivots are positive and the
/// entries above each pivot are reduced into [0, pivot).
struct HermiteForm {
  IntMatrix basis;
  std::vector<std::size_t> pivots;
  /// transform * input = [basis; 0], unimodular. Only filled on request.
  IntMatrix transform;
};

HermiteForm hermite(IntMatrix a, bool with_transform = false);

/// Smith normal form left * a * right = diag(diagonal), diagonal entries are
/// nonnegative and each divides the next (zeros last).
struct SmithForm {
  std::vector<Int> diagonal; // length min(rows, cols)
  IntMatrix left;
  IntMatrix left_inverse;
  IntMatrix right;
};

SmithForm smith(IntMatrix a, bool with_left = true, bool with_right = false);
/// Diagonal only, no transforms.
std::vector<Int> smith_diagonal(IntMatrix a);

/// Smith form over Z/modulus: left * a * right = diag(diagonal) mod modulus.
/// Each diagonal entry is a divisor of the modulus, with 0 standing for the
/// zero ideal; transforms have entries in [0, modulus). Entries never grow,
/// so this is the tool of choice when the torsion of interest is known to be
/// killed by a small number. Requires modulus < 2^31.
struct ModularSmithForm {
  std::int64_t modulus = 0;
  std::vector<std::int64_t> diagonal; // length min(rows, cols)
  IntMatrix left;
  IntMatrix right;
};

ModularSmithForm smith_mod(const IntMatrix& a, std::int64_t modulus, bool with_left = true, bool with_right = true);

/// Nonzero diagonal entries > 1 of the Smith form: the torsion of coker(a).
std::vector<Int> cokernel_torsion(const IntMatrix& a);

std::size_t rank(const IntMatrix& a);
std::size_t rank_mod_p(const IntMatrix& a, std::uint32_t p);

/// Builds the saturated lattice {x in Z^n : <a, x> = 0 for every added a}.
///
/// Constraints are absorbed one at a time into a unimodular basis of the
/// current solution lattice, which keeps every intermediate basis saturated.
class KernelBuilder {
public:
  explicit KernelBuilder(std::size_t n);

  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return basis_.size(); }

  void add_constraint(std::span<const Int> a);
  /// Sparse constraint: sum_k values[k] * x[indices[k]] = 0.
  void add_sparse_constraint(std::span<const std::size_t> indices, std::span<const Int> values);

  /// Current basis as rows, Hermite-reduced.
  IntMatrix basis() const;

private:
  void absorb(std::vector<Int> values);

  std::size_t n_;
  std::vector<IntVector> basis_;
};

/// Saturated basis (rows) of {x : a x = 0}.
IntMatrix kernel(const IntMatrix& a);

/// Membership and coordinates in a lattice given by independent basis rows.
class LatticeSolver {
public:
  LatticeSolver() = default;
  explicit LatticeSolver(const IntMatrix& basis_rows);

  std::size_t rank() const { return echelon_.rows(); }
  std::size_t ambient_dim() const { return echelon_.cols(); }

  /// y with sum_i y_i * basis_i = x, or nullopt when x is not in the lattice.
  std::optional<IntVector> coordinates(std::span<const Int> x) const;
  IntVector coordinates_or_throw(std::span<const Int> x) const;

private:
  IntMatrix echelon_;
  std::vector<std::size_t> pivots_;
  IntMatrix transform_t_; // transpose of the unimodular row transform
};

/// true when the row span of `rows` is a direct summand of Z^cols.
bool rows_saturated(const IntMatrix& rows);

/// A right inverse r of a surjective integer matrix a (a * r = I).
IntMatrix right_inverse(const IntMatrix& a);

} // namespace torinv
