#pragma once

// Galois lattices: Z^rank with an action of a finite group by unimodular
// matrices, and equivariant maps between them.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "torinv/group.hpp"
#include "torinv/matrix.hpp"

namespace torinv {

class GaloisLattice {
public:
  GaloisLattice() = default;

  /// Lattice given by matrices for a list of group elements that generate the
  /// group; every other element's matrix follows from the Cayley table. Throws
  /// std::invalid_argument when the assignment does not extend to a homomorphism.
  static GaloisLattice from_generators(GroupPtr g, std::size_t rank, const std::vector<int>& elements,
                                       const std::vector<IntMatrix>& matrices);
  /// Lattice from a matrix for every element, trusted (call validate() to check).
  static GaloisLattice from_actions(GroupPtr g, std::size_t rank, std::vector<IntMatrix> actions);
  /// Permutation lattice: images[s][i] is the basis index that s sends e_i to.
  static GaloisLattice from_permutations(GroupPtr g, std::vector<std::vector<int>> images);

  const GroupPtr& group() const { return group_; }
  std::size_t rank() const { return rank_; }
  const IntMatrix& action(int s) const { return actions_[s]; }
  const std::vector<IntMatrix>& actions() const { return actions_; }

  bool has_permutation_basis() const { return !permutation_.empty(); }
  /// Basis permutation of each element; empty unless has_permutation_basis().
  const std::vector<std::vector<int>>& permutation() const { return permutation_; }

  /// Optional display labels of basis vectors (e.g. cosets).
  std::vector<std::string> basis_tags;

  /// Checks the homomorphism property over the full Cayley table and
  /// unimodularity; throws std::invalid_argument naming the failure.
  void validate() const;

  /// Sum of the actions of the elements of h.
  IntMatrix norm(const Subgroup& h) const;
  /// Rank of the h-fixed sublattice from the character formula.
  std::size_t fixed_rank(const Subgroup& h) const;

  friend bool operator==(const GaloisLattice& a, const GaloisLattice& b)
  {
    return a.rank_ == b.rank_ && a.actions_ == b.actions_;
  }

private:
  GroupPtr group_;
  std::size_t rank_ = 0;
  std::vector<IntMatrix> actions_;
  std::vector<std::vector<int>> permutation_;
};

using LatticePtr = std::shared_ptr<const GaloisLattice>;

/// Equivariant map; matrix is target.rank x source.rank.
struct LatticeMap {
  LatticePtr source;
  LatticePtr target;
  IntMatrix matrix;

  bool is_equivariant() const;
};

GaloisLattice trivial_lattice(GroupPtr g, std::size_t rank);
/// Z[g/h] on the left cosets of h, identity coset first.
GaloisLattice permutation_lattice(const Subgroup& h);
GaloisLattice regular_lattice(GroupPtr g);
/// Rank one, s acting by +1 on the index-2 subgroup h and by -1 elsewhere.
GaloisLattice sign_lattice(const Subgroup& index_two);
/// Z[g] (x) M with g acting on the Z[g] factor only; basis e_s (x) f_j at s*rank + j.
GaloisLattice induced_lattice(const GaloisLattice& m);

GaloisLattice dual(const GaloisLattice& l);
GaloisLattice direct_sum(const GaloisLattice& a, const GaloisLattice& b);
/// Same module in a new basis: actions become u * A(s) * u_inverse.
GaloisLattice change_basis(const GaloisLattice& l, const IntMatrix& u, const IntMatrix& u_inverse);

/// Saturated, Hermite-reduced basis (rows) of the h-fixed sublattice.
IntMatrix fixed_sublattice(const GaloisLattice& l, const Subgroup& h);

/// The g-stable saturated sublattice spanned by `rows`, in that basis.
GaloisLattice sublattice(const GaloisLattice& l, const IntMatrix& rows);

struct QuotientLattice {
  GaloisLattice lattice;
  IntMatrix projection; // quotient.rank x l.rank, surjective, kernel = the sublattice
  IntMatrix section;    // l.rank x quotient.rank with projection * section = I
};

/// Quotient by a g-stable saturated sublattice (basis rows). The quotient basis
/// is dual to the Hermite basis of the annihilator of the sublattice.
QuotientLattice quotient_lattice(const GaloisLattice& l, const IntMatrix& rows);

struct NormOneLattice {
  GaloisLattice lattice;
  LatticeMap surjection; // Z[g] -> lattice
};

/// Character lattice of the norm-one torus: Z[g] / Z * (sum of all s).
NormOneLattice norm_one_torus_lattice(GroupPtr g);

} // namespace torinv
