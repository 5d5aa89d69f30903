#pragma once

// Tate cohomology of Galois lattices in degrees -1, 0, 1, 2.
//
// Degrees -1 and 0 live in M itself. Degree 1 lives in the space of cocycle
// functions h -> M over every element of h (blocks ordered like
// h.elements()), so restriction is a coordinate projection. Degree 2 is
// degree 1 of the shifted lattice P/M for an embedding of M into a free
// module P = Z[g]^q, taken once for the whole group; its cocycles are stored
// lifted to P over every element of h, so restriction is again a projection.

#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "torinv/abelian.hpp"
#include "torinv/lattice.hpp"

namespace torinv {

/// 0 -> M -> middle -> shifted -> 0 with middle induced from the trivial
/// group, so Ĥ^i(h, shifted) = Ĥ^{i+1}(h, M) for every subgroup h.
struct DimensionShift {
  LatticePtr middle;
  LatticePtr shifted;
  IntMatrix embedding;  // middle.rank x M.rank
  IntMatrix projection; // shifted.rank x middle.rank
  /// Rows phi_t of the embedding m -> sum_s s (x) (phi_t(s^-1 m))_t.
  IntMatrix functionals;
};

/// The standard shift into Z[g] (x) M, m -> sum_s s (x) s^-1 m; rank of the
/// shifted lattice is (|g| - 1) rank(M).
DimensionShift dimension_shift(const GaloisLattice& m);
/// Same construction through q functionals instead of all R coordinates, with
/// q as small as a deterministic random search finds: the embedding must be
/// injective with torsion-free cokernel, checked by Smith form.
DimensionShift compact_dimension_shift(const GaloisLattice& m);

/// Ĥ^degree(h, M) for degree in {-1, 0, 1}; degree 2 goes through the engine.
FiniteAbelianGroup tate_direct(int degree, const Subgroup& h, const GaloisLattice& m);

/// Cheap exact test of Ĥ^degree(h, M) = 0 for degree -1 or 1: the cokernel
/// torsion is killed by |h|, so a rank count mod each prime dividing |h| decides it.
bool tate_vanishes(int degree, const Subgroup& h, const GaloisLattice& m);
/// Ĥ^-1(h, M) = 0 for every subgroup h.
bool is_flasque(const GaloisLattice& m);
/// Ĥ^1(h, M) = 0 for every subgroup h.
bool is_coflasque(const GaloisLattice& m);

/// Matrix of (action(s) - I) over the generators of h, stacked vertically.
IntMatrix coboundary_matrix(const Subgroup& h, const GaloisLattice& m);

/// Memoising front end for one lattice. Thread safe.
class CohomologyEngine {
public:
  enum class Shift { standard, compact };

  explicit CohomologyEngine(LatticePtr m, Shift shift = Shift::compact);

  const LatticePtr& lattice() const { return m_; }

  FiniteAbelianGroup tate(int degree, const Subgroup& h);
  /// Restriction Ĥ^degree(big, M) -> Ĥ^degree(small, M) for degree 0, 1, 2.
  AbelianHom restriction(int degree, const Subgroup& big, const Subgroup& small);

  /// An explicit shift of the same kind (compact or standard), with the
  /// shifted lattice built.
  const DimensionShift& shift();
  /// Functionals of the degree-2 embedding M -> Z[g]^q. In compact mode the
  /// cokernel is only required to be torsion-free at the primes dividing |g|,
  /// which is enough for the cohomology of g and its subgroups.
  const IntMatrix& shift_functionals();

private:
  FiniteAbelianGroup compute(int degree, const Subgroup& h);

  LatticePtr m_;
  Shift shift_kind_;
  std::mutex mutex_;
  std::map<std::pair<int, std::vector<int>>, FiniteAbelianGroup> cache_;
  std::once_flag phi_once_;
  IntMatrix phi_;
  IntMatrix embedding_;
  std::once_flag shift_once_;
  std::unique_ptr<DimensionShift> shift_;
};

FiniteAbelianGroup tate(int degree, const Subgroup& h, const GaloisLattice& m);
AbelianHom restriction(int degree, const Subgroup& big, const Subgroup& small, const GaloisLattice& m);

} // namespace torinv
