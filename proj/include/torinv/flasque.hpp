#pragma once

// Flasque resolutions 0 -> T^ -> N^ -> S^ -> 0 of character lattices, with
// N^ a permutation lattice and S^ flasque, obtained by dualising a coflasque
// cover of the dual lattice.

#include <cstdint>
#include <vector>

#include "torinv/abelian.hpp"
#include "torinv/errors.hpp"
#include "torinv/lattice.hpp"

namespace torinv {

/// Which resolution to build. The default is the canonical one: subgroup
/// classes in canonical order, Hermite bases of the fixed sublattices.
struct ResolutionVariant {
  std::vector<std::size_t> class_order; // permutation of class indices; empty = canonical
  std::uint64_t basis_seed = 0;         // nonzero: random unimodular change of each fixed basis
  /// Keep the full Z[g]^rank block but give every other class only as many
  /// copies as Q^h -> M^h still needs. Smaller S^, same flasque class.
  bool pruned = false;

  /// A random variant: shuffled class order and a random fixed-basis change.
  static ResolutionVariant random(std::uint64_t seed, std::size_t class_count);
};

/// Z[g/h]^copies inside a permutation lattice, starting at basis index offset.
struct PermutationBlock {
  std::size_t class_index;
  Subgroup subgroup;
  std::size_t copies;
  std::size_t offset;
};

struct CoflasqueCover {
  LatticePtr cover;            // Q, a permutation lattice
  LatticePtr kernel;           // C = ker(Q -> M)
  IntMatrix surjection;        // M.rank x Q.rank
  IntMatrix inclusion;         // Q.rank x C.rank
  std::vector<PermutationBlock> blocks;
};

/// 0 -> C -> Q -> M -> 0 with Q = sum over classes h of Z[g/h]^(rank M^h)
/// (fewer copies when the variant is pruned), certified to have Ĥ^1(h, C) = 0 for every class. Throws CertificationError.
CoflasqueCover coflasque_cover(const GaloisLattice& m, const ResolutionVariant& variant = {});

struct FlasqueCertificateEntry {
  std::size_t class_index;
  Subgroup subgroup;
  bool vanishes;                              // Ĥ^-1(h, L) = 0
  std::vector<Int> invariant_factors;         // filled when computed in full
};

struct FlasqueCertificate {
  bool flasque = true;
  std::vector<FlasqueCertificateEntry> entries;
};

/// Ĥ^-1(h, L) over every subgroup class. `full` computes the groups
/// themselves, otherwise only the exact vanishing test is run.
FlasqueCertificate certify_flasque(const GaloisLattice& l, bool full = true);

struct FlasqueResolution {
  LatticePtr t_hat;
  LatticePtr n_hat; // permutation lattice
  LatticePtr s_hat; // flasque
  LatticeMap inject;
  LatticeMap project;
  std::vector<PermutationBlock> n_blocks;
  FlasqueCertificate certificate;
};

/// Throws CertificationError when exactness or flasqueness fails.
FlasqueResolution flasque_resolution(const GaloisLattice& t_hat, const ResolutionVariant& variant = {});

/// Checks 0 -> A -> B -> C -> 0 exact as integer lattices (maps as matrices).
bool is_exact_sequence(const IntMatrix& inject, const IntMatrix& project);

} // namespace torinv
