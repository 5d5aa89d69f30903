#pragma once

// Number-field invariants of a torus T from its splitting group g, its
// character lattice T^ and the decomposition groups of the places whose
// decomposition group is not cyclic. Everything is computed on the character
// side, from a flasque resolution 0 -> T^ -> N^ -> S^ -> 0:
//
//   picard       Ĥ^1(g, S^)
//   local        Ĥ^1(g_v, S^) per listed place
//   mu           Ĥ^1(g, S^) -> sum_v Ĥ^1(g_v, S^), the sum of restrictions
//   T(k)/Br      Im(lambda) / Im(mu), lambda = sum of the restriction images
//   A(T)         Im(mu)
//   Sha(T)       ker(mu)
//   Sha(S)       ker(Ĥ^2(g, S^) -> sum over D of Ĥ^2(d, S^))
//
// with D = every cyclic subgroup class together with the listed places.
// Places with cyclic decomposition group contribute nothing to the Ĥ^1 terms
// (S^ is flasque and Ĥ^1 = Ĥ^-1 for cyclic groups), so they are never listed.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torinv/abelian.hpp"
#include "torinv/cohomology.hpp"
#include "torinv/flasque.hpp"

namespace torinv {

struct Place {
  std::string label;
  Subgroup subgroup; // decomposition group g_v
};

struct PlacesSpec {
  std::vector<Place> bad_places;
  /// true: bad_places is every place with non-cyclic decomposition group.
  /// false: it is a partial list and verdicts only speak about it.
  bool complete = true;
};

struct RestrictionSystem {
  std::shared_ptr<CohomologyEngine> engine; // on S^
  std::vector<Place> places;
  FiniteAbelianGroup global;             // Ĥ^1(g, S^)
  std::vector<FiniteAbelianGroup> local; // Ĥ^1(g_v, S^)
  std::vector<AbelianHom> res;           // global -> local[v]
  std::vector<bool> surjective;          // per place
  FiniteAbelianGroup local_sum;
  AbelianHom mu;
  FiniteAbelianGroup image_lambda; // in local_sum
  FiniteAbelianGroup image_mu;     // in local_sum
  FiniteAbelianGroup mu_kernel;    // in global
  std::vector<IntVector> lambda_generators; // local_sum class coordinates
};

/// Throws std::invalid_argument when a place's subgroup belongs to another group.
RestrictionSystem restriction_system(const FlasqueResolution& res, const PlacesSpec& places);

/// Im(lambda) / Im(mu).
FiniteAbelianGroup brauer_classes(const RestrictionSystem& sys);
/// |sum_v Ĥ^1(g_v, S^)| / |Im(mu)|; equals |T(k)/Br| when every restriction is onto.
Int brauer_classes_alt_order(const RestrictionSystem& sys);
FiniteAbelianGroup wa_defect(const RestrictionSystem& sys);
FiniteAbelianGroup sha_T(const RestrictionSystem& sys);

/// ker(Ĥ^2(g, L) -> sum over d of Ĥ^2(d, L)) for the given subgroups.
FiniteAbelianGroup second_cohomology_kernel(CohomologyEngine& engine, const std::vector<Subgroup>& subgroups);
/// Every cyclic subgroup class, then the listed places.
std::vector<Subgroup> detecting_subgroups(const GroupPtr& g, const PlacesSpec& places);

/// Sha(T) through T^ instead of S^: the degree-2 kernel on T^ over the
/// detecting subgroups. Agrees with ker(mu).
FiniteAbelianGroup sha_T_from_characters(const GaloisLattice& t_hat, const PlacesSpec& places);
FiniteAbelianGroup sha_S(const FlasqueResolution& res, const PlacesSpec& places);

enum class WaVerdict { holds, fails, holds_for_listed_places_only };
std::string to_string(WaVerdict v);

struct Diagnostic {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct TorusOptions {
  bool cross_check_sha = false;
  ResolutionVariant variant;
};

struct TorusReport {
  std::size_t t_rank = 0, n_rank = 0, s_rank = 0;
  FiniteAbelianGroup picard_invariant;
  std::vector<std::pair<std::string, FiniteAbelianGroup>> local_brauer;
  FiniteAbelianGroup brauer_classes;
  Int brauer_classes_alt_order;
  FiniteAbelianGroup wa_defect;
  FiniteAbelianGroup sha_T;
  std::optional<FiniteAbelianGroup> sha_T_cross_check;
  FiniteAbelianGroup sha_S;
  Int n_T;
  Int r_classes_order;
  WaVerdict wa_verdict = WaVerdict::holds;
  bool picard_trivial = true; // the stronger sufficient condition for weak approximation
  /// Formula-agreement checks; failures are warnings, not errors.
  std::vector<Diagnostic> diagnostics;
  /// Field name -> how it was computed.
  std::vector<std::pair<std::string, std::string>> provenance;
};

/// Full report. Throws CertificationError when an internal identity fails
/// (exactness, flasqueness, Im(mu) in Im(lambda), the order identity
/// |A(T)| |Sha(T)| = |picard|, or the optional Sha cross-check).
TorusReport torus_report(const GaloisLattice& t_hat, const PlacesSpec& places, const TorusOptions& options = {});

} // namespace torinv
