#pragma once

// Connected reductive groups, reduced to the torus quotient T = H/[H, H] of a
// z-extension H. The z-extension is an input: the caller supplies the
// character lattice of T together with a few flags that cannot be read off
// lattice data (Tits indices, splitting fields).

#include <optional>
#include <string>
#include <vector>

#include "torinv/arithmetic.hpp"

namespace torinv {

struct ReductiveDescriptor {
  LatticePtr torus_quotient;
  bool has_anisotropic_trialitarian_D4_or_E6 = false;
  bool base_totally_imaginary = false;
  std::vector<std::string> inner_type_places;       // labels from the PlacesSpec
  std::vector<std::string> metacyclic_split_places; // labels from the PlacesSpec
};

/// Throws std::invalid_argument naming the first problem (missing lattice or
/// an undeclared place label).
void validate(const ReductiveDescriptor& desc, const PlacesSpec& places);

struct GroupReport {
  TorusReport torus; // invariants of the torus quotient
  FiniteAbelianGroup brauer_classes; // G(k)/Br, equal to T(k)/Br
  FiniteAbelianGroup wa_defect;      // A(G), equal to A(T)
  /// G(k)/R = T(k)/R is known when there is no anisotropic trialitarian D4
  /// or E6 factor, or the base is totally imaginary.
  bool r_unconditional = true;
  std::optional<Int> r_classes_order; // |G(k)/R|, when unconditional
  Int r_image_order;                  // image of G(k)/R in prod_v G(k_v)/R, always n_T
  std::string r_status;               // "unconditional" or "conditional"
  std::string r_note;
};

GroupReport group_report(const ReductiveDescriptor& desc, const PlacesSpec& places, const TorusOptions& options = {});

struct PlaceVerdict {
  std::string label;
  bool local_br_trivial = false;
  /// inner_type, metacyclic_splitting, cyclic_decomposition_group or none
  std::string reason;
};

struct WaCriteria {
  std::vector<PlaceVerdict> places;
  /// holds_in_S: every queried place passes a local criterion.
  /// holds: some place does not, but A(T) = 0.
  /// fails: some place does not and A(T) != 0 (witness below).
  std::string overall;
  bool picard_trivial = false; // global sufficient condition
  std::optional<FiniteAbelianGroup> witness;
};

/// Local weak-approximation criteria at the queried labels, strongest reason
/// first: inner type, then metacyclic splitting, then cyclic decomposition
/// group. Pass `report` to reuse an existing torus report.
WaCriteria wa_criteria(const ReductiveDescriptor& desc, const PlacesSpec& places,
                       const std::vector<std::string>& query, const TorusReport* report = nullptr);

} // namespace torinv
