#include "torinv/reductive.hpp"

#include <algorithm>
#include <stdexcept>

namespace torinv {

namespace {

const Place* find_place(const PlacesSpec& places, const std::string& label)
{
  for (const auto& p : places.bad_places)
    if (p.label == label) return &p;
  return nullptr;
}

bool listed(const std::vector<std::string>& labels, const std::string& label)
{
  return std::find(labels.begin(), labels.end(), label) != labels.end();
}

} // namespace

void validate(const ReductiveDescriptor& desc, const PlacesSpec& places)
{
  if (!desc.torus_quotient) throw std::invalid_argument("reductive descriptor: torus_quotient is missing");
  for (const auto* list : {&desc.inner_type_places, &desc.metacyclic_split_places})
    for (const auto& label : *list)
      if (!find_place(places, label)) {
        throw std::invalid_argument("reductive descriptor: place '" + label + "' is not declared");
      }
}

GroupReport group_report(const ReductiveDescriptor& desc, const PlacesSpec& places, const TorusOptions& options)
{
  validate(desc, places);
  GroupReport r;
  r.torus = torus_report(*desc.torus_quotient, places, options);
  r.brauer_classes = r.torus.brauer_classes;
  r.wa_defect = r.torus.wa_defect;
  r.r_image_order = r.torus.n_T;
  r.r_unconditional = !desc.has_anisotropic_trialitarian_D4_or_E6 || desc.base_totally_imaginary;
  if (r.r_unconditional) {
    r.r_classes_order = r.torus.r_classes_order;
    r.r_status = "unconditional";
    r.r_note = "G(k)/R = T(k)/R for the torus quotient of a z-extension";
  } else {
    r.r_status = "conditional";
    r.r_note = "anisotropic trialitarian D4 or E6 factor over a base with a real place: the image of G(k)/R in "
               "prod_v G(k_v)/R has order n_T; the kernel is known only modulo a case of the Platonov-Margulis "
               "conjecture";
  }
  return r;
}

WaCriteria wa_criteria(const ReductiveDescriptor& desc, const PlacesSpec& places,
                       const std::vector<std::string>& query, const TorusReport* report)
{
  validate(desc, places);
  WaCriteria out;
  bool all_pass = true;
  for (const auto& label : query) {
    const Place* p = find_place(places, label);
    if (!p) throw std::invalid_argument("wa_criteria: unknown place label '" + label + "'");
    PlaceVerdict v{label, true, "none"};
    if (listed(desc.inner_type_places, label)) {
      v.reason = "inner_type";
    } else if (listed(desc.metacyclic_split_places, label)) {
      v.reason = "metacyclic_splitting";
    } else if (p->subgroup.is_cyclic()) {
      v.reason = "cyclic_decomposition_group";
    } else {
      v.local_br_trivial = false;
      all_pass = false;
    }
    out.places.push_back(std::move(v));
  }
  std::optional<TorusReport> own;
  if (!report) {
    own = torus_report(*desc.torus_quotient, places);
    report = &*own;
  }
  out.picard_trivial = report->picard_trivial;
  if (all_pass) {
    out.overall = "holds_in_S";
  } else if (report->wa_defect.is_trivial()) {
    out.overall = "holds";
  } else {
    out.overall = "fails";
    out.witness = report->wa_defect;
  }
  return out;
}

} // namespace torinv
