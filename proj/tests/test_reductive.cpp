#include "doctest.h"

#include <random>

#include "groups.hpp"
#include "lattices.hpp"
#include "torinv/reductive.hpp"

using namespace torinv;
using namespace testgroups;

namespace {

ReductiveDescriptor descriptor(GaloisLattice t)
{
  ReductiveDescriptor d;
  d.torus_quotient = std::make_shared<GaloisLattice>(std::move(t));
  return d;
}

Subgroup first_of_order(const GroupPtr& g, std::size_t order, bool cyclic)
{
  for (const auto& h : subgroup_classes(g))
    if (h.order() == order && h.is_cyclic() == cyclic) return h;
  throw std::logic_error("no such subgroup");
}

} // namespace

TEST_CASE("simply connected group: rank zero quotient")
{
  auto g = klein4();
  auto r = group_report(descriptor(trivial_lattice(g, 0)), {});
  CHECK(r.brauer_classes.is_trivial());
  CHECK(r.wa_defect.is_trivial());
  CHECK(r.r_status == "unconditional");
  REQUIRE(r.r_classes_order);
  CHECK(*r.r_classes_order == Int(1));
}

TEST_CASE("GL_n over PGL_n: trivial rank one quotient")
{
  auto g = s3();
  PlacesSpec p{{Place{"v", Subgroup::whole(g)}}, true};
  auto r = group_report(descriptor(trivial_lattice(g, 1)), p);
  CHECK(r.torus.picard_trivial);
  CHECK(r.wa_defect.is_trivial());
  CHECK(*r.r_classes_order == Int(1));
  auto c = wa_criteria(descriptor(trivial_lattice(g, 1)), p, {"v"});
  CHECK(c.overall == "holds");
  CHECK(c.picard_trivial);
}

TEST_CASE("biquadratic quotient: delegation is literal")
{
  auto g = klein4();
  auto t = norm_one_torus_lattice(g).lattice;
  auto r = group_report(descriptor(t), {});
  auto tr = torus_report(t, {});
  CHECK(same_structure(r.brauer_classes, tr.brauer_classes));
  CHECK(same_structure(r.wa_defect, tr.wa_defect));
  CHECK(r.brauer_classes.is_trivial());
  CHECK(r.wa_defect.is_trivial());
  CHECK(*r.r_classes_order == tr.sha_S.order() * tr.n_T);
  CHECK(r.r_image_order == tr.n_T);
}

TEST_CASE("exceptional anisotropic factors make the R-group conditional")
{
  auto g = klein4();
  auto d = descriptor(norm_one_torus_lattice(g).lattice);
  d.has_anisotropic_trialitarian_D4_or_E6 = true;
  auto r = group_report(d, {});
  CHECK(r.r_status == "conditional");
  CHECK_FALSE(r.r_classes_order);
  CHECK(r.r_image_order == r.torus.n_T);
  d.base_totally_imaginary = true;
  r = group_report(d, {});
  CHECK(r.r_status == "unconditional");
  CHECK(r.r_classes_order);
}

TEST_CASE("weak approximation criteria and their precedence")
{
  auto g = klein4();
  auto t = norm_one_torus_lattice(g).lattice;
  PlacesSpec p{{Place{"p", Subgroup::whole(g)}, Place{"q", first_of_order(g, 2, true)}}, true};
  auto d = descriptor(t);

  // p has no criterion and A(T) = Z/2
  auto c = wa_criteria(d, p, {"p", "q"});
  CHECK(c.overall == "fails");
  REQUIRE(c.witness);
  CHECK(c.witness->invariant_factors() == std::vector<Int>{Int(2)});
  CHECK(c.places[0].reason == "none");
  CHECK_FALSE(c.places[0].local_br_trivial);
  CHECK(c.places[1].reason == "cyclic_decomposition_group");

  // only the cyclic place queried
  CHECK(wa_criteria(d, p, {"q"}).overall == "holds_in_S");

  d.metacyclic_split_places = {"p"};
  c = wa_criteria(d, p, {"p", "q"});
  CHECK(c.overall == "holds_in_S");
  CHECK(c.places[0].reason == "metacyclic_splitting");

  d.inner_type_places = {"p", "q"};
  c = wa_criteria(d, p, {"p", "q"});
  CHECK(c.places[0].reason == "inner_type");
  CHECK(c.places[1].reason == "inner_type");
}

TEST_CASE("unknown labels are rejected")
{
  auto g = klein4();
  PlacesSpec p{{Place{"p", Subgroup::whole(g)}}, true};
  auto d = descriptor(norm_one_torus_lattice(g).lattice);
  CHECK_THROWS_AS(wa_criteria(d, p, {"nowhere"}), std::invalid_argument);
  d.inner_type_places = {"elsewhere"};
  CHECK_THROWS_WITH_AS(group_report(d, p), doctest::Contains("elsewhere"), std::invalid_argument);
  ReductiveDescriptor empty;
  CHECK_THROWS_AS(group_report(empty, p), std::invalid_argument);
}

TEST_CASE("adding criterion flags never turns holds into fails")
{
  std::mt19937_64 rng(12);
  const std::vector<GroupPtr> groups{klein4(), d4(), c2cubed(), q8()};
  for (int it = 0; it < 12; ++it) {
    const auto& g = groups[it % groups.size()];
    auto d = descriptor(testlattices::random_lattice(rng, g, 4));
    PlacesSpec p;
    std::vector<std::string> labels;
    for (const auto& h : subgroup_classes(g))
      if (h.order() > 1) {
        labels.push_back("v" + std::to_string(labels.size()));
        p.bad_places.push_back(Place{labels.back(), h});
      }
    auto report = torus_report(*d.torus_quotient, p);
    auto rank = [](const std::string& s) { return s == "fails" ? 0 : s == "holds" ? 1 : 2; };
    int prev = rank(wa_criteria(d, p, labels, &report).overall);
    for (const auto& l : labels) {
      (rng() % 2 ? d.inner_type_places : d.metacyclic_split_places).push_back(l);
      int now = rank(wa_criteria(d, p, labels, &report).overall);
      CHECK(now >= prev);
      prev = now;
    }
    CHECK(prev == 2);
  }
}
