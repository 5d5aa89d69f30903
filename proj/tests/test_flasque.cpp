#include "doctest.h"

#include <random>

#include "groups.hpp"
#include "lattices.hpp"
#include "oracle.hpp"
#include "torinv/cohomology.hpp"
#include "torinv/flasque.hpp"

using namespace torinv;
using namespace testgroups;

namespace {

// Ĥ^-1(h, L) as the cokernel torsion of [A_s - I for every s in h], by the
// textbook elimination.
std::vector<oracle::big> oracle_minus_one(const Subgroup& h, const GaloisLattice& l)
{
  const std::size_t r = l.rank();
  if (r == 0) return {};
  IntMatrix x(r, h.order() * r);
  for (std::size_t i = 0; i < h.order(); ++i)
    x.set_block(0, i * r, l.action(h.elements()[i]) - IntMatrix::identity(r));
  return oracle::cokernel_torsion(x);
}

void check_resolution(const FlasqueResolution& res)
{
  const std::size_t t = res.t_hat->rank(), n = res.n_hat->rank(), s = res.s_hat->rank();
  CHECK(n == t + s);
  CHECK(res.n_hat->has_permutation_basis());
  CHECK(is_exact_sequence(res.inject.matrix, res.project.matrix));
  CHECK(res.inject.is_equivariant());
  CHECK(res.project.is_equivariant());
  CHECK(res.certificate.flasque);
  auto classes = subgroup_classes(res.t_hat->group());
  CHECK(res.certificate.entries.size() == classes.size());
  std::size_t covered = 0;
  for (const auto& b : res.n_blocks) covered += b.copies * (res.t_hat->group()->order() / b.subgroup.order());
  CHECK(covered == n);
}

std::vector<GroupPtr> small_groups()
{
  return {cyclic(2), cyclic(4), klein4(), s3(),    cyclic(6), d4(),     q8(),
          c4xc2(),   c2cubed(), a4(),     d6(),    d8(),      c4xc4()};
}

} // namespace

TEST_CASE("rank zero resolves to zero")
{
  auto g = klein4();
  auto res = flasque_resolution(trivial_lattice(g, 0));
  CHECK(res.n_hat->rank() == 0);
  CHECK(res.s_hat->rank() == 0);
  auto cov = coflasque_cover(trivial_lattice(g, 0));
  CHECK(cov.cover->rank() == 0);
  CHECK(cov.kernel->rank() == 0);
}

TEST_CASE("cover of the trivial lattice")
{
  for (const auto& g : {klein4(), s3(), d4()}) {
    auto m = trivial_lattice(g, 1);
    auto cov = coflasque_cover(m);
    // one copy of Z[g/h] per class, since M^h = M
    CHECK(cov.blocks.size() == subgroup_classes(g).size());
    bool has_trivial_block = false;
    for (const auto& b : cov.blocks) {
      CHECK(b.copies == 1);
      if (b.subgroup.order() == g->order()) {
        has_trivial_block = true;
        CHECK(cov.surjection(0, b.offset) == Int(1));
      }
    }
    CHECK(has_trivial_block);
    for (const auto& h : subgroup_classes(g)) CHECK(tate_direct(1, h, *cov.kernel).is_trivial());
  }
}

TEST_CASE("biquadratic norm-one torus: Picard invariant Z/2")
{
  auto g = klein4();
  auto t = norm_one_torus_lattice(g).lattice;
  auto cov = coflasque_cover(dual(t));
  for (const auto& h : subgroup_classes(g)) CHECK(tate_direct(1, h, *cov.kernel).is_trivial());
  auto res = flasque_resolution(t);
  check_resolution(res);
  auto cert = certify_flasque(*res.s_hat, true);
  CHECK(cert.flasque);
  for (const auto& e : cert.entries) CHECK(e.invariant_factors.empty());
  auto pic = tate_direct(1, Subgroup::whole(g), *res.s_hat);
  CHECK(pic.invariant_factors() == std::vector<Int>{Int(2)});
  // the cyclic subgroups see nothing: flasque plus periodicity
  for (const auto& h : cyclic_subgroup_classes(g)) CHECK(tate_direct(1, h, *res.s_hat).is_trivial());
}

TEST_CASE("permutation character lattices have cohomologically trivial flasque part")
{
  for (const auto& g : {klein4(), s3(), d4(), q8()}) {
    for (const auto& h : subgroup_classes(g)) {
      auto res = flasque_resolution(permutation_lattice(h));
      check_resolution(res);
      for (const auto& k : subgroup_classes(g)) CHECK(tate_direct(1, k, *res.s_hat).is_trivial());
    }
  }
}

TEST_CASE("certification: permutation lattices pass, the sign lattice fails")
{
  auto g = d4();
  for (const auto& h : subgroup_classes(g)) {
    auto cert = certify_flasque(permutation_lattice(h), true);
    CHECK(cert.flasque);
    CHECK(certify_flasque(permutation_lattice(h), false).flasque);
  }
  auto c2 = cyclic(2);
  auto sign = sign_lattice(Subgroup::trivial(c2));
  auto cert = certify_flasque(sign, true);
  CHECK_FALSE(cert.flasque);
  bool saw = false;
  for (const auto& e : cert.entries)
    if (e.subgroup.order() == 2) {
      saw = true;
      CHECK_FALSE(e.vanishes);
      CHECK(e.invariant_factors == std::vector<Int>{Int(2)});
    }
  CHECK(saw);
  CHECK_FALSE(certify_flasque(sign, false).flasque);
}

TEST_CASE("exactness test rejects broken sequences")
{
  IntMatrix inject(2, 1), project(1, 2);
  inject(0, 0) = 1;
  project(0, 1) = 1;
  CHECK(is_exact_sequence(inject, project));
  inject(0, 0) = 2; // image not saturated
  CHECK_FALSE(is_exact_sequence(inject, project));
  inject(0, 0) = 1;
  project(0, 1) = 2; // not surjective
  CHECK_FALSE(is_exact_sequence(inject, project));
  project(0, 0) = 1; // composite nonzero
  project(0, 1) = 1;
  CHECK_FALSE(is_exact_sequence(inject, project));
}

TEST_CASE("random resolutions are exact and flasque")
{
  std::mt19937_64 rng(2024);
  auto groups = small_groups();
  int oracle_checked = 0;
  for (int it = 0; it < 40; ++it) {
    const auto& g = groups[it % groups.size()];
    auto t = testlattices::random_lattice(rng, g, 1 + rng() % 6);
    auto res = flasque_resolution(t);
    check_resolution(res);
    auto classes = subgroup_classes(g);
    for (const auto& h : classes) {
      CHECK(tate_direct(-1, h, *res.s_hat).is_trivial());
      if (res.s_hat->rank() <= 30 && h.order() <= 8) {
        CHECK(oracle_minus_one(h, *res.s_hat).empty());
        ++oracle_checked;
      }
    }
  }
  CHECK(oracle_checked > 50);
}

TEST_CASE("Picard invariants do not depend on the resolution")
{
  std::mt19937_64 rng(77);
  auto groups = small_groups();
  for (int it = 0; it < 24; ++it) {
    const auto& g = groups[it % groups.size()];
    auto t = testlattices::random_lattice(rng, g, 1 + rng() % 5);
    auto classes = subgroup_classes(g);
    auto a = flasque_resolution(t);
    auto b = flasque_resolution(t, ResolutionVariant::random(rng(), classes.size()));
    check_resolution(b);
    for (const auto& h : classes) {
      CHECK(tate_direct(1, h, *a.s_hat).invariant_factors() == tate_direct(1, h, *b.s_hat).invariant_factors());
    }
  }
}

TEST_CASE("resolution variant must permute the classes")
{
  auto g = klein4();
  ResolutionVariant v;
  v.class_order = {0, 1};
  CHECK_THROWS_AS(flasque_resolution(norm_one_torus_lattice(g).lattice, v), std::invalid_argument);
}

TEST_CASE("pruned covers give smaller resolutions with the same Picard invariants")
{
  std::mt19937_64 rng(404);
  auto groups = small_groups();
  for (int it = 0; it < 26; ++it) {
    const auto& g = groups[it % groups.size()];
    auto t = testlattices::random_lattice(rng, g, 1 + rng() % 5);
    ResolutionVariant v = it % 2 ? ResolutionVariant::random(rng(), subgroup_classes(g).size()) : ResolutionVariant{};
    v.pruned = true;
    auto full = flasque_resolution(t);
    auto small = flasque_resolution(t, v);
    check_resolution(small);
    CHECK(small.s_hat->rank() <= full.s_hat->rank());
    CHECK(small.s_hat->rank() >= t.rank() * (g->order() - 1));
    for (const auto& h : subgroup_classes(g)) {
      CHECK(tate_direct(1, h, *full.s_hat).invariant_factors() == tate_direct(1, h, *small.s_hat).invariant_factors());
    }
  }
}
