#include "doctest.h"

#include <random>

#include "groups.hpp"
#include "lattices.hpp"
#include "oracle.hpp"
#include "torinv/cohomology.hpp"

using namespace torinv;
using namespace testgroups;

namespace {

std::vector<oracle::big> factors(const FiniteAbelianGroup& a)
{
  return oracle::to_big(a.invariant_factors());
}

// Bar complex over every element of h: C^0 = M, C^1 = M^h, C^2 = M^(h x h).
IntMatrix bar_d0(const Subgroup& h, const GaloisLattice& m)
{
  const std::size_t r = m.rank(), n = h.order();
  IntMatrix d(n * r, r);
  for (std::size_t i = 0; i < n; ++i) d.set_block(i * r, 0, m.action(h.elements()[i]) - IntMatrix::identity(r));
  return d;
}

IntMatrix bar_d1(const Subgroup& h, const GaloisLattice& m)
{
  const auto& g = *h.parent();
  const auto& e = h.elements();
  const std::size_t r = m.rank(), n = e.size();
  auto pos = [&](int x) { return static_cast<std::size_t>(std::lower_bound(e.begin(), e.end(), x) - e.begin()); };
  IntMatrix d(n * n * r, n * r);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      // (dc)(s,t) = s c(t) - c(st) + c(s)
      const std::size_t row0 = (a * n + b) * r;
      const IntMatrix& s = m.action(e[a]);
      const std::size_t st = pos(g.mul(e[a], e[b]));
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) d(row0 + i, b * r + j) += s(i, j);
        d(row0 + i, st * r + i) -= Int(1);
        d(row0 + i, a * r + i) += Int(1);
      }
    }
  return d;
}

std::vector<oracle::big> oracle_h1(const Subgroup& h, const GaloisLattice& m)
{
  IntMatrix d0 = bar_d0(h, m), d1 = bar_d1(h, m);
  // Z^1 = ker d1 must have the rank of B^1 = im d0 for the torsion of coker d0 to be Z^1/B^1.
  REQUIRE((d1 * d0).is_zero());
  REQUIRE(h.order() * m.rank() - oracle::rank(d1) == oracle::rank(d0));
  return oracle::cokernel_torsion(d0);
}

std::vector<oracle::big> oracle_h2(const Subgroup& h, const GaloisLattice& m)
{
  return oracle::cokernel_torsion(bar_d1(h, m));
}

std::vector<oracle::big> oracle_hminus1(const Subgroup& h, const GaloisLattice& m)
{
  const std::size_t r = m.rank();
  IntMatrix x(r, h.order() * r);
  for (std::size_t i = 0; i < h.order(); ++i) x.set_block(0, i * r, m.action(h.elements()[i]) - IntMatrix::identity(r));
  REQUIRE(oracle::rank(x) + oracle::rank(m.norm(h)) == r);
  return oracle::cokernel_torsion(x);
}

std::vector<oracle::big> oracle_h0(const Subgroup& h, const GaloisLattice& m)
{
  return oracle::cokernel_torsion(m.norm(h));
}

std::vector<GroupPtr> small_groups()
{
  return {cyclic(2), cyclic(3), cyclic(4), klein4(), c6(), s3(), cyclic(8), c4xc2(), c2cubed(), d4(), q8()};
}

void check_witnesses(const FiniteAbelianGroup& a)
{
  for (std::size_t i = 0; i < a.ngens(); ++i) {
    IntVector w = a.witnesses()[i];
    IntVector c = a.reduce(w);
    IntVector e(a.ngens());
    e[i] = 1;
    CHECK(c == e);
    CHECK(a.element_order(c) == a.invariant_factors()[i]);
    IntVector dw = w;
    for (auto& x : dw) x *= a.invariant_factors()[i];
    CHECK(is_zero_vector(a.reduce(dw)));
  }
}

} // namespace

TEST_CASE("textbook values")
{
  auto v4 = klein4();
  auto g = Subgroup::whole(v4);
  auto z = trivial_lattice(v4, 1);
  CHECK(tate(0, g, z).str() == "Z/4");
  CHECK(tate(1, g, z).is_trivial());
  CHECK(tate(-1, g, z).is_trivial()); // the norm is injective on Z
  CHECK(tate(2, g, z).str() == "Z/2 x Z/2");
  auto c2 = cyclic(2);
  auto sign = sign_lattice(Subgroup::trivial(c2));
  CHECK(tate(-1, Subgroup::whole(c2), sign).str() == "Z/2");
  CHECK(tate(0, Subgroup::whole(c2), sign).is_trivial());
  CHECK(tate(1, Subgroup::whole(c2), sign).str() == "Z/2");
  CHECK(tate(0, Subgroup::whole(q8()), trivial_lattice(q8(), 1)).str() == "Z/8");
  CHECK_THROWS_AS(tate(3, g, z), std::invalid_argument);
  CHECK_THROWS_AS(tate(-2, g, z), std::invalid_argument);
}

TEST_CASE("dimension shift shape")
{
  auto v4 = klein4();
  auto m = testlattices::coset_norm_one(Subgroup::trivial(v4));
  auto d = dimension_shift(m);
  CHECK(d.shifted->rank() == 9);
  d.shifted->validate();
  CHECK(LatticeMap{std::make_shared<GaloisLattice>(m), d.middle, d.embedding}.is_equivariant());
  CHECK(LatticeMap{d.middle, d.shifted, d.projection}.is_equivariant());
  CHECK(smith_diagonal(d.embedding) == std::vector<Int>(3, Int(1)));
  CHECK((d.projection * d.embedding).is_zero());
  auto empty = dimension_shift(trivial_lattice(v4, 0));
  CHECK(empty.shifted->rank() == 0);
  auto c = compact_dimension_shift(m);
  CHECK(c.functionals.rows() <= 3);
  CHECK(c.shifted->rank() == 4 * c.functionals.rows() - 3);
  CHECK(smith_diagonal(c.embedding) == std::vector<Int>(3, Int(1)));
}

TEST_CASE("degree one agrees with the bar complex for every subgroup of order at most 8")
{
  std::mt19937_64 rng(101);
  for (auto g : small_groups()) {
    auto classes = subgroup_classes(g);
    for (int trial = 0; trial < 6; ++trial) {
      GaloisLattice m = testlattices::random_lattice(rng, g, 4);
      m.validate();
      for (const auto& h : all_subgroups(g)) {
        auto ours = tate_direct(1, h, m);
        CHECK(factors(ours) == oracle_h1(h, m));
        check_witnesses(ours);
      }
    }
  }
}

TEST_CASE("degrees -1 and 0 agree with direct computations")
{
  std::mt19937_64 rng(103);
  for (auto g : small_groups()) {
    for (int trial = 0; trial < 4; ++trial) {
      GaloisLattice m = testlattices::random_lattice(rng, g, 4);
      for (const auto& h : subgroup_classes(g)) {
        auto a = tate_direct(-1, h, m), b = tate_direct(0, h, m);
        CHECK(factors(a) == oracle_hminus1(h, m));
        CHECK(factors(b) == oracle_h0(h, m));
        check_witnesses(a);
        check_witnesses(b);
      }
    }
  }
}

TEST_CASE("degree two through either shift agrees with the bar complex")
{
  std::mt19937_64 rng(107);
  for (auto g : {cyclic(2), cyclic(3), cyclic(4), klein4(), s3(), c6()}) {
    for (int trial = 0; trial < 4; ++trial) {
      auto m = std::make_shared<GaloisLattice>(testlattices::random_lattice(rng, g, 3));
      CohomologyEngine compact(m, CohomologyEngine::Shift::compact);
      CohomologyEngine standard(m, CohomologyEngine::Shift::standard);
      for (const auto& h : subgroup_classes(g)) {
        auto expect = oracle_h2(h, *m);
        CHECK(factors(compact.tate(2, h)) == expect);
        CHECK(factors(standard.tate(2, h)) == expect);
      }
    }
  }
}

TEST_CASE("degree two on order 8")
{
  std::mt19937_64 rng(109);
  for (auto g : {d4(), q8(), c4xc2()}) {
    auto m = std::make_shared<GaloisLattice>(testlattices::random_lattice(rng, g, 2));
    CohomologyEngine e(m);
    auto h = Subgroup::whole(g);
    CHECK(factors(e.tate(2, h)) == oracle_h2(h, *m));
  }
  // H^2(Q8, Z) = Z/2 x Z/2, H^2(D4, Z) = Z/2 x Z/2, H^2(C2^3, Z) = (Z/2)^3
  CHECK(tate(2, Subgroup::whole(q8()), trivial_lattice(q8(), 1)).str() == "Z/2 x Z/2");
  CHECK(tate(2, Subgroup::whole(d4()), trivial_lattice(d4(), 1)).str() == "Z/2 x Z/2");
  CHECK(tate(2, Subgroup::whole(c2cubed()), trivial_lattice(c2cubed(), 1)).str() == "Z/2 x Z/2 x Z/2");
}

TEST_CASE("periodicity for cyclic subgroups")
{
  std::mt19937_64 rng(113);
  int cases = 0;
  for (auto g : {cyclic(2), cyclic(4), c6(), cyclic(8), s3(), d4(), c4xc2()}) {
    for (int trial = 0; trial < 20; ++trial) {
      auto m = std::make_shared<GaloisLattice>(testlattices::random_lattice(rng, g, 4));
      CohomologyEngine e(m);
      for (const auto& h : cyclic_subgroup_classes(g)) {
        CHECK(same_structure(e.tate(1, h), e.tate(-1, h)));
        CHECK(same_structure(e.tate(2, h), e.tate(0, h)));
        ++cases;
      }
    }
  }
  CHECK(cases >= 100);
}

TEST_CASE("Shapiro vanishing and induced acyclicity")
{
  std::mt19937_64 rng(127);
  for (auto g : {klein4(), s3(), d4(), q8(), a4()}) {
    auto classes = subgroup_classes(g);
    for (const auto& hp : classes) {
      auto p = permutation_lattice(hp);
      for (const auto& h : classes) {
        CHECK(tate(1, h, p).is_trivial());
        CHECK(tate_vanishes(1, h, p));
        CHECK(tate_vanishes(-1, h, p));
      }
    }
    auto induced = std::make_shared<GaloisLattice>(induced_lattice(testlattices::random_lattice(rng, g, 2)));
    CohomologyEngine e(induced);
    for (const auto& h : classes)
      for (int i = -1; i <= 2; ++i) CHECK(e.tate(i, h).is_trivial());
  }
}

TEST_CASE("fast vanishing test agrees with the full computation")
{
  std::mt19937_64 rng(131);
  for (auto g : small_groups()) {
    for (int trial = 0; trial < 6; ++trial) {
      GaloisLattice m = testlattices::random_lattice(rng, g, 4);
      bool flasque = true, coflasque = true;
      for (const auto& h : subgroup_classes(g)) {
        bool a = tate_direct(-1, h, m).is_trivial(), b = tate_direct(1, h, m).is_trivial();
        CHECK(tate_vanishes(-1, h, m) == a);
        CHECK(tate_vanishes(1, h, m) == b);
        flasque = flasque && a;
        coflasque = coflasque && b;
      }
      CHECK(is_flasque(m) == flasque);
      CHECK(is_coflasque(m) == coflasque);
    }
  }
  CHECK_FALSE(is_flasque(sign_lattice(Subgroup::trivial(cyclic(2)))));
}

TEST_CASE("restriction is functorial")
{
  std::mt19937_64 rng(137);
  for (auto g : {klein4(), d4(), q8(), c4xc2(), a4()}) {
    for (int trial = 0; trial < 3; ++trial) {
      auto m = std::make_shared<GaloisLattice>(testlattices::random_lattice(rng, g, 3));
      CohomologyEngine e(m);
      auto subs = all_subgroups(g);
      for (int degree : {0, 1, 2})
        for (const auto& a : subs)
          for (const auto& b : subs) {
            if (!a.contains(b)) continue;
            if (a == b) CHECK(e.restriction(degree, a, b).matrix().is_identity());
            for (const auto& c : subs) {
              if (!b.contains(c) || rng() % 4) continue;
              auto direct = e.restriction(degree, a, c);
              auto composed = e.restriction(degree, b, c).after(e.restriction(degree, a, b));
              CHECK(direct == composed);
            }
          }
    }
  }
}

TEST_CASE("restriction to a Sylow subgroup is injective on the p-part")
{
  std::mt19937_64 rng(139);
  auto g = s3();
  for (int trial = 0; trial < 10; ++trial) {
    auto m = std::make_shared<GaloisLattice>(testlattices::random_lattice(rng, g, 4));
    CohomologyEngine e(m);
    auto whole = Subgroup::whole(g);
    for (const auto& h : all_subgroups(g)) {
      if (h.order() != 2 && h.order() != 3) continue;
      const long p = static_cast<long>(h.order());
      for (int degree : {1, 2}) {
        auto res = e.restriction(degree, whole, h);
        auto k = res.kernel();
        for (const auto& d : k.invariant_factors()) CHECK(!divides(Int(p), d));
      }
    }
  }
}

TEST_CASE("restriction to the trivial subgroup is zero and rejects non-subgroups")
{
  auto g = d4();
  auto m = std::make_shared<GaloisLattice>(testlattices::coset_norm_one(Subgroup::trivial(g)));
  CohomologyEngine e(m);
  auto res = e.restriction(1, Subgroup::whole(g), Subgroup::trivial(g));
  CHECK(res.target().is_trivial());
  auto subs = all_subgroups(g);
  CHECK_THROWS_AS(e.restriction(1, subs[1], subs[2]), std::invalid_argument);
}

TEST_CASE("cocycle reduction rejects non-cocycles")
{
  auto g = klein4();
  auto z = trivial_lattice(g, 1);
  auto h1 = tate(1, Subgroup::whole(g), sign_lattice(all_subgroups(g)[1]));
  IntVector junk(h1.ambient_dim());
  junk[1] = 1;
  CHECK_THROWS(h1.reduce(junk));
}
