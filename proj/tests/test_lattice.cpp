#include "doctest.h"

#include <random>

#include "groups.hpp"
#include "lattices.hpp"
#include "oracle.hpp"
#include "torinv/lattice.hpp"

using namespace torinv;
using namespace testgroups;

TEST_CASE("permutation lattices")
{
  auto g = s3();
  for (const auto& h : all_subgroups(g)) {
    auto p = permutation_lattice(h);
    p.validate();
    CHECK(p.rank() * h.order() == g->order());
    CHECK(p.has_permutation_basis());
  }
  auto whole = permutation_lattice(Subgroup::whole(g));
  CHECK(whole.rank() == 1);
  CHECK(whole.action(3).is_identity());
  auto reg = regular_lattice(klein4());
  CHECK(reg.rank() == 4);
}

TEST_CASE("norm one lattice")
{
  auto trivial = FiniteGroup::from_permutations({});
  CHECK(norm_one_torus_lattice(trivial).lattice.rank() == 0);
  auto c2 = norm_one_torus_lattice(cyclic(2));
  CHECK(c2.lattice.rank() == 1);
  CHECK(c2.lattice.action(1) == IntMatrix{{-1}});
  auto v4 = norm_one_torus_lattice(klein4());
  v4.lattice.validate();
  CHECK(v4.lattice.rank() == 3);
  CHECK(v4.surjection.is_equivariant());
  for (std::size_t s = 0; s < 4; ++s) {
    const auto& a = v4.lattice.action(static_cast<int>(s));
    CHECK((a * a).is_identity());
    auto d = oracle::smith_invariants(oracle::to_big(a));
    CHECK(oracle::product(d) == 1);
  }
}

TEST_CASE("duals")
{
  std::mt19937_64 rng(41);
  for (auto g : {klein4(), s3(), d4(), q8()}) {
    for (int t = 0; t < 5; ++t) {
      auto m = testlattices::random_lattice(rng, g, 5);
      auto d = dual(m);
      d.validate();
      CHECK(dual(d) == m);
    }
  }
  auto z3 = trivial_lattice(s3(), 3);
  CHECK(dual(z3) == z3);
  auto sign = sign_lattice(Subgroup::trivial(cyclic(2)));
  CHECK(dual(sign) == sign);
  auto p = permutation_lattice(all_subgroups(s3())[1]);
  CHECK(dual(p).has_permutation_basis());
}

TEST_CASE("fixed sublattices")
{
  std::mt19937_64 rng(43);
  auto g = d4();
  auto reg = regular_lattice(g);
  auto f = fixed_sublattice(reg, Subgroup::whole(g));
  REQUIRE(f.rows() == 1);
  for (std::size_t i = 0; i < 8; ++i) CHECK(f(0, i) == Int(1));
  CHECK(fixed_sublattice(reg, Subgroup::trivial(g)).is_identity());
  CHECK(fixed_sublattice(sign_lattice(Subgroup::trivial(cyclic(2))), Subgroup::whole(cyclic(2))).rows() == 0);
  for (int t = 0; t < 10; ++t) {
    auto m = testlattices::random_lattice(rng, g, 5);
    for (const auto& h : all_subgroups(g)) {
      auto b = fixed_sublattice(m, h);
      CHECK(b.rows() == m.fixed_rank(h));
      for (int s : h.elements())
        for (std::size_t i = 0; i < b.rows(); ++i) CHECK(m.action(s).apply(b.row(i)) == b.row_vector(i));
      if (b.rows()) CHECK(rows_saturated(b));
    }
  }
}

TEST_CASE("from_generators checks relations")
{
  auto g = cyclic(4);
  GaloisLattice ok = GaloisLattice::from_generators(g, 2, g->generators(), {IntMatrix{{0, -1}, {1, 0}}});
  ok.validate();
  CHECK_THROWS_AS(GaloisLattice::from_generators(g, 2, g->generators(), {IntMatrix{{1, 1}, {0, 1}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(GaloisLattice::from_generators(g, 2, g->generators(), {}), std::invalid_argument);
}

TEST_CASE("sublattice and quotient")
{
  auto g = s3();
  auto p = permutation_lattice(all_subgroups(g)[1]);
  IntMatrix ones(1, 3);
  for (int i = 0; i < 3; ++i) ones(0, i) = 1;
  auto sub = sublattice(p, ones);
  CHECK(sub.rank() == 1);
  auto q = quotient_lattice(p, ones);
  q.lattice.validate();
  CHECK(q.lattice.rank() == 2);
  CHECK((q.projection * q.section).is_identity());
  IntMatrix twice(1, 3);
  for (int i = 0; i < 3; ++i) twice(0, i) = 2;
  CHECK_THROWS_AS(quotient_lattice(p, twice), std::invalid_argument);
}
