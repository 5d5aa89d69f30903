#include "torinv/verify.hpp"

#include <functional>
#include <random>

#include "torinv/arithmetic.hpp"
#include "torinv/cohomology.hpp"
#include "torinv/flasque.hpp"

namespace torinv {

namespace {

GroupPtr perm_group(std::vector<std::string> gens)
{
  std::vector<Permutation> ps;
  for (const auto& s : gens) ps.push_back(Permutation::parse(s));
  return FiniteGroup::from_permutations(std::move(ps));
}

GaloisLattice coset_norm_one(const Subgroup& h)
{
  GaloisLattice p = permutation_lattice(h);
  IntMatrix ones(1, p.rank());
  for (std::size_t i = 0; i < p.rank(); ++i) ones(0, i) = 1;
  return quotient_lattice(p, ones).lattice;
}

GaloisLattice random_piece(std::mt19937_64& rng, const GroupPtr& g, std::size_t max_rank)
{
  auto subs = all_subgroups(g);
  for (int attempt = 0; attempt < 50; ++attempt) {
    const auto& h = subs[rng() % subs.size()];
    const std::size_t index = g->order() / h.order();
    switch (rng() % 5) {
    case 0:
      return trivial_lattice(g, 1);
    case 1:
      if (index == 2) return sign_lattice(h);
      break;
    case 2:
      if (index <= max_rank) return permutation_lattice(h);
      break;
    case 3:
      if (index >= 2 && index - 1 <= max_rank) return coset_norm_one(h);
      break;
    case 4:
      if (index >= 2 && index - 1 <= max_rank) return dual(coset_norm_one(h));
      break;
    }
  }
  return trivial_lattice(g, 1);
}

// Product of random elementary operations, with its inverse.
std::pair<IntMatrix, IntMatrix> random_unimodular(std::mt19937_64& rng, std::size_t n)
{
  IntMatrix u = IntMatrix::identity(n), ui = IntMatrix::identity(n);
  if (n < 2) return {u, ui};
  for (std::size_t step = 0; step < 2 * n; ++step) {
    std::size_t i = rng() % n, j = rng() % n;
    int c = static_cast<int>(rng() % 5) - 2;
    if (i == j || c == 0) continue;
    // u <- E u, ui <- ui E^-1 with E = I + c e_ij
    for (std::size_t k = 0; k < n; ++k) u(i, k).add_mul(Int(c), u(j, k));
    for (std::size_t k = 0; k < n; ++k) ui(k, j).add_mul(Int(-c), ui(k, i));
  }
  return {u, ui};
}

struct Runner {
  std::vector<SuiteResult> results;

  void suite(const std::string& name, std::size_t cases, const std::function<std::string(std::size_t)>& one)
  {
    SuiteResult r{name, cases, 0, {}};
    for (std::size_t i = 0; i < cases; ++i) {
      std::string why;
      try {
        why = one(i);
      } catch (const std::exception& e) {
        why = std::string("exception: ") + e.what();
      }
      if (why.empty()) continue;
      ++r.failures;
      if (r.failure_details.size() < 5) r.failure_details.push_back("case " + std::to_string(i) + ": " + why);
    }
    results.push_back(std::move(r));
  }
};

} // namespace

std::vector<std::pair<std::string, GroupPtr>> standard_small_groups()
{
  return {
      {"C2", perm_group({"(1,2)"})},
      {"C4", perm_group({"(1,2,3,4)"})},
      {"V4", perm_group({"(1,2)(3,4)", "(1,3)(2,4)"})},
      {"S3", perm_group({"(1,2,3)", "(1,2)"})},
      {"C6", perm_group({"(1,2,3,4,5,6)"})},
      {"D4", perm_group({"(1,2,3,4)", "(1,3)"})},
      {"Q8", perm_group({"(1,2,4,7)(3,6,8,5)", "(1,3,4,8)(2,5,7,6)"})},
      {"C4xC2", perm_group({"(1,2,3,4)", "(5,6)"})},
      {"C2^3", perm_group({"(1,2)", "(3,4)", "(5,6)"})},
      {"A4", perm_group({"(1,2,3)", "(1,2)(3,4)"})},
      {"D6", perm_group({"(1,2,3,4,5,6)", "(1,6)(2,5)(3,4)"})},
  };
}

GaloisLattice random_lattice(std::uint64_t seed, const GroupPtr& g, std::size_t max_rank)
{
  std::mt19937_64 rng(seed);
  GaloisLattice l = random_piece(rng, g, max_rank);
  while (l.rank() < max_rank && rng() % 3 != 0) {
    GaloisLattice p = random_piece(rng, g, max_rank - l.rank());
    if (l.rank() + p.rank() > max_rank) break;
    l = direct_sum(l, p);
  }
  auto [u, ui] = random_unimodular(rng, l.rank());
  return change_basis(l, u, ui);
}

std::vector<SuiteResult> run_property_suites(std::uint64_t seed, std::size_t cases)
{
  const auto groups = standard_small_groups();
  std::mt19937_64 master(seed);
  auto draw = [&](std::size_t i, std::size_t max_order, std::size_t max_rank) {
    std::vector<GroupPtr> pool;
    for (const auto& [name, g] : groups)
      if (g->order() <= max_order) pool.push_back(g);
    const GroupPtr& g = pool[i % pool.size()];
    return random_lattice(master(), g, 1 + master() % max_rank);
  };
  Runner run;

  run.suite("flasque_certificate", cases, [&](std::size_t i) -> std::string {
    auto t = draw(i, 12, 5);
    auto res = flasque_resolution(t);
    for (const auto& h : subgroup_classes(t.group()))
      if (!tate(-1, h, *res.s_hat).is_trivial()) return "H^-1 of S^ nonzero on a subgroup of order " + std::to_string(h.order());
    return {};
  });

  run.suite("resolution_independence", cases, [&](std::size_t i) -> std::string {
    auto t = draw(i, 12, 4);
    const auto classes = subgroup_classes(t.group());
    auto a = flasque_resolution(t);
    auto b = flasque_resolution(t, ResolutionVariant::random(master(), classes.size()));
    for (const auto& h : classes) {
      auto x = tate(1, h, *a.s_hat), y = tate(1, h, *b.s_hat);
      if (!same_structure(x, y)) return "H^1 differs on a subgroup of order " + std::to_string(h.order()) + ": " + x.str() + " vs " + y.str();
    }
    return {};
  });

  run.suite("order_identity_and_sha_cross_check", cases, [&](std::size_t i) -> std::string {
    auto t = draw(i, 8, 4);
    PlacesSpec places;
    for (const auto& h : subgroup_classes(t.group()))
      if (!h.is_cyclic() && master() % 2) places.bad_places.push_back(Place{"v" + std::to_string(places.bad_places.size()), h});
    TorusOptions opt;
    opt.cross_check_sha = true;
    auto r = torus_report(t, places, opt); // throws on either failure
    if (r.wa_defect.order() * r.sha_T.order() != r.picard_invariant.order()) return "order identity";
    return {};
  });

  run.suite("cyclic_periodicity", cases, [&](std::size_t i) -> std::string {
    auto t = draw(i, 12, 5);
    for (const auto& h : cyclic_subgroup_classes(t.group())) {
      if (tate(1, h, t).order() != tate(-1, h, t).order()) return "H^1 and H^-1 orders differ on a cyclic subgroup";
      if (tate(2, h, t).order() != tate(0, h, t).order()) return "H^2 and H^0 orders differ on a cyclic subgroup";
    }
    return {};
  });

  run.suite("cyclic_splitting_trivial", cases, [&](std::size_t i) -> std::string {
    static const std::vector<GroupPtr> cyc{groups[0].second, groups[1].second, groups[4].second};
    auto t = random_lattice(master(), cyc[i % cyc.size()], 1 + master() % 5);
    auto r = torus_report(t, {});
    if (!r.picard_trivial || !r.sha_S.is_trivial() || r.wa_verdict != WaVerdict::holds) return "nontrivial invariant";
    return {};
  });

  return run.results;
}

} // namespace torinv
