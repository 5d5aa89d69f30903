#include "torinv/cohomology.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "torinv/normal_form.hpp"

namespace torinv {

namespace {

std::vector<std::uint32_t> prime_divisors(std::size_t n)
{
  std::vector<std::uint32_t> ps;
  for (std::uint32_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    ps.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) ps.push_back(static_cast<std::uint32_t>(n));
  return ps;
}

// Tate cohomology of h is killed by |h|.
std::int64_t exponent(const Subgroup& h)
{
  return static_cast<std::int64_t>(h.order());
}

// [A_g - I for g in gens], side by side: R x kR.
IntMatrix augmentation_matrix(const Subgroup& h, const GaloisLattice& m)
{
  const std::size_t r = m.rank();
  const auto& gens = h.generators();
  IntMatrix x(r, gens.size() * r);
  for (std::size_t k = 0; k < gens.size(); ++k) {
    x.set_block(0, k * r, m.action(gens[k]) - IntMatrix::identity(r));
  }
  return x;
}

void check_degree(int degree)
{
  if (degree < -1 || degree > 2) {
    throw std::invalid_argument("Tate cohomology degree must be -1, 0, 1 or 2, got " + std::to_string(degree));
  }
}

// Spanning tree of h from the identity: each element is (parent) * (generator).
struct CocycleTree {
  std::vector<int> order;      // BFS order, element indices into h.elements()
  std::vector<int> parent;     // parent index
  std::vector<int> generator;  // generator position
};

CocycleTree spanning_tree(const Subgroup& h)
{
  const auto& g = *h.parent();
  const auto& elems = h.elements();
  std::vector<int> pos(g.order(), -1);
  for (std::size_t i = 0; i < elems.size(); ++i) pos[elems[i]] = static_cast<int>(i);
  CocycleTree t;
  t.parent.assign(elems.size(), -1);
  t.generator.assign(elems.size(), -1);
  std::vector<bool> seen(elems.size(), false);
  seen[0] = true;
  t.order.push_back(0);
  for (std::size_t head = 0; head < t.order.size(); ++head) {
    int xi = t.order[head];
    for (std::size_t k = 0; k < h.generators().size(); ++k) {
      int yi = pos[g.mul(elems[xi], h.generators()[k])];
      if (seen[yi]) continue;
      seen[yi] = true;
      t.parent[yi] = xi;
      t.generator[yi] = static_cast<int>(k);
      t.order.push_back(yi);
    }
  }
  return t;
}

// Full cocycle from its generator values: c(x g) = c(x) + x . c(g).
IntVector expand_cocycle(const Subgroup& h, const GaloisLattice& m, const CocycleTree& t, std::span<const Int> z)
{
  const std::size_t r = m.rank();
  const auto& elems = h.elements();
  IntVector c(elems.size() * r);
  for (std::size_t o = 1; o < t.order.size(); ++o) {
    const int yi = t.order[o], xi = t.parent[yi], k = t.generator[yi];
    IntVector v = m.action(elems[xi]).apply(z.subspan(static_cast<std::size_t>(k) * r, r));
    for (std::size_t j = 0; j < r; ++j) c[yi * r + j] = c[xi * r + j] + v[j];
  }
  return c;
}

FiniteAbelianGroup tate_minus_one(const Subgroup& h, std::shared_ptr<const GaloisLattice> m)
{
  const std::size_t r = m->rank();
  if (r == 0 || h.order() == 1) return FiniteAbelianGroup(r);
  auto norm = std::make_shared<IntMatrix>(m->norm(h));
  auto to_space = [norm](std::span<const Int> v) {
    if (!is_zero_vector(norm->apply(v))) throw std::invalid_argument("vector is not in the kernel of the norm");
    return IntVector(v.begin(), v.end());
  };
  return FiniteAbelianGroup::bounded_saturation_quotient(augmentation_matrix(h, *m), exponent(h), r, to_space);
}

FiniteAbelianGroup tate_zero(const Subgroup& h, std::shared_ptr<const GaloisLattice> m)
{
  const std::size_t r = m->rank();
  if (r == 0 || h.order() == 1) return FiniteAbelianGroup(r);
  auto d0p = std::make_shared<IntMatrix>(coboundary_matrix(h, *m));
  auto check_fixed = [d0p](std::span<const Int> v) {
    if (!is_zero_vector(d0p->apply(v))) throw std::invalid_argument("vector is not fixed by the subgroup");
    return IntVector(v.begin(), v.end());
  };
  return FiniteAbelianGroup::bounded_saturation_quotient(m->norm(h), exponent(h), r, check_fixed);
}

FiniteAbelianGroup tate_one(const Subgroup& h, std::shared_ptr<const GaloisLattice> m)
{
  const std::size_t r = m->rank();
  const std::size_t full = h.order() * r;
  if (r == 0 || h.order() == 1) return FiniteAbelianGroup(full);
  IntMatrix d0 = coboundary_matrix(h, *m);
  auto tree = std::make_shared<CocycleTree>(spanning_tree(h));
  auto hp = std::make_shared<Subgroup>(h);

  std::vector<std::size_t> gen_pos;
  for (int x : h.generators()) {
    const auto& e = h.elements();
    gen_pos.push_back(static_cast<std::size_t>(std::lower_bound(e.begin(), e.end(), x) - e.begin()));
  }
  // Generator values of cocycles are the saturation of the coboundaries; the
  // group checks the saturation congruences, we check the expansion.
  auto to_space = [m, hp, tree, gen_pos, r](std::span<const Int> c) {
    IntVector z;
    z.reserve(gen_pos.size() * r);
    for (std::size_t p : gen_pos) z.insert(z.end(), c.begin() + p * r, c.begin() + (p + 1) * r);
    if (expand_cocycle(*hp, *m, *tree, z) != IntVector(c.begin(), c.end())) {
      throw std::invalid_argument("vector is not a cocycle");
    }
    return z;
  };
  auto from_space = [m, hp, tree](std::span<const Int> z) { return expand_cocycle(*hp, *m, *tree, z); };
  return FiniteAbelianGroup::bounded_saturation_quotient(d0, exponent(h), full, to_space, from_space);
}

FiniteAbelianGroup tate_low(int degree, const Subgroup& h, std::shared_ptr<const GaloisLattice> m)
{
  if (h.parent()->order() != m->group()->order()) throw std::invalid_argument("subgroup of a different group");
  switch (degree) {
  case -1:
    return tate_minus_one(h, std::move(m));
  case 0:
    return tate_zero(h, std::move(m));
  case 1:
    return tate_one(h, std::move(m));
  default:
    throw std::invalid_argument("degree " + std::to_string(degree) + " needs a dimension shift");
  }
}

// Row (s, t) is phi_t * action(s^-1).
IntMatrix shift_embedding(const GaloisLattice& m, const IntMatrix& phi)
{
  const auto& g = m.group();
  const std::size_t n = g->order(), r = m.rank(), q = phi.rows();
  IntMatrix emb(n * q, r);
  for (std::size_t s = 0; s < n; ++s) {
    const IntMatrix& a = m.action(g->inverse(static_cast<int>(s)));
    for (std::size_t t = 0; t < q; ++t) {
      IntVector row = a.apply_left(phi.row(t));
      for (std::size_t j = 0; j < r; ++j) emb(s * q + t, j) = std::move(row[j]);
    }
  }
  return emb;
}

DimensionShift make_shift(const GaloisLattice& m, IntMatrix phi)
{
  const auto& g = m.group();
  IntMatrix emb = shift_embedding(m, phi);
  auto middle = std::make_shared<GaloisLattice>(induced_lattice(trivial_lattice(g, phi.rows())));
  QuotientLattice ql = quotient_lattice(*middle, emb.transpose());
  DimensionShift d;
  d.middle = middle;
  d.shifted = std::make_shared<GaloisLattice>(std::move(ql.lattice));
  d.embedding = std::move(emb);
  d.projection = std::move(ql.projection);
  d.functionals = std::move(phi);
  return d;
}

// strict: saturated image. Otherwise only saturated at the primes dividing
// |g|, which is all the degree-2 computation looks at.
bool embedding_ok(const GaloisLattice& m, const IntMatrix& phi, bool strict)
{
  if (phi.rows() * m.group()->order() < m.rank()) return false;
  if (!strict) {
    IntMatrix emb = shift_embedding(m, phi);
    for (auto p : prime_divisors(m.group()->order()))
      if (rank_mod_p(emb, p) != m.rank()) return false;
    return true;
  }
  auto d = smith_diagonal(shift_embedding(m, phi));
  if (d.size() < m.rank()) return false;
  for (const auto& x : d)
    if (!x.is_one()) return false;
  return true;
}

IntMatrix compact_functionals(const GaloisLattice& m, bool strict)
{
  const std::size_t n = m.group()->order(), r = m.rank();
  // Q[g] holds the trivial character once, so q >= rank M^g.
  std::size_t q = std::max((r + n - 1) / n, m.fixed_rank(Subgroup::whole(m.group())));
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<int> coef(-1, 1);
  for (; q < r; ++q) {
    for (int attempt = 0; attempt < 3; ++attempt) {
      IntMatrix phi(q, r);
      for (std::size_t t = 0; t < q; ++t)
        for (std::size_t j = 0; j < r; ++j) phi(t, j) = coef(rng);
      if (embedding_ok(m, phi, strict)) return phi;
    }
  }
  return IntMatrix::identity(r);
}

// Ĥ^2(h, M) = Ĥ^1(h, P/M) with P = Z[g]^q, basis (u, t) at u*q + t. The
// generator values of a cocycle lift to P^k, and
//   Ĥ^1(h, P/M) = torsion of P^k / (M^k + {((g - 1) p)_g}).
FiniteAbelianGroup tate_two(const Subgroup& h, std::shared_ptr<const GaloisLattice> m, const IntMatrix& emb)
{
  const auto& g = *m->group();
  const std::size_t n = g.order(), r = m->rank(), big = emb.rows(), q = n ? big / n : 0;
  const std::size_t full = h.order() * big;
  if (r == 0 || h.order() == 1) return FiniteAbelianGroup(full);
  const auto& gens = h.generators();
  const std::size_t k = gens.size();
  // s acts on P by (u, t) -> (s u, t)
  auto act = [&g, q](int s, std::span<const Int> v) {
    IntVector out(v.size());
    for (std::size_t u = 0; u < v.size() / q; ++u) {
      const std::size_t su = static_cast<std::size_t>(g.mul(s, static_cast<int>(u)));
      for (std::size_t t = 0; t < q; ++t) out[su * q + t] = v[u * q + t];
    }
    return out;
  };
  IntMatrix x(k * big, big + k * r);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t u = 0; u < n; ++u) {
      const std::size_t su = static_cast<std::size_t>(g.mul(gens[a], static_cast<int>(u)));
      for (std::size_t t = 0; t < q; ++t) {
        x(a * big + su * q + t, u * q + t) += Int(1);
        x(a * big + u * q + t, u * q + t) -= Int(1);
      }
    }
    x.set_block(a * big, big + a * r, emb);
  }
  auto tree = std::make_shared<CocycleTree>(spanning_tree(h));
  auto elems = std::make_shared<std::vector<int>>(h.elements());
  // Rows cutting out the image of M in P, modulo |h|^2.
  const std::int64_t modulus = exponent(h) * exponent(h);
  auto image_eqs = std::make_shared<IntMatrix>();
  {
    ModularSmithForm es = smith_mod(emb, modulus, true, false);
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < big; ++i)
      if (i >= es.diagonal.size() || es.diagonal[i] == 0) rows.push_back(i);
    *image_eqs = es.left.select_rows(rows);
  }

  std::vector<std::size_t> gen_pos;
  for (int s : gens) {
    gen_pos.push_back(static_cast<std::size_t>(std::lower_bound(elems->begin(), elems->end(), s) - elems->begin()));
  }
  auto expand = [m, tree, elems, big, act](std::span<const Int> y) {
    IntVector c(elems->size() * big);
    for (std::size_t o = 1; o < tree->order.size(); ++o) {
      const int yi = tree->order[o], xi = tree->parent[yi], kk = tree->generator[yi];
      IntVector v = act((*elems)[xi], y.subspan(static_cast<std::size_t>(kk) * big, big));
      for (std::size_t j = 0; j < big; ++j) c[yi * big + j] = c[xi * big + j] + v[j];
    }
    return c;
  };
  auto to_space = [gen_pos, big, expand, image_eqs, modulus](std::span<const Int> c) {
    IntVector y;
    y.reserve(gen_pos.size() * big);
    for (std::size_t p : gen_pos) y.insert(y.end(), c.begin() + p * big, c.begin() + (p + 1) * big);
    IntVector e = expand(y);
    for (std::size_t b = 0; b * big < e.size(); ++b) {
      IntVector d(big);
      for (std::size_t j = 0; j < big; ++j) d[j] = c[b * big + j] - e[b * big + j];
      for (const auto& v : image_eqs->apply(d))
        if (!divides(Int(modulus), v)) throw std::invalid_argument("vector is not a lifted cocycle");
    }
    return y;
  };
  return FiniteAbelianGroup::bounded_saturation_quotient(x, exponent(h), full, to_space, expand);
}

} // namespace

IntMatrix coboundary_matrix(const Subgroup& h, const GaloisLattice& m)
{
  const std::size_t r = m.rank();
  const auto& gens = h.generators();
  IntMatrix d(gens.size() * r, r);
  for (std::size_t k = 0; k < gens.size(); ++k) {
    d.set_block(k * r, 0, m.action(gens[k]) - IntMatrix::identity(r));
  }
  return d;
}

DimensionShift dimension_shift(const GaloisLattice& m)
{
  return make_shift(m, IntMatrix::identity(m.rank()));
}

DimensionShift compact_dimension_shift(const GaloisLattice& m)
{
  return make_shift(m, compact_functionals(m, true));
}

FiniteAbelianGroup tate_direct(int degree, const Subgroup& h, const GaloisLattice& m)
{
  check_degree(degree);
  return tate_low(degree, h, std::make_shared<GaloisLattice>(m));
}

bool tate_vanishes(int degree, const Subgroup& h, const GaloisLattice& m)
{
  if (degree != -1 && degree != 1) throw std::invalid_argument("fast vanishing test covers degrees -1 and 1 only");
  const std::size_t r = m.rank();
  if (r == 0 || h.order() == 1) return true;
  const std::size_t expect = r - m.fixed_rank(h);
  IntMatrix a = degree == -1 ? augmentation_matrix(h, m) : coboundary_matrix(h, m);
  for (std::uint32_t p : prime_divisors(h.order()))
    if (rank_mod_p(a, p) != expect) return false;
  return true;
}

bool is_flasque(const GaloisLattice& m)
{
  for (const auto& h : subgroup_classes(m.group()))
    if (!tate_vanishes(-1, h, m)) return false;
  return true;
}

bool is_coflasque(const GaloisLattice& m)
{
  for (const auto& h : subgroup_classes(m.group()))
    if (!tate_vanishes(1, h, m)) return false;
  return true;
}

CohomologyEngine::CohomologyEngine(LatticePtr m, Shift shift) : m_(std::move(m)), shift_kind_(shift) {}

const IntMatrix& CohomologyEngine::shift_functionals()
{
  std::call_once(phi_once_, [this] {
    phi_ = shift_kind_ == Shift::compact ? compact_functionals(*m_, false) : IntMatrix::identity(m_->rank());
    embedding_ = shift_embedding(*m_, phi_);
  });
  return phi_;
}

FiniteAbelianGroup CohomologyEngine::compute(int degree, const Subgroup& h)
{
  if (degree != 2) return tate_low(degree, h, m_);
  shift_functionals();
  return tate_two(h, m_, embedding_);
}

FiniteAbelianGroup CohomologyEngine::tate(int degree, const Subgroup& h)
{
  check_degree(degree);
  auto key = std::make_pair(degree, h.elements());
  {
    std::lock_guard lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  FiniteAbelianGroup out = compute(degree, h);
  std::lock_guard lock(mutex_);
  return cache_.emplace(std::move(key), std::move(out)).first->second;
}

AbelianHom CohomologyEngine::restriction(int degree, const Subgroup& big, const Subgroup& small)
{
  if (!big.contains(small)) throw std::invalid_argument("restriction: subgroup is not contained in the larger one");
  FiniteAbelianGroup source = tate(degree, big), target = tate(degree, small);
  if (degree == 0) {
    return AbelianHom::from_ambient_map(source, target,
                                        [](std::span<const Int> v) { return IntVector(v.begin(), v.end()); });
  }
  if (degree != 1 && degree != 2) throw std::invalid_argument("restriction is provided in degrees 0, 1 and 2");
  // cocycle values are blocks of this size, one per element
  const std::size_t width = degree == 1 ? m_->rank() : embedding_.rows();
  std::vector<std::size_t> blocks;
  const auto& be = big.elements();
  for (int x : small.elements()) {
    blocks.push_back(static_cast<std::size_t>(std::lower_bound(be.begin(), be.end(), x) - be.begin()));
  }
  auto project = [blocks, width](std::span<const Int> c) {
    IntVector out;
    out.reserve(blocks.size() * width);
    for (std::size_t b : blocks) out.insert(out.end(), c.begin() + b * width, c.begin() + (b + 1) * width);
    return out;
  };
  return AbelianHom::from_ambient_map(source, target, project);
}

const DimensionShift& CohomologyEngine::shift()
{
  std::call_once(shift_once_, [this] {
    shift_ = std::make_unique<DimensionShift>(shift_kind_ == Shift::compact ? compact_dimension_shift(*m_)
                                                                            : dimension_shift(*m_));
  });
  return *shift_;
}

FiniteAbelianGroup tate(int degree, const Subgroup& h, const GaloisLattice& m)
{
  CohomologyEngine e(std::make_shared<GaloisLattice>(m));
  return e.tate(degree, h);
}

AbelianHom restriction(int degree, const Subgroup& big, const Subgroup& small, const GaloisLattice& m)
{
  CohomologyEngine e(std::make_shared<GaloisLattice>(m));
  return e.restriction(degree, big, small);
}

} // namespace torinv
