#include "torinv/lattice.hpp"

#include <algorithm>
#include <stdexcept>

#include "torinv/normal_form.hpp"

namespace torinv {

namespace {

IntMatrix permutation_matrix(const std::vector<int>& images)
{
  IntMatrix p(images.size(), images.size());
  for (std::size_t i = 0; i < images.size(); ++i) p(images[i], i) = 1;
  return p;
}

} // namespace

GaloisLattice GaloisLattice::from_generators(GroupPtr g, std::size_t rank, const std::vector<int>& elements,
                                             const std::vector<IntMatrix>& matrices)
{
  if (elements.size() != matrices.size()) {
    throw std::invalid_argument("expected one matrix per group generator (" + std::to_string(elements.size()) +
                                "), got " + std::to_string(matrices.size()));
  }
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    if (matrices[i].rows() != rank || matrices[i].cols() != rank) {
      throw std::invalid_argument("generator matrix " + std::to_string(i) + " is not " + std::to_string(rank) +
                                  "x" + std::to_string(rank));
    }
  }
  const std::size_t n = g->order();
  std::vector<std::optional<IntMatrix>> act(n);
  act[0] = IntMatrix::identity(rank);
  std::vector<int> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int x = queue[head];
    for (std::size_t k = 0; k < elements.size(); ++k) {
      int y = g->mul(x, elements[k]);
      IntMatrix m = *act[x] * matrices[k];
      if (!act[y]) {
        act[y] = std::move(m);
        queue.push_back(y);
      } else if (*act[y] != m) {
        throw std::invalid_argument("generator matrices violate a group relation (element " + std::to_string(x) +
                                    " times generator " + std::to_string(k) + ")");
      }
    }
  }
  if (queue.size() != n) throw std::invalid_argument("listed elements do not generate the group");
  GaloisLattice l;
  l.group_ = std::move(g);
  l.rank_ = rank;
  for (auto& m : act) l.actions_.push_back(std::move(*m));
  return l;
}

GaloisLattice GaloisLattice::from_actions(GroupPtr g, std::size_t rank, std::vector<IntMatrix> actions)
{
  if (actions.size() != g->order()) throw std::invalid_argument("one action matrix per element required");
  GaloisLattice l;
  l.group_ = std::move(g);
  l.rank_ = rank;
  l.actions_ = std::move(actions);
  return l;
}

GaloisLattice GaloisLattice::from_permutations(GroupPtr g, std::vector<std::vector<int>> images)
{
  if (images.size() != g->order()) throw std::invalid_argument("one permutation per element required");
  GaloisLattice l;
  l.group_ = std::move(g);
  l.rank_ = images.empty() ? 0 : images[0].size();
  for (const auto& im : images) l.actions_.push_back(permutation_matrix(im));
  l.permutation_ = std::move(images);
  return l;
}

void GaloisLattice::validate() const
{
  const std::size_t n = group_->order();
  if (actions_.size() != n) throw std::invalid_argument("lattice: missing action matrices");
  if (!actions_[0].is_identity()) throw std::invalid_argument("lattice: identity does not act trivially");
  for (std::size_t s = 0; s < n; ++s) {
    if (actions_[s].rows() != rank_ || actions_[s].cols() != rank_) {
      throw std::invalid_argument("lattice: action matrix has wrong shape");
    }
    for (std::size_t t = 0; t < n; ++t) {
      int st = group_->mul(static_cast<int>(s), static_cast<int>(t));
      if (actions_[s] * actions_[t] != actions_[st]) {
        throw std::invalid_argument("lattice: action(" + std::to_string(s) + ")*action(" + std::to_string(t) +
                                    ") != action(" + std::to_string(st) + ")");
      }
    }
  }
  // action(s) * action(s^-1) = I makes every matrix unimodular.
  if (!permutation_.empty()) {
    for (std::size_t s = 0; s < n; ++s)
      if (permutation_matrix(permutation_[s]) != actions_[s]) {
        throw std::invalid_argument("lattice: permutation basis tag disagrees with action");
      }
  }
}

IntMatrix GaloisLattice::norm(const Subgroup& h) const
{
  IntMatrix n(rank_, rank_);
  for (int s : h.elements()) n = n + actions_[s];
  return n;
}

std::size_t GaloisLattice::fixed_rank(const Subgroup& h) const
{
  Int tr;
  for (int s : h.elements())
    for (std::size_t i = 0; i < rank_; ++i) tr += actions_[s](i, i);
  return static_cast<std::size_t>(divexact(tr, Int(static_cast<long>(h.order()))).to_int64());
}

bool LatticeMap::is_equivariant() const
{
  if (matrix.rows() != target->rank() || matrix.cols() != source->rank()) return false;
  for (std::size_t s = 0; s < source->group()->order(); ++s) {
    int e = static_cast<int>(s);
    if (matrix * source->action(e) != target->action(e) * matrix) return false;
  }
  return true;
}

GaloisLattice trivial_lattice(GroupPtr g, std::size_t rank)
{
  std::vector<int> id(rank);
  for (std::size_t i = 0; i < rank; ++i) id[i] = static_cast<int>(i);
  std::vector<std::vector<int>> images(g->order(), id);
  return GaloisLattice::from_permutations(std::move(g), std::move(images));
}

GaloisLattice permutation_lattice(const Subgroup& h)
{
  const auto& g = h.parent();
  auto cosets = h.left_cosets();
  std::vector<int> coset_of(g->order());
  for (std::size_t i = 0; i < cosets.size(); ++i)
    for (int x : cosets[i]) coset_of[x] = static_cast<int>(i);
  std::vector<std::vector<int>> images(g->order(), std::vector<int>(cosets.size()));
  for (std::size_t s = 0; s < g->order(); ++s)
    for (std::size_t i = 0; i < cosets.size(); ++i) images[s][i] = coset_of[g->mul(static_cast<int>(s), cosets[i][0])];
  GaloisLattice l = GaloisLattice::from_permutations(g, std::move(images));
  for (const auto& c : cosets) l.basis_tags.push_back("coset:" + std::to_string(c[0]));
  return l;
}

GaloisLattice regular_lattice(GroupPtr g)
{
  return permutation_lattice(Subgroup::trivial(std::move(g)));
}

GaloisLattice sign_lattice(const Subgroup& index_two)
{
  const auto& g = index_two.parent();
  if (index_two.order() * 2 != g->order()) throw std::invalid_argument("sign lattice needs an index-2 subgroup");
  std::vector<IntMatrix> act;
  for (std::size_t s = 0; s < g->order(); ++s) act.push_back(IntMatrix{{index_two.contains(static_cast<int>(s)) ? 1L : -1L}});
  return GaloisLattice::from_actions(g, 1, std::move(act));
}

GaloisLattice induced_lattice(const GaloisLattice& m)
{
  const auto& g = m.group();
  const std::size_t n = g->order(), r = m.rank();
  std::vector<std::vector<int>> images(n, std::vector<int>(n * r));
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t j = 0; j < r; ++j)
        images[t][s * r + j] = static_cast<int>(g->mul(static_cast<int>(t), static_cast<int>(s)) * r + j);
  return GaloisLattice::from_permutations(g, std::move(images));
}

GaloisLattice dual(const GaloisLattice& l)
{
  const auto& g = l.group();
  if (l.has_permutation_basis()) {
    // Permutation matrices are orthogonal: the contragredient is the same action.
    GaloisLattice d = GaloisLattice::from_permutations(g, l.permutation());
    d.basis_tags = l.basis_tags;
    return d;
  }
  std::vector<IntMatrix> act;
  for (std::size_t s = 0; s < g->order(); ++s) act.push_back(l.action(g->inverse(static_cast<int>(s))).transpose());
  return GaloisLattice::from_actions(g, l.rank(), std::move(act));
}

GaloisLattice direct_sum(const GaloisLattice& a, const GaloisLattice& b)
{
  const auto& g = a.group();
  if (a.has_permutation_basis() && b.has_permutation_basis()) {
    std::vector<std::vector<int>> images(g->order());
    for (std::size_t s = 0; s < g->order(); ++s) {
      images[s] = a.permutation()[s];
      for (int x : b.permutation()[s]) images[s].push_back(x + static_cast<int>(a.rank()));
    }
    GaloisLattice l = GaloisLattice::from_permutations(g, std::move(images));
    l.basis_tags = a.basis_tags;
    l.basis_tags.insert(l.basis_tags.end(), b.basis_tags.begin(), b.basis_tags.end());
    return l;
  }
  std::vector<IntMatrix> act;
  for (std::size_t s = 0; s < g->order(); ++s)
    act.push_back(torinv::direct_sum(a.action(static_cast<int>(s)), b.action(static_cast<int>(s))));
  return GaloisLattice::from_actions(g, a.rank() + b.rank(), std::move(act));
}

GaloisLattice change_basis(const GaloisLattice& l, const IntMatrix& u, const IntMatrix& u_inverse)
{
  if (!(u * u_inverse).is_identity()) throw std::invalid_argument("change_basis: matrices are not inverse");
  std::vector<IntMatrix> act;
  for (const auto& a : l.actions()) act.push_back(u * a * u_inverse);
  return GaloisLattice::from_actions(l.group(), l.rank(), std::move(act));
}

IntMatrix fixed_sublattice(const GaloisLattice& l, const Subgroup& h)
{
  const std::size_t r = l.rank();
  if (l.has_permutation_basis()) {
    // Orbit sums of h on the permutation basis.
    std::vector<int> orbit(r, -1);
    std::vector<IntVector> rows;
    for (std::size_t i = 0; i < r; ++i) {
      if (orbit[i] >= 0) continue;
      IntVector v(r);
      for (int s : h.elements()) {
        int j = l.permutation()[s][i];
        orbit[j] = static_cast<int>(rows.size());
        v[j] = 1;
      }
      rows.push_back(std::move(v));
    }
    if (rows.empty()) return IntMatrix(0, r);
    return hermite(IntMatrix::from_rows(rows, r)).basis;
  }
  KernelBuilder kb(r);
  for (int s : h.generators()) {
    IntMatrix d = l.action(s) - IntMatrix::identity(r);
    for (std::size_t i = 0; i < r; ++i) kb.add_constraint(d.row(i));
  }
  return kb.basis();
}

GaloisLattice sublattice(const GaloisLattice& l, const IntMatrix& rows)
{
  LatticeSolver solver(rows);
  const auto& g = l.group();
  const std::size_t k = rows.rows();
  std::vector<IntMatrix> act;
  for (std::size_t s = 0; s < g->order(); ++s) {
    IntMatrix a(k, k);
    for (std::size_t i = 0; i < k; ++i) {
      IntVector img = l.action(static_cast<int>(s)).apply(rows.row(i));
      auto y = solver.coordinates(img);
      if (!y) throw std::invalid_argument("sublattice is not stable under the group action");
      for (std::size_t j = 0; j < k; ++j) a(j, i) = (*y)[j];
    }
    act.push_back(std::move(a));
  }
  return GaloisLattice::from_actions(g, k, std::move(act));
}

QuotientLattice quotient_lattice(const GaloisLattice& l, const IntMatrix& rows)
{
  const std::size_t r = l.rank();
  HermiteForm hf = hermite(rows);
  const std::size_t k = hf.basis.rows();
  bool unit = true;
  for (std::size_t i = 0; i < k; ++i) unit = unit && hf.basis(i, hf.pivots[i]).is_one();
  IntMatrix proj(r - k, r), sec(r, r - k);
  std::vector<std::size_t> free_cols;
  if (unit) {
    // Reduced Hermite basis with unit pivots is the identity on the pivot
    // columns, so x -> x_free - H_free^T x_pivot has kernel exactly the span.
    std::vector<bool> is_pivot(r, false);
    for (auto p : hf.pivots) is_pivot[p] = true;
    for (std::size_t c = 0; c < r; ++c)
      if (!is_pivot[c]) free_cols.push_back(c);
    for (std::size_t a = 0; a < free_cols.size(); ++a) {
      proj(a, free_cols[a]) = 1;
      sec(free_cols[a], a) = 1;
      for (std::size_t j = 0; j < k; ++j) proj(a, hf.pivots[j]) = -hf.basis(j, free_cols[a]);
    }
  } else {
    if (!rows_saturated(hf.basis)) throw std::invalid_argument("quotient by a non-saturated sublattice has torsion");
    SmithForm sf = smith(hf.basis.transpose(), true, false);
    for (std::size_t a = 0; a < r - k; ++a)
      for (std::size_t c = 0; c < r; ++c) {
        proj(a, c) = sf.left(k + a, c);
        sec(c, a) = sf.left_inverse(c, k + a);
      }
  }
  const auto& g = l.group();
  std::vector<IntMatrix> act;
  for (std::size_t s = 0; s < g->order(); ++s) {
    IntMatrix a(r - k, r);
    if (l.has_permutation_basis()) {
      const auto& perm = l.permutation()[s];
      for (std::size_t i = 0; i < r - k; ++i)
        for (std::size_t c = 0; c < r; ++c) a(i, c) = proj(i, perm[c]);
    } else {
      a = proj * l.action(static_cast<int>(s));
    }
    for (std::size_t i = 0; i < k; ++i)
      if (!is_zero_vector(a.apply(hf.basis.row(i)))) throw std::invalid_argument("quotient by a non-stable sublattice");
    act.push_back(unit ? a.select_cols(free_cols) : a * sec);
  }
  return QuotientLattice{GaloisLattice::from_actions(g, r - k, std::move(act)), std::move(proj), std::move(sec)};
}

NormOneLattice norm_one_torus_lattice(GroupPtr g)
{
  auto reg = std::make_shared<GaloisLattice>(regular_lattice(g));
  IntMatrix norm_vec(1, g->order());
  for (std::size_t i = 0; i < g->order(); ++i) norm_vec(0, i) = 1;
  QuotientLattice q = quotient_lattice(*reg, norm_vec);
  auto lat = std::make_shared<GaloisLattice>(q.lattice);
  NormOneLattice out{q.lattice, LatticeMap{reg, lat, q.projection}};
  return out;
}

} // namespace torinv
