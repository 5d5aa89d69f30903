#include "torinv/flasque.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "torinv/cohomology.hpp"
#include "torinv/normal_form.hpp"

namespace torinv {

namespace {

// Product of random elementary row operations.
IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n)
{
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) {
    if (n == 1 && rng() % 2) u(0, 0) = -1;
    return u;
  }
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (std::size_t step = 0; step < 3 * n; ++step) {
    std::size_t i = pick(rng), j = pick(rng);
    int c = coef(rng);
    if (i == j || c == 0) continue;
    for (std::size_t k = 0; k < n; ++k) u(i, k).add_mul(Int(c), u(j, k));
  }
  return u;
}

bool all_units(const std::vector<Int>& d, std::size_t expect)
{
  if (d.size() < expect) return false;
  for (std::size_t i = 0; i < expect; ++i)
    if (!d[i].is_one()) return false;
  for (std::size_t i = expect; i < d.size(); ++i)
    if (!d[i].is_zero()) return false;
  return true;
}

// Ĥ^1(h, C) = coker(Q^h -> M^h) since Q is a permutation lattice; Q^h is
// spanned by the orbit sums of h on the permutation basis.
bool cover_surjective_on_fixed(const GaloisLattice& q, const IntMatrix& surjection, const GaloisLattice& m,
                               const Subgroup& h)
{
  IntMatrix fixed = fixed_sublattice(m, h);
  if (fixed.rows() == 0) return true;
  LatticeSolver solver(fixed);
  std::vector<bool> seen(q.rank(), false);
  IntMatrix coords(0, fixed.rows());
  for (std::size_t i = 0; i < q.rank(); ++i) {
    if (seen[i]) continue;
    IntVector img(m.rank());
    for (int s : h.elements()) {
      int j = q.permutation()[s][i];
      if (seen[j]) continue;
      seen[j] = true;
      for (std::size_t r = 0; r < m.rank(); ++r) img[r] += surjection(r, j);
    }
    auto y = solver.coordinates(img);
    if (!y) return false;
    if (!is_zero_vector(*y)) coords.append_row(*y);
  }
  return coords.rows() > 0 && all_units(smith_diagonal(coords), fixed.rows());
}

// Images in M of the h-orbit sums of Z[g/k] . v, in M^h coordinates.
void orbit_sum_images(const GaloisLattice& m, const Subgroup& h, const Subgroup& k, const IntMatrix& gens,
                      const LatticeSolver& fixed, std::vector<IntVector>& out)
{
  const auto& g = *m.group();
  auto cosets = k.left_cosets();
  std::vector<int> coset_of(g.order());
  for (std::size_t c = 0; c < cosets.size(); ++c)
    for (int x : cosets[c]) coset_of[x] = static_cast<int>(c);
  std::vector<std::vector<std::size_t>> orbits;
  std::vector<bool> seen(cosets.size(), false);
  for (std::size_t c = 0; c < cosets.size(); ++c) {
    if (seen[c]) continue;
    orbits.emplace_back();
    for (int s : h.elements()) {
      std::size_t d = coset_of[g.mul(s, cosets[c][0])];
      if (!seen[d]) {
        seen[d] = true;
        orbits.back().push_back(d);
      }
    }
  }
  for (std::size_t j = 0; j < gens.rows(); ++j)
    for (const auto& orbit : orbits) {
      IntVector img(m.rank());
      for (std::size_t c : orbit) {
        IntVector v = m.action(cosets[c][0]).apply(gens.row(j));
        for (std::size_t i = 0; i < img.size(); ++i) img[i] += v[i];
      }
      out.push_back(fixed.coordinates_or_throw(img));
    }
}

// Generators of the h-fixed part, one class at a time from the largest
// subgroups down, each class adding only what M^h / (image so far) needs.
std::vector<IntMatrix> pruned_generators(const GaloisLattice& m, const std::vector<Subgroup>& classes,
                                         const std::vector<std::size_t>& order, std::vector<IntMatrix> fixed)
{
  std::vector<IntMatrix> chosen(classes.size());
  std::vector<std::size_t> todo;
  for (std::size_t idx : order) {
    if (classes[idx].order() == 1) {
      chosen[idx] = fixed[idx];
    } else {
      todo.push_back(idx);
    }
  }
  std::stable_sort(todo.begin(), todo.end(),
                   [&](std::size_t a, std::size_t b) { return classes[a].order() > classes[b].order(); });
  for (std::size_t idx : todo) {
    const Subgroup& h = classes[idx];
    const IntMatrix& f = fixed[idx];
    chosen[idx] = IntMatrix(0, m.rank());
    if (f.rows() == 0) continue;
    LatticeSolver solver(f);
    std::vector<IntVector> w;
    for (std::size_t k = 0; k < classes.size(); ++k)
      if (chosen[k].rows() > 0) orbit_sum_images(m, h, classes[k], chosen[k], solver, w);
    // W^T = left_inverse * D * ..., so the missing directions are the
    // left_inverse columns whose diagonal entry is not 1.
    IntMatrix wt(f.rows(), w.size());
    for (std::size_t a = 0; a < w.size(); ++a)
      for (std::size_t i = 0; i < f.rows(); ++i) wt(i, a) = w[a][i];
    SmithForm sf = smith(wt, true, false);
    for (std::size_t i = 0; i < f.rows(); ++i) {
      if (i < sf.diagonal.size() && sf.diagonal[i].is_one()) continue;
      IntVector coords(f.rows());
      for (std::size_t t = 0; t < f.rows(); ++t) coords[t] = sf.left_inverse(t, i);
      chosen[idx].append_row(f.apply_left(coords));
    }
  }
  return chosen;
}

} // namespace

ResolutionVariant ResolutionVariant::random(std::uint64_t seed, std::size_t class_count)
{
  ResolutionVariant v;
  v.class_order.resize(class_count);
  std::iota(v.class_order.begin(), v.class_order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(v.class_order.begin(), v.class_order.end(), rng);
  v.basis_seed = rng() | 1;
  return v;
}

CoflasqueCover coflasque_cover(const GaloisLattice& m, const ResolutionVariant& variant)
{
  const auto& g = m.group();
  const std::size_t n = g->order(), r = m.rank();
  auto classes = subgroup_classes(g);
  std::vector<std::size_t> order = variant.class_order;
  if (order.empty()) {
    order.resize(classes.size());
    std::iota(order.begin(), order.end(), 0);
  }
  {
    std::vector<std::size_t> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (sorted[i] != i || sorted.size() != classes.size()) {
        throw std::invalid_argument("resolution variant: class order is not a permutation of the classes");
      }
  }
  std::mt19937_64 rng(variant.basis_seed);

  std::vector<IntMatrix> generators(classes.size());
  for (std::size_t idx : order) {
    IntMatrix f = fixed_sublattice(m, classes[idx]);
    if (variant.basis_seed && f.rows() > 0) f = random_unimodular(rng, f.rows()) * f;
    generators[idx] = std::move(f);
  }
  if (variant.pruned) generators = pruned_generators(m, classes, order, std::move(generators));

  CoflasqueCover out;
  std::vector<IntMatrix> fixed_bases;
  std::vector<std::vector<std::vector<int>>> block_cosets;
  std::size_t total = 0;
  for (std::size_t idx : order) {
    const Subgroup& h = classes[idx];
    IntMatrix f = std::move(generators[idx]);
    if (f.rows() == 0) continue;
    auto cosets = h.left_cosets();
    out.blocks.push_back(PermutationBlock{idx, h, f.rows(), total});
    total += f.rows() * cosets.size();
    fixed_bases.push_back(std::move(f));
    block_cosets.push_back(std::move(cosets));
  }

  // Permutation action and the surjection q: (copy j, coset sH) -> s . f_j.
  std::vector<std::vector<int>> images(n, std::vector<int>(total));
  IntMatrix q(r, total);
  std::vector<std::string> tags(total);
  for (std::size_t b = 0; b < out.blocks.size(); ++b) {
    const auto& blk = out.blocks[b];
    const auto& cosets = block_cosets[b];
    const std::size_t index = cosets.size();
    std::vector<int> coset_of(n);
    for (std::size_t c = 0; c < index; ++c)
      for (int x : cosets[c]) coset_of[x] = static_cast<int>(c);
    for (std::size_t j = 0; j < blk.copies; ++j)
      for (std::size_t c = 0; c < index; ++c) {
        const std::size_t col = blk.offset + j * index + c;
        const int rep = cosets[c][0];
        IntVector v = m.action(rep).apply(fixed_bases[b].row(j));
        for (std::size_t i = 0; i < r; ++i) q(i, col) = v[i];
        tags[col] = "class" + std::to_string(blk.class_index) + "/copy" + std::to_string(j) + "/coset" +
                    std::to_string(rep);
        for (std::size_t s = 0; s < n; ++s)
          images[s][col] = static_cast<int>(blk.offset + j * index + coset_of[g->mul(static_cast<int>(s), rep)]);
      }
  }
  GaloisLattice cover = GaloisLattice::from_permutations(g, std::move(images));
  cover.basis_tags = std::move(tags);

  // Kernel basis. The identity cosets of the trivial-subgroup block map onto
  // a basis of M, so every other basis vector e_k gives the kernel vector
  // e_k - sum_j y_kj e_(p_j) with q(e_k) = sum_j y_kj q(e_(p_j)).
  std::vector<std::size_t> pivots;
  const IntMatrix* trivial_basis = nullptr;
  for (std::size_t b = 0; b < out.blocks.size(); ++b) {
    if (out.blocks[b].subgroup.order() != 1) continue;
    for (std::size_t j = 0; j < out.blocks[b].copies; ++j) pivots.push_back(out.blocks[b].offset + j * n);
    trivial_basis = &fixed_bases[b];
  }
  if (r > 0 && (trivial_basis == nullptr || pivots.size() != r)) {
    throw CertificationError("coflasque cover: the trivial-subgroup block is missing");
  }
  std::vector<int> np_index(total, -1);
  std::vector<std::size_t> nonpivots;
  {
    std::vector<bool> is_pivot(total, false);
    for (auto p : pivots) is_pivot[p] = true;
    for (std::size_t k = 0; k < total; ++k)
      if (!is_pivot[k]) {
        np_index[k] = static_cast<int>(nonpivots.size());
        nonpivots.push_back(k);
      }
  }
  const std::size_t c_rank = nonpivots.size();
  std::vector<IntVector> y(c_rank);
  IntMatrix inclusion(total, c_rank);
  if (r > 0) {
    LatticeSolver solver(*trivial_basis);
    for (std::size_t a = 0; a < c_rank; ++a) {
      y[a] = solver.coordinates_or_throw(q.col_vector(nonpivots[a]));
      inclusion(nonpivots[a], a) = 1;
      for (std::size_t j = 0; j < r; ++j) inclusion(pivots[j], a) = -y[a][j];
    }
  } else {
    for (std::size_t a = 0; a < c_rank; ++a) inclusion(nonpivots[a], a) = 1;
  }
  std::vector<IntMatrix> c_actions;
  for (std::size_t s = 0; s < n; ++s) {
    IntMatrix act(c_rank, c_rank);
    const auto& perm = cover.permutation()[s];
    for (std::size_t a = 0; a < c_rank; ++a) {
      int t = np_index[perm[nonpivots[a]]];
      if (t >= 0) act(t, a) += Int(1);
      for (std::size_t j = 0; j < r; ++j) {
        if (y[a][j].is_zero()) continue;
        int u = np_index[perm[pivots[j]]];
        if (u >= 0) act(u, a) -= y[a][j];
      }
    }
    c_actions.push_back(std::move(act));
  }
  auto kernel = std::make_shared<GaloisLattice>(GaloisLattice::from_actions(g, c_rank, std::move(c_actions)));

  if (!(q * inclusion).is_zero()) throw CertificationError("coflasque cover: kernel basis is not in the kernel");
  for (const auto& h : classes)
    if (!cover_surjective_on_fixed(cover, q, m, h)) {
      throw CertificationError("coflasque cover: H^1 of the kernel does not vanish on a subgroup of order " +
                               std::to_string(h.order()));
    }

  out.cover = std::make_shared<GaloisLattice>(std::move(cover));
  out.kernel = std::move(kernel);
  out.surjection = std::move(q);
  out.inclusion = std::move(inclusion);
  return out;
}

FlasqueCertificate certify_flasque(const GaloisLattice& l, bool full)
{
  FlasqueCertificate cert;
  auto classes = subgroup_classes(l.group());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    FlasqueCertificateEntry e{i, classes[i], true, {}};
    if (full) {
      auto a = tate_direct(-1, classes[i], l);
      e.vanishes = a.is_trivial();
      e.invariant_factors = a.invariant_factors();
    } else {
      e.vanishes = tate_vanishes(-1, classes[i], l);
    }
    cert.flasque = cert.flasque && e.vanishes;
    cert.entries.push_back(std::move(e));
  }
  return cert;
}

bool is_exact_sequence(const IntMatrix& inject, const IntMatrix& project)
{
  const std::size_t a = inject.cols(), b = inject.rows(), c = project.rows();
  if (project.cols() != b || a + c != b) return false;
  if (!(project * inject).is_zero()) return false;
  // injective with saturated image, surjective; ranks then force ker = im
  if (a > 0 && !all_units(smith_diagonal(inject), a)) return false;
  if (c > 0 && !all_units(smith_diagonal(project), c)) return false;
  return true;
}

FlasqueResolution flasque_resolution(const GaloisLattice& t_hat, const ResolutionVariant& variant)
{
  GaloisLattice m = dual(t_hat);
  CoflasqueCover cover = coflasque_cover(m, variant);
  FlasqueResolution res;
  res.t_hat = std::make_shared<GaloisLattice>(t_hat);
  auto n_hat = std::make_shared<GaloisLattice>(dual(*cover.cover));
  res.n_hat = n_hat;
  res.s_hat = std::make_shared<GaloisLattice>(dual(*cover.kernel));
  res.inject = LatticeMap{res.t_hat, res.n_hat, cover.surjection.transpose()};
  res.project = LatticeMap{res.n_hat, res.s_hat, cover.inclusion.transpose()};
  res.n_blocks = std::move(cover.blocks);
  if (!is_exact_sequence(res.inject.matrix, res.project.matrix)) {
    throw CertificationError("flasque resolution: the dual sequence is not exact");
  }
  if (!res.inject.is_equivariant() || !res.project.is_equivariant()) {
    throw CertificationError("flasque resolution: a map is not equivariant");
  }
  res.certificate = certify_flasque(*res.s_hat, false);
  if (!res.certificate.flasque) throw CertificationError("flasque resolution: S^ is not flasque");
  return res;
}

} // namespace torinv
