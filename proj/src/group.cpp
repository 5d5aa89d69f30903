#include "torinv/group.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace torinv {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images))
{
  std::vector<bool> seen(images_.size(), false);
  for (int x : images_) {
    if (x < 0 || x >= static_cast<int>(images_.size()) || seen[x]) {
      throw std::invalid_argument("permutation is not a bijection");
    }
    seen[x] = true;
  }
}

Permutation Permutation::identity(std::size_t degree)
{
  std::vector<int> im(degree);
  std::iota(im.begin(), im.end(), 0);
  return Permutation(std::move(im));
}

Permutation Permutation::parse(std::string_view text, std::size_t degree)
{
  std::vector<std::vector<int>> cycles;
  std::size_t pos = 0;
  int max_point = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  while (pos < text.size()) {
    if (text[pos] != '(') throw std::invalid_argument("expected '(' in permutation: " + std::string(text));
    ++pos;
    std::vector<int> cycle;
    for (;;) {
      skip_ws();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < text.size() && text[pos] == ')') {
        ++pos;
        break;
      }
      if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
        throw std::invalid_argument("malformed cycle in permutation: " + std::string(text));
      }
      int v = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        v = v * 10 + (text[pos] - '0');
        ++pos;
      }
      if (v < 1) throw std::invalid_argument("points are 1-indexed: " + std::string(text));
      cycle.push_back(v - 1);
      max_point = std::max(max_point, v);
    }
    cycles.push_back(std::move(cycle));
    skip_ws();
  }
  std::size_t n = std::max<std::size_t>(degree, static_cast<std::size_t>(max_point));
  std::vector<int> im(n);
  std::iota(im.begin(), im.end(), 0);
  std::vector<bool> moved(n, false);
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (moved[c[i]]) throw std::invalid_argument("point repeated across cycles: " + std::string(text));
      moved[c[i]] = true;
    }
    for (std::size_t i = 0; i < c.size(); ++i) im[c[i]] = c[(i + 1) % c.size()];
  }
  return Permutation(std::move(im));
}

bool Permutation::is_identity() const
{
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != static_cast<int>(i)) return false;
  return true;
}

Permutation Permutation::padded(std::size_t degree) const
{
  if (degree <= images_.size()) return *this;
  std::vector<int> im = images_;
  for (std::size_t i = images_.size(); i < degree; ++i) im.push_back(static_cast<int>(i));
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const
{
  std::vector<int> im(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) im[images_[i]] = static_cast<int>(i);
  return Permutation(std::move(im));
}

Permutation operator*(const Permutation& a, const Permutation& b)
{
  std::size_t n = std::max(a.degree(), b.degree());
  std::vector<int> im(n);
  for (std::size_t i = 0; i < n; ++i) im[i] = a(b(static_cast<int>(i)));
  return Permutation(std::move(im));
}

std::string Permutation::str() const
{
  std::ostringstream os;
  std::vector<bool> done(images_.size(), false);
  bool any = false;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (done[i] || images_[i] == static_cast<int>(i)) continue;
    any = true;
    os << '(';
    int j = static_cast<int>(i);
    bool first = true;
    while (!done[j]) {
      done[j] = true;
      os << (first ? "" : " ") << j + 1;
      first = false;
      j = images_[j];
    }
    os << ')';
  }
  if (!any) return "()";
  return os.str();
}

GroupPtr FiniteGroup::from_permutations(std::vector<Permutation> generators)
{
  std::size_t degree = 0;
  for (const auto& p : generators) degree = std::max(degree, p.degree());
  for (auto& p : generators) p = p.padded(degree);
  const std::vector<Permutation> given = generators;
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  std::erase_if(generators, [](const Permutation& p) { return p.is_identity(); });

  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  std::map<Permutation, int> index;
  std::vector<Permutation> elems{Permutation::identity(degree)};
  index.emplace(elems[0], 0);
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& s : generators) {
      Permutation y = elems[head] * s;
      if (index.emplace(y, static_cast<int>(elems.size())).second) {
        elems.push_back(std::move(y));
        if (elems.size() > 100000) throw std::invalid_argument("generated group is too large");
      }
    }
  }
  const std::size_t n = elems.size();
  g->table_.assign(n, std::vector<int>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) g->table_[a][b] = index.at(elems[a] * elems[b]);
  for (const auto& s : generators) g->generators_.push_back(index.at(s));
  for (const auto& s : given) g->input_generators_.push_back(index.at(s));
  g->labels_ = std::move(elems);
  g->finish();
  return g;
}

GroupPtr FiniteGroup::from_cayley_table(std::vector<std::vector<int>> table)
{
  const std::size_t n = table.size();
  if (n == 0) throw std::invalid_argument("Cayley table is empty");
  for (const auto& row : table) {
    if (row.size() != n) throw std::invalid_argument("Cayley table is not square");
    for (int x : row)
      if (x < 0 || x >= static_cast<int>(n)) throw std::invalid_argument("Cayley table entry out of range");
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (table[0][a] != static_cast<int>(a) || table[a][0] != static_cast<int>(a)) {
      throw std::invalid_argument("element 0 is not a two-sided identity");
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]]) {
          throw std::invalid_argument("Cayley table is not associative");
        }
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->table_ = std::move(table);
  g->inverse_.assign(n, -1);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (g->table_[a][b] == 0 && g->table_[b][a] == 0) g->inverse_[a] = static_cast<int>(b);
  for (int x : g->inverse_)
    if (x < 0) throw std::invalid_argument("Cayley table has an element without inverse");
  // Greedy generating set: smallest element outside the current closure.
  std::vector<int> closed{0};
  while (closed.size() < n) {
    int x = 0;
    while (std::binary_search(closed.begin(), closed.end(), x)) ++x;
    g->generators_.push_back(x);
    closed = g->closure(g->generators_);
  }
  g->input_generators_ = g->generators_;
  g->finish();
  return g;
}

void FiniteGroup::finish()
{
  const std::size_t n = table_.size();
  if (inverse_.size() != n) {
    inverse_.assign(n, -1);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (table_[a][b] == 0) inverse_[a] = static_cast<int>(b);
  }
}

int FiniteGroup::power(int a, long k) const
{
  if (k < 0) {
    a = inverse(a);
    k = -k;
  }
  int r = 0;
  while (k-- > 0) r = mul(r, a);
  return r;
}

int FiniteGroup::element_order(int a) const
{
  int k = 1;
  for (int x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

std::vector<int> FiniteGroup::closure(std::span<const int> gens) const
{
  std::vector<bool> in(order(), false);
  std::vector<int> elems{0};
  in[0] = true;
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (int s : gens) {
      int y = mul(elems[head], s);
      if (!in[y]) {
        in[y] = true;
        elems.push_back(y);
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

bool FiniteGroup::is_abelian() const
{
  for (std::size_t a = 0; a < order(); ++a)
    for (std::size_t b = 0; b < a; ++b)
      if (table_[a][b] != table_[b][a]) return false;
  return true;
}

int FiniteGroup::exponent() const
{
  int e = 1;
  for (std::size_t a = 0; a < order(); ++a) e = std::lcm(e, element_order(static_cast<int>(a)));
  return e;
}

std::string to_string(SubgroupKind k)
{
  switch (k) {
  case SubgroupKind::cyclic: return "cyclic";
  case SubgroupKind::metacyclic: return "metacyclic";
  case SubgroupKind::other: return "other";
  }
  return "other";
}

SubgroupKind classify(const FiniteGroup& g, std::span<const int> elements)
{
  const std::size_t n = elements.size();
  std::vector<bool> member(g.order(), false);
  for (int x : elements) member[x] = true;
  for (int x : elements)
    if (static_cast<std::size_t>(g.element_order(x)) == n) return SubgroupKind::cyclic;
  // Metacyclic: a cyclic normal subgroup <x> with cyclic quotient.
  for (int x : elements) {
    std::vector<int> cyc = g.closure(std::span<const int>(&x, 1));
    std::vector<bool> in_cyc(g.order(), false);
    for (int c : cyc) in_cyc[c] = true;
    bool normal = true;
    for (int y : elements) {
      if (!in_cyc[g.conjugate(y, x)]) {
        normal = false;
        break;
      }
    }
    if (!normal) continue;
    const std::size_t index = n / cyc.size();
    for (int y : elements) {
      std::size_t k = 1;
      for (int z = y; !in_cyc[z]; z = g.mul(z, y)) ++k;
      if (k == index) return SubgroupKind::metacyclic;
    }
  }
  return SubgroupKind::other;
}

Subgroup::Subgroup(GroupPtr parent, std::vector<int> elements) : parent_(std::move(parent)), elements_(std::move(elements))
{
  const auto& g = *parent_;
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  member_.assign(g.order(), false);
  for (int x : elements_) {
    if (x < 0 || x >= static_cast<int>(g.order())) throw std::invalid_argument("subgroup element out of range");
    member_[x] = true;
  }
  if (elements_.empty() || elements_[0] != 0) throw std::invalid_argument("subgroup must contain the identity");
  for (int a : elements_) {
    if (!member_[g.inverse(a)]) throw std::invalid_argument("element list is not closed under inversion");
    for (int b : elements_)
      if (!member_[g.mul(a, b)]) throw std::invalid_argument("element list is not closed under multiplication");
  }
  std::vector<int> closed{0};
  while (closed.size() < elements_.size()) {
    int best = -1;
    std::size_t best_size = 0;
    for (int x : elements_) {
      if (std::binary_search(closed.begin(), closed.end(), x)) continue;
      std::vector<int> trial = generators_;
      trial.push_back(x);
      std::size_t sz = g.closure(trial).size();
      if (sz > best_size) {
        best = x;
        best_size = sz;
      }
    }
    generators_.push_back(best);
    closed = g.closure(generators_);
  }
  kind_ = classify(g, elements_);
}

Subgroup Subgroup::generated(GroupPtr parent, std::span<const int> gens)
{
  auto elems = parent->closure(gens);
  return Subgroup(std::move(parent), std::move(elems));
}

Subgroup Subgroup::whole(GroupPtr parent)
{
  std::vector<int> all(parent->order());
  std::iota(all.begin(), all.end(), 0);
  return Subgroup(std::move(parent), std::move(all));
}

Subgroup Subgroup::trivial(GroupPtr parent)
{
  return Subgroup(std::move(parent), std::vector<int>{0});
}

bool Subgroup::contains(const Subgroup& h) const
{
  for (int x : h.elements())
    if (!contains(x)) return false;
  return true;
}

bool Subgroup::is_normal() const
{
  for (std::size_t x = 0; x < parent_->order(); ++x)
    for (int a : elements_)
      if (!member_[parent_->conjugate(static_cast<int>(x), a)]) return false;
  return true;
}

Subgroup Subgroup::conjugate(int x) const
{
  std::vector<int> c;
  c.reserve(elements_.size());
  for (int a : elements_) c.push_back(parent_->conjugate(x, a));
  return Subgroup(parent_, std::move(c));
}

std::vector<std::vector<int>> Subgroup::left_cosets() const
{
  const auto& g = *parent_;
  std::vector<bool> seen(g.order(), false);
  std::vector<std::vector<int>> cosets;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    std::vector<int> c;
    for (int a : elements_) c.push_back(g.mul(static_cast<int>(x), a));
    std::sort(c.begin(), c.end());
    for (int y : c) seen[y] = true;
    cosets.push_back(std::move(c));
  }
  return cosets;
}

namespace {

std::vector<std::vector<int>> enumerate_subgroup_sets(const FiniteGroup& g)
{
  std::set<std::vector<int>> found{{0}};
  std::vector<std::vector<int>> queue{{0}};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::vector<int> h = queue[head];
    std::vector<bool> in(g.order(), false);
    for (int x : h) in[x] = true;
    for (std::size_t x = 0; x < g.order(); ++x) {
      if (in[x]) continue;
      std::vector<int> gens = h;
      gens.push_back(static_cast<int>(x));
      auto k = g.closure(gens);
      if (found.insert(k).second) queue.push_back(std::move(k));
    }
  }
  std::vector<std::vector<int>> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

} // namespace

std::vector<Subgroup> all_subgroups(const GroupPtr& g)
{
  std::vector<Subgroup> out;
  for (auto& s : enumerate_subgroup_sets(*g)) out.emplace_back(g, std::move(s));
  return out;
}

std::vector<Subgroup> subgroup_classes(const GroupPtr& g)
{
  std::set<std::vector<int>> reps;
  for (const auto& h : enumerate_subgroup_sets(*g)) {
    std::vector<int> best = h;
    for (std::size_t x = 0; x < g->order(); ++x) {
      std::vector<int> c;
      for (int a : h) c.push_back(g->conjugate(static_cast<int>(x), a));
      std::sort(c.begin(), c.end());
      best = std::min(best, c);
    }
    reps.insert(std::move(best));
  }
  std::vector<std::vector<int>> sorted(reps.begin(), reps.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<Subgroup> out;
  for (auto& s : sorted) out.emplace_back(g, std::move(s));
  return out;
}

std::vector<Subgroup> cyclic_subgroup_classes(const GroupPtr& g)
{
  std::vector<Subgroup> out;
  for (auto& h : subgroup_classes(g))
    if (h.is_cyclic()) out.push_back(std::move(h));
  return out;
}

} // namespace torinv
