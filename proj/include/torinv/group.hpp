#pragma once

// Finite groups given by a full Cayley table, their subgroups and the
// conjugacy classes of subgroups. Desk scale: orders up to a few dozen.

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace torinv {

/// A permutation of {0, ..., degree-1}; images_[i] is the image of i.
class Permutation {
public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);

  static Permutation identity(std::size_t degree);
  /// Parses cycle notation with 1-indexed points, e.g. "(1 2)(3 4)" or "()".
  /// The result is padded to `degree` points when degree is larger.
  static Permutation parse(std::string_view text, std::size_t degree = 0);

  std::size_t degree() const { return images_.size(); }
  int operator()(int i) const { return i < static_cast<int>(images_.size()) ? images_[i] : i; }
  const std::vector<int>& images() const { return images_; }
  bool is_identity() const;

  Permutation padded(std::size_t degree) const;
  Permutation inverse() const;
  /// (a * b)(i) = a(b(i)): b acts first.
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation& a, const Permutation& b) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) = default;

  /// Cycle notation, 1-indexed; "()" for the identity.
  std::string str() const;

private:
  std::vector<int> images_;
};

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Finite group with elements 0..order-1, 0 the identity.
class FiniteGroup {
public:
  /// Group generated by the given permutations. Elements are numbered in
  /// breadth-first order from the identity over the sorted, deduplicated
  /// generators, right-multiplying by each generator in turn.
  static GroupPtr from_permutations(std::vector<Permutation> generators);
  /// Group given by its multiplication table; table[a][b] = a*b, 0 = identity.
  static GroupPtr from_cayley_table(std::vector<std::vector<int>> table);

  std::size_t order() const { return table_.size(); }
  int mul(int a, int b) const { return table_[a][b]; }
  int inverse(int a) const { return inverse_[a]; }
  int conjugate(int x, int a) const { return mul(mul(x, a), inverse(x)); }
  int power(int a, long k) const;
  int element_order(int a) const;

  const std::vector<int>& generators() const { return generators_; }
  /// Generators as supplied by the caller, in their order (duplicates and
  /// the identity kept). Same as generators() for table-defined groups.
  const std::vector<int>& input_generators() const { return input_generators_; }
  const std::vector<std::vector<int>>& table() const { return table_; }
  /// Permutation realisations, empty for table-defined groups.
  const std::vector<Permutation>& labels() const { return labels_; }

  /// Sorted element list of the subgroup generated by `gens`.
  std::vector<int> closure(std::span<const int> gens) const;
  bool is_abelian() const;
  int exponent() const;

private:
  FiniteGroup() = default;
  void finish();

  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  std::vector<int> generators_;
  std::vector<int> input_generators_;
  std::vector<Permutation> labels_;
};

enum class SubgroupKind { cyclic, metacyclic, other };

std::string to_string(SubgroupKind k);

class Subgroup {
public:
  Subgroup() = default;
  /// Validates closure; throws std::invalid_argument when `elements` is not a subgroup.
  Subgroup(GroupPtr parent, std::vector<int> elements);

  static Subgroup generated(GroupPtr parent, std::span<const int> gens);
  static Subgroup whole(GroupPtr parent);
  static Subgroup trivial(GroupPtr parent);

  const GroupPtr& parent() const { return parent_; }
  const std::vector<int>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  bool contains(int x) const { return member_[x]; }
  bool contains(const Subgroup& h) const;
  /// A small generating set, chosen greedily and deterministically.
  const std::vector<int>& generators() const { return generators_; }
  SubgroupKind kind() const { return kind_; }
  bool is_cyclic() const { return kind_ == SubgroupKind::cyclic; }
  bool is_normal() const;

  Subgroup conjugate(int x) const;
  /// Left cosets x*H, each sorted; ordered by smallest element, so the
  /// subgroup itself comes first.
  std::vector<std::vector<int>> left_cosets() const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.elements_ == b.elements_; }

private:
  GroupPtr parent_;
  std::vector<int> elements_;
  std::vector<bool> member_;
  std::vector<int> generators_;
  SubgroupKind kind_ = SubgroupKind::cyclic;
};

/// Most specific label among cyclic / metacyclic / other.
SubgroupKind classify(const FiniteGroup& g, std::span<const int> elements);

/// Every subgroup, sorted by (order, element list).
std::vector<Subgroup> all_subgroups(const GroupPtr& g);
/// One representative per conjugacy class (lexicographically smallest
/// element list), sorted by (order, element list): trivial first, g last.
std::vector<Subgroup> subgroup_classes(const GroupPtr& g);
std::vector<Subgroup> cyclic_subgroup_classes(const GroupPtr& g);

} // namespace torinv
