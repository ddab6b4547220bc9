#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "blockdescent/error.hpp"

namespace bd {

/// A permutation of {0, ..., d-1} as its image array.
using Perm = std::vector<std::uint16_t>;

Perm perm_identity(std::size_t degree);
/// (a * b)(x) = a(b(x)): b acts first.
Perm perm_compose(const Perm& a, const Perm& b);
Perm perm_inverse(const Perm& a);
/// Parses disjoint-cycle notation on points 1..degree, e.g. "(1 2 3)(4 5)".
/// "()" is the identity.  Throws ParseError (line 0) on malformed input.
Perm parse_cycles(const std::string& text, std::size_t degree);
/// Highest point mentioned in a cycle string (0 when none).
std::size_t max_point(const std::string& text);
std::string format_cycles(const Perm& p);

constexpr std::size_t kDefaultOrderCap = 10000;

class PermGroup;
using GroupPtr = std::shared_ptr<const PermGroup>;

/// A finite permutation group with every element enumerated.
///
/// Elements are sorted lexicographically by image array, so index 0 is the
/// identity.  Group operations work on element indices.  A group built by
/// direct_product() remembers its factors: element (g, h) has index
/// g * |H| + h.
class PermGroup {
 public:
  PermGroup(std::size_t degree, std::vector<Perm> generators, std::size_t cap = kDefaultOrderCap);

  std::size_t degree() const { return degree_; }
  std::size_t order() const { return elems_.size(); }
  const std::vector<Perm>& generators() const { return gens_; }
  /// Indices of the generators.
  const std::vector<int>& generator_indices() const { return gen_idx_; }
  const Perm& element(int i) const { return elems_[static_cast<std::size_t>(i)]; }
  const std::vector<Perm>& elements() const { return elems_; }
  /// Index of a permutation, or -1 when it is not in the group.
  int index_of(const Perm& p) const;

  int mul(int a, int b) const;
  int inv(int a) const { return inv_[static_cast<std::size_t>(a)]; }
  /// a b a^-1
  int conj(int a, int b) const { return mul(mul(a, b), inv(a)); }
  int element_order(int a) const;

  /// Shortest word for each element: element i = gen[word_gen(i)] * element(word_parent(i)).
  int word_parent(int i) const { return parent_[static_cast<std::size_t>(i)]; }
  int word_gen(int i) const { return pgen_[static_cast<std::size_t>(i)]; }
  /// Element indices in breadth-first order from the identity.
  const std::vector<int>& bfs_order() const { return bfs_; }

  /// Conjugacy classes, each sorted; classes ordered by smallest member.
  const std::vector<std::vector<int>>& classes() const;
  /// Index of the class containing element i.
  int class_of(int i) const;

  struct ProductInfo {
    GroupPtr left, right;
  };
  const std::optional<ProductInfo>& product_info() const { return product_; }

  std::string label;

 private:
  friend GroupPtr direct_product(const GroupPtr&, const GroupPtr&, std::size_t);
  PermGroup() = default;
  void finish();

  std::size_t degree_ = 0;
  std::vector<Perm> gens_;
  std::vector<int> gen_idx_;
  std::vector<Perm> elems_;
  std::map<Perm, int> index_;
  std::vector<int> inv_;
  std::vector<std::uint16_t> table_;  // full multiplication table when small
  std::vector<int> parent_, pgen_, bfs_;
  std::optional<ProductInfo> product_;
  mutable std::vector<std::vector<int>> classes_;
  mutable std::vector<int> class_of_;
};

GroupPtr make_group(std::size_t degree, std::vector<Perm> generators, std::size_t cap = kDefaultOrderCap);

/// G x H acting on the disjoint union of the point sets (G's points first).
GroupPtr direct_product(const GroupPtr& g, const GroupPtr& h, std::size_t cap = kDefaultOrderCap);
/// Index of (g, h) in a product group.
int product_index(const PermGroup& gh, int g, int h);
/// The two coordinates of an element of a product group.
std::pair<int, int> product_split(const PermGroup& gh, int x);

/// A subgroup of a fixed ambient group, as a sorted list of element indices.
class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(GroupPtr ambient, std::vector<int> elements);

  const GroupPtr& ambient() const { return ambient_; }
  std::size_t order() const { return elems_.size(); }
  const std::vector<int>& elements() const { return elems_; }
  bool contains(int g) const;
  bool operator==(const Subgroup& o) const { return elems_ == o.elems_; }
  bool operator!=(const Subgroup& o) const { return elems_ != o.elems_; }
  bool operator<(const Subgroup& o) const { return elems_ < o.elems_; }
  bool is_subgroup_of(const Subgroup& o) const;
  /// A small generating set (greedy over the element order).
  std::vector<int> generators() const;
  /// This subgroup as a group in its own right (same points).  Element i of
  /// the result is ambient element elements()[i].
  GroupPtr as_group() const;

 private:
  GroupPtr ambient_;
  std::vector<int> elems_;
};

Subgroup whole(const GroupPtr& g);
Subgroup trivial_subgroup(const GroupPtr& g);
/// Subgroup generated by the given elements.
Subgroup generate(const GroupPtr& g, const std::vector<int>& gens);
/// x S x^-1
Subgroup conjugate(const Subgroup& s, int x);
bool is_p_group(const Subgroup& s, unsigned p);

/// A Sylow p-subgroup found by greedy extension over elements of p-power
/// order in index order.
Subgroup sylow(const GroupPtr& g, unsigned p);
Subgroup normalizer(const GroupPtr& g, const Subgroup& s);
Subgroup centralizer(const GroupPtr& g, const Subgroup& s);
/// All subgroups of s (|s| <= 256), ordered by (order, element list).
std::vector<Subgroup> subgroups_of(const Subgroup& s);
/// Some x in g with x A x^-1 = B, or nullopt.
std::optional<int> conjugacy_test(const GroupPtr& g, const Subgroup& a, const Subgroup& b);

/// Embeds a subgroup K of factor G (resp. H) into G x H.
int inject_left(const PermGroup& gh, int g);
int inject_right(const PermGroup& gh, int h);
/// {(phi1(u), phi2(u)) : u in P} where phi1, phi2 map P's ambient group into
/// the two factors as element-index maps.  Pass empty maps for the identity
/// (when P's ambient group is the factor itself).
Subgroup diagonal(const GroupPtr& gh, const Subgroup& p, const std::vector<int>& phi_left = {},
                  const std::vector<int>& phi_right = {});
/// Index map from the elements of sub's group to the ambient group of sub.
std::vector<int> inclusion_map(const Subgroup& sub);
/// Map from the group h (whose elements all lie in g as permutations on the
/// same points) into g.
std::vector<int> element_map(const PermGroup& h, const PermGroup& g);

/// Group isomorphisms a -> b sending generator_indices() of a anywhere
/// consistent; returns the first found by backtracking, as an index map.
std::optional<std::vector<int>> find_isomorphism(const PermGroup& a, const PermGroup& b);

/// Reads generators from text (one per line, cycle notation on 1..d, '#'
/// comments).  ParseError carries the 1-based line number.
GroupPtr parse_group(const std::string& text, std::size_t cap = kDefaultOrderCap);
GroupPtr read_group_file(const std::string& path, std::size_t cap = kDefaultOrderCap);

/// Built-in groups: a5, a4, v4, v4xc3, c3, s3, trivial.
GroupPtr builtin_group(const std::string& name);
std::string builtin_group_text(const std::string& name);

}  // namespace bd
