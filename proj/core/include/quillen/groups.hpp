#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "quillen/config.hpp"
#include "quillen/integer_matrix.hpp"

namespace quillen {

using Element = std::uint32_t;

struct Letter {
  std::uint32_t generator = 0;
  int exponent = 1;  // +1 or -1
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// A word in the free group; the empty word is the identity.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  static Word generator(std::uint32_t g, int power = 1);

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  Word inverse() const;
  /// Cancels adjacent x x^-1 pairs.
  Word reduced() const;
  Word power(int k) const;
  /// Exponent sum of each generator.
  std::vector<long> exponent_sums(std::size_t generator_count) const;

  friend Word operator*(const Word& a, const Word& b);
  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

/// Commutator [u, v] = u v u^-1 v^-1.
Word commutator(const Word& u, const Word& v);

struct FinitePresentation {
  std::size_t generator_count = 0;
  std::vector<Word> relators;
  std::vector<std::string> generator_names;

  /// Throws InvalidInput if a relator mentions an unknown generator.
  void validate() const;
  std::string name(std::uint32_t g) const;
};

/// A finite group given by its full multiplication table; element 0 is the identity.
class FiniteGroup {
 public:
  /// Takes a table; inverses are read off it. Does not check associativity.
  explicit FiniteGroup(std::vector<std::vector<Element>> table,
                       std::vector<std::string> element_names = {});

  static std::shared_ptr<const FiniteGroup> trivial();
  static std::shared_ptr<const FiniteGroup> cyclic(std::uint32_t n, const std::string& generator = "t");
  /// Closure of permutation generators (0-based images). Element 0 is the identity,
  /// elements 1..k the generators (when distinct), the rest in breadth-first order.
  static std::shared_ptr<const FiniteGroup> from_permutations(
      const std::vector<std::vector<std::uint32_t>>& generators,
      const std::vector<std::string>& generator_names, std::size_t max_order = 100000);
  /// Element (g, h) has index g * |H| + h.
  static std::shared_ptr<const FiniteGroup> direct_product(const FiniteGroup& g, const FiniteGroup& h);

  std::size_t order() const noexcept { return table_.size(); }
  Element mul(Element a, Element b) const { return table_[a][b]; }
  Element inv(Element a) const { return inverse_[a]; }
  Element conj(Element g, Element x) const { return mul(mul(g, x), inverse_[g]); }
  Element power(Element g, long k) const;
  std::size_t element_order(Element g) const;
  bool is_abelian() const;
  const std::vector<std::vector<Element>>& table() const noexcept { return table_; }
  const std::vector<Element>& inverse_table() const noexcept { return inverse_; }

  /// Display name of an element ("g7" unless named).
  std::string element_name(Element g) const;
  /// Named elements usable in parsed expressions (generator names, builtin labels).
  const std::vector<std::pair<std::string, Element>>& symbols() const noexcept { return symbols_; }
  void add_symbol(const std::string& name, Element g);
  std::optional<Element> lookup(const std::string& name) const;

  /// Image of a word under generator images.
  Element evaluate(const Word& w, const std::vector<Element>& images) const;

  /// A small generating set: greedy, each element not in the span of the previous ones.
  std::vector<Element> generating_set() const;
  /// Breadth-first spanning tree from the identity over `gens`: for each
  /// element, its parent and the generator (with sign) used to reach it.
  struct SpanningTree {
    std::vector<std::int64_t> parent;
    std::vector<Letter> edge;
    std::vector<Element> order;  // BFS visit order
  };
  SpanningTree spanning_tree(const std::vector<Element>& gens) const;
  /// Shortest word in the tree for every element.
  std::vector<Word> tree_words(const std::vector<Element>& gens) const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.table_ == b.table_; }

 private:
  std::vector<std::vector<Element>> table_;
  std::vector<Element> inverse_;
  std::vector<std::string> names_;
  std::vector<std::pair<std::string, Element>> symbols_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Same group: identical object or identical table.
bool same_group(const GroupPtr& a, const GroupPtr& b);

/// Identity, inverse and associativity axioms. Associativity is decided by
/// Light's test over a generating set, which is exact.
bool validate_realization(const FiniteGroup& g, const Config& config = {});

/// A homomorphism from a presented group to a finite group.
class GroupHom {
 public:
  /// Validates that every relator maps to the identity.
  GroupHom(FinitePresentation source, GroupPtr target, std::vector<Element> images);

  const FinitePresentation& source() const noexcept { return source_; }
  const GroupPtr& target() const noexcept { return target_; }
  const std::vector<Element>& images() const noexcept { return images_; }
  Element apply(const Word& w) const { return target_->evaluate(w, images_); }
  bool is_surjective() const;

 private:
  FinitePresentation source_;
  GroupPtr target_;
  std::vector<Element> images_;
};

/// A homomorphism between finite realizations, given elementwise.
struct FiniteGroupHom {
  GroupPtr source;
  GroupPtr target;
  std::vector<Element> map;

  /// Checks shape and the homomorphism law on all pairs.
  FiniteGroupHom(GroupPtr source, GroupPtr target, std::vector<Element> map);
  /// Extends images of the source's generating set; throws if inconsistent.
  static FiniteGroupHom from_generators(GroupPtr source, GroupPtr target, const std::vector<Element>& gens,
                                        const std::vector<Element>& images);
  static FiniteGroupHom identity(const GroupPtr& g);
  FiniteGroupHom then(const FiniteGroupHom& next) const;
  bool is_surjective() const;
};

struct Subgroup {
  GroupPtr ambient;
  std::vector<Element> members;  // sorted

  std::size_t order() const noexcept { return members.size(); }
  bool contains(Element g) const;
  bool is_trivial() const noexcept { return members.size() <= 1; }
  bool is_whole() const noexcept { return members.size() == ambient->order(); }
  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.members == b.members; }
};

Subgroup whole_group(const GroupPtr& g);
Subgroup trivial_subgroup(const GroupPtr& g);
Subgroup subgroup_generated(const GroupPtr& g, const std::vector<Element>& gens);
Subgroup normal_closure(const GroupPtr& g, const std::vector<Element>& seeds);
/// Subgroup generated by all [a, b] = a b a^-1 b^-1, a in A, b in B.
Subgroup commutator_subgroup_with(const GroupPtr& g, const Subgroup& a, const Subgroup& b);
bool is_normal(const Subgroup& s);
bool is_perfect(const Subgroup& s);
/// [G, N] = N. Throws NotNormal if N is not normal.
bool is_relatively_perfect(const GroupPtr& g, const Subgroup& n);
/// Some g whose normal closure is G, if any (smallest index first).
std::optional<Element> weight_le_one(const GroupPtr& g);
/// All normal subgroups, as closures of unions of conjugacy classes.
std::vector<Subgroup> enumerate_normal_subgroups(const GroupPtr& g, const Config& config = {});
std::vector<Subgroup> enumerate_perfect_normal_subgroups(const GroupPtr& g, const Config& config = {});
std::vector<std::vector<Element>> conjugacy_classes(const FiniteGroup& g);

/// Quotient by a normal subgroup; element i of the quotient is the coset
/// whose smallest member is the i-th smallest such representative.
struct Quotient {
  GroupPtr group;
  std::vector<Element> projection;  // ambient element -> quotient element
};
Quotient quotient(const GroupPtr& g, const Subgroup& n);

/// A Sylow p-subgroup (p prime dividing the order).
Subgroup sylow_subgroup(const GroupPtr& g, std::uint64_t p);
/// The subgroup as a group of its own, with the inclusion map.
struct Realized {
  GroupPtr group;
  std::vector<Element> inclusion;  // local element -> ambient element
};
Realized realize_subgroup(const Subgroup& s);
Subgroup normalizer(const Subgroup& s);

/// Invariant factors of the abelianization of a presentation (0 = free summand,
/// 1-entries suppressed), in divisibility order with zeros last.
IntVector abelianization(const FinitePresentation& p);
/// Invariant factors of G/[G,G].
IntVector abelianization(const FiniteGroup& g);

/// A presentation of G on `gens` whose relators are the spanning-tree
/// (Schreier) relators u_g s u_{gs}^-1 that do not reduce to the identity.
FinitePresentation schreier_presentation(const FiniteGroup& g, const std::vector<Element>& gens,
                                         const std::vector<std::string>& names);

/// Todd-Coxeter enumeration of the cosets of the trivial subgroup. Returns the
/// presented group with its canonical map, or nothing when more than
/// `coset_limit` cosets were needed.
std::optional<GroupHom> enumerate_presentation(const FinitePresentation& p, std::size_t coset_limit = 200000);

/// Builtin groups: trivial, Z/n, S3, D4, Q8, A4, A5, Z/mxZ/n, Z/5xA5, ...
GroupPtr builtin_group(const std::string& name);
/// A presentation with its canonical map onto the builtin group.
GroupHom builtin_presentation(const std::string& name);

}  // namespace quillen
