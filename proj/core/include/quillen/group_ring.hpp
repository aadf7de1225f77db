#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "quillen/cyclotomic.hpp"
#include "quillen/groups.hpp"
#include "quillen/integer_matrix.hpp"
#include "quillen/ring_spec.hpp"

namespace quillen {

using Coefficient = mpq_class;

/// Element of R[G] for a finite group G, stored sparsely without zero terms.
class GroupRingElement {
 public:
  GroupRingElement() = default;
  GroupRingElement(GroupPtr group, RingSpec ring);
  static GroupRingElement zero(GroupPtr group, RingSpec ring = {});
  static GroupRingElement one(GroupPtr group, RingSpec ring = {});
  static GroupRingElement basis(GroupPtr group, Element g, RingSpec ring = {}, Coefficient c = 1);

  const GroupPtr& group() const noexcept { return group_; }
  const RingSpec& ring() const noexcept { return ring_; }
  const std::map<Element, Coefficient>& terms() const noexcept { return terms_; }
  Coefficient coefficient(Element g) const;
  void add_term(Element g, const Coefficient& c);

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_integral() const;
  /// +-g when the element is a signed group element.
  std::optional<std::pair<int, Element>> as_signed_element() const;

  GroupRingElement operator+(const GroupRingElement& o) const;
  GroupRingElement operator-(const GroupRingElement& o) const;
  GroupRingElement operator-() const;
  GroupRingElement operator*(const GroupRingElement& o) const;
  GroupRingElement scaled(const Coefficient& c) const;
  GroupRingElement& operator+=(const GroupRingElement& o) { return *this = *this + o; }
  GroupRingElement& operator-=(const GroupRingElement& o) { return *this = *this - o; }
  friend bool operator==(const GroupRingElement& a, const GroupRingElement& b);

  Coefficient augmentation() const;
  /// sum a_g g  ->  sum a_g g^-1
  GroupRingElement involution() const;
  /// Pushes the element along a map of groups.
  GroupRingElement mapped(const GroupPtr& target, const std::vector<Element>& map) const;

  /// Dense integer coefficients indexed by element (requires integral coefficients).
  IntVector dense() const;
  static GroupRingElement from_dense(GroupPtr group, std::span<const Integer> coeffs, RingSpec ring = {});

 private:
  void check_compatible(const GroupRingElement& o) const;

  GroupPtr group_;
  RingSpec ring_;
  std::map<Element, Coefficient> terms_;
};

/// Dense matrix over R[G].
class GroupRingMatrix {
 public:
  GroupRingMatrix() = default;
  GroupRingMatrix(GroupPtr group, RingSpec ring, std::size_t rows, std::size_t cols);
  static GroupRingMatrix identity(GroupPtr group, std::size_t n, RingSpec ring = {});
  static GroupRingMatrix from_integers(GroupPtr group, const IntMatrix& m, RingSpec ring = {});

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const GroupPtr& group() const noexcept { return group_; }
  const RingSpec& ring() const noexcept { return ring_; }
  GroupRingElement& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const GroupRingElement& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  GroupRingMatrix operator*(const GroupRingMatrix& o) const;
  GroupRingMatrix operator+(const GroupRingMatrix& o) const;
  GroupRingMatrix operator-(const GroupRingMatrix& o) const;
  friend bool operator==(const GroupRingMatrix& a, const GroupRingMatrix& b);

  bool is_zero() const;
  bool is_identity() const;
  GroupRingMatrix transpose() const;
  /// Entrywise involution followed by transpose.
  GroupRingMatrix conjugate_transpose() const;
  GroupRingMatrix row_block(std::size_t first, std::size_t count) const;
  GroupRingMatrix col_block(std::size_t first, std::size_t count) const;
  GroupRingMatrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
  GroupRingMatrix stacked(const GroupRingMatrix& below) const;
  GroupRingMatrix beside(const GroupRingMatrix& right) const;
  /// Entrywise augmentation, as an integer matrix.
  IntMatrix augmented() const;
  GroupRingMatrix mapped(const GroupPtr& target, const std::vector<Element>& map) const;

 private:
  GroupPtr group_;
  RingSpec ring_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<GroupRingElement> data_;
};

GroupRingMatrix block_diagonal(const GroupRingMatrix& a, const GroupRingMatrix& b);

/// Integer matrix of x -> x * m on coordinates over the group basis.
///
/// Row (i, g) holds the coefficients of g * m_i. in the basis (j, k), so that
/// regular_representation(m * n) = regular_representation(m) * regular_representation(n).
/// Requires integral coefficients (residues for Z/p).
IntMatrix regular_representation(const GroupRingMatrix& m);
/// Reads a Z[G]-matrix back from a regular representation; nullopt if the
/// matrix does not commute with the group action.
std::optional<GroupRingMatrix> from_regular_representation(const GroupPtr& g, const IntMatrix& r,
                                                           std::size_t rows, std::size_t cols);
/// Two-sided inverse over Z[G], via the regular representation.
std::optional<GroupRingMatrix> inverse(const GroupRingMatrix& m);

/// A one-dimensional character chi(g) = zeta_n^{k_g} of a finite group.
struct Character {
  GroupPtr group;
  std::uint32_t conductor = 1;
  std::vector<std::uint32_t> exponents;  // k_g for each element
  bool is_trivial() const;
  Character conjugate() const;
  Cyclotomic value(Element g) const { return Cyclotomic::root_power(conductor, exponents[g]); }
};

/// All one-dimensional characters (those of G/[G,G]), trivial character first,
/// in a fixed deterministic order. All share the exponent of G/[G,G] as conductor.
std::vector<Character> linear_characters(const GroupPtr& g);

struct CharacterValue {
  Cyclotomic exact;
  long double magnitude = 0;
};
/// sum a_g chi(g). Throws NonAbelianGroup unless G is abelian.
CharacterValue character_eval(const GroupRingElement& e, const Character& chi);

/// Parses "3*t^2 - t + 1", "2*[g3] - [g0]", "[a b^-1]" using the group's
/// symbols; "[...]" may hold an element index "g7"/"7" or a word in the symbols.
GroupRingElement parse_group_ring_element(const std::string& text, const GroupPtr& g, RingSpec ring = {});
std::string format_group_ring_element(const GroupRingElement& e);

}  // namespace quillen
