#pragma once

#include <string>
#include <vector>

#include "quillen/chains.hpp"
#include "quillen/config.hpp"
#include "quillen/cyclotomic.hpp"
#include "quillen/group_ring.hpp"

namespace quillen {

/// An element of Wh(G) given by an invertible square matrix over Z[G].
///
/// `parity` is the ambient dimension mod 2 used by the duality sign.
class TorsionClass {
 public:
  TorsionClass() = default;
  /// Throws NotInvertible unless the representative has an inverse over Z[G].
  explicit TorsionClass(GroupRingMatrix representative, int parity = 0);
  static TorsionClass trivial(const GroupPtr& g, std::size_t size = 1, int parity = 0);

  const GroupPtr& group() const noexcept { return representative_.group(); }
  const GroupRingMatrix& representative() const noexcept { return representative_; }
  const GroupRingMatrix& inverse() const noexcept { return inverse_; }
  int parity() const noexcept { return parity_; }
  std::size_t size() const noexcept { return representative_.rows(); }
  TorsionClass with_parity(int parity) const;

 private:
  GroupRingMatrix representative_;
  GroupRingMatrix inverse_;
  int parity_ = 0;
};

/// Value of one linear character on the determinant.
struct CharacterDatum {
  Character character;
  Cyclotomic value;  // chi(det), defined up to a root of unity
  Cyclotomic norm;   // value * conj(value), independent of that choice
  long double magnitude = 0;
  long double log_magnitude = 0;
  bool unit_modulus = true;
};

/// Detectors for the class in Wh(G): equal classes have equal invariants.
struct TorsionInvariant {
  Integer regular_det;
  Integer aug_det;
  /// Determinant over Z[G_ab], normalized modulo +-g.
  GroupRingElement abelianized_det;
  std::vector<CharacterDatum> characters;

  /// Same abelianized determinant and the same character norms.
  bool matches(const TorsionInvariant& other) const;
};

TorsionInvariant invariant(const TorsionClass& tau, const Config& config = {});

/// Entrywise involution and transpose.
TorsionClass conjugate(const TorsionClass& tau);
/// The class (-1)^n conj(tau): the conjugate for even parity, its inverse for odd.
TorsionClass dual_sign(const TorsionClass& tau);
/// Block sum; throws MixedGroups for different groups.
TorsionClass compose(const TorsionClass& a, const TorsionClass& b);
/// tau + (-1)^n conj(tau).
TorsionClass glue_formula(const TorsionClass& tau, int parity);

enum class TrivialityVerdict { Nontrivial, ReducedToTrivial, Unknown };
std::string to_string(TrivialityVerdict v);

struct TrivialityReport {
  TrivialityVerdict verdict = TrivialityVerdict::Unknown;
  std::size_t nodes = 0;
  std::size_t stabilization = 0;
  std::string reason;
};

/// Sound when nontrivial (a character norm differs from 1); otherwise a
/// bounded beam search over elementary operations looks for a monomial matrix.
TrivialityReport is_trivial_candidate(const TorsionClass& tau, const Config& config = {});

/// Torsion of an acyclic based complex over Z[G], as the class of (d + s) from
/// the odd-degree cells to the even-degree cells for a contraction s.
///
/// Longer complexes first cancel pairs of cells joined by an entry +-g. A
/// two-term complex whose upper degree is odd gives its boundary matrix.
TorsionClass torsion_of_pair(const BasedChainComplex& c, int parity = 0, const Config& config = {});

/// Rows X with X * m = targets over Z[G], through the regular representation.
std::optional<GroupRingMatrix> solve_rows(const GroupRingMatrix& m, const GroupRingMatrix& targets,
                                          const Config& config = {});

}  // namespace quillen
