#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quillen/chains.hpp"
#include "quillen/config.hpp"
#include "quillen/groups.hpp"

namespace quillen {

/// Degrees 0..3 of the normalized bar complex of G with trivial coefficients.
///
/// A d-tuple [g1|...|gd] of non-identity elements is indexed by the base-(|G|-1)
/// digits g_i - 1. Boundary rows are produced on demand, so the degree-3 slice
/// is never stored.
class BarSlice {
 public:
  explicit BarSlice(GroupPtr g);

  const GroupPtr& group() const noexcept { return group_; }
  /// (|G|-1)^d
  std::size_t rank(int d) const;
  std::size_t index(std::span<const Element> tuple) const;
  /// Boundary of one basis tuple as (column, coefficient) pairs, merged and without zeros.
  void boundary_row(int d, std::size_t row, std::vector<std::pair<std::size_t, long>>& out) const;
  IntMatrix dense_boundary(int d) const;
  /// Exhaustive check that boundary(d) * boundary(d-1) = 0 for d = 2, 3.
  bool check_square_zero() const;

 private:
  GroupPtr group_;
  std::size_t m_;
};

/// H_2(G; R) with a record of how it was obtained.
struct H2Result {
  HomologyGroup group;
  RingSpec ring;
  /// True when some p-part is known only up to its number of cyclic factors.
  bool partial = false;
  std::string method;
  std::vector<std::string> notes;
};

/// Schur multiplier over R. Exact Smith normal form on the bar slice when it
/// fits the dense budget; otherwise p-parts are certified one prime at a time
/// from F_p ranks of the slice and the multiplier of a Sylow p-subgroup.
H2Result h2_group(const GroupPtr& g, const RingSpec& ring = {}, const Config& config = {});

/// Explicit H_2(G; Z) over the dense route: generator cycles and coordinates.
class H2Basis {
 public:
  H2Basis(const GroupPtr& g, const Config& config = {});

  const GroupPtr& group() const noexcept { return group_; }
  /// Orders of the generators (each > 1; G finite so no free part).
  const IntVector& orders() const noexcept { return orders_; }
  /// Coordinates of a 2-cycle of the bar complex (entries reduced mod the orders).
  IntVector coordinates(std::span<const Integer> cycle) const;
  /// Generator i as a bar 2-cycle.
  IntVector generator(std::size_t i) const { return generators_.row_vector(i); }
  std::size_t size() const noexcept { return orders_.size(); }
  Integer order() const;

 private:
  GroupPtr group_;
  IntMatrix kernel_;      // rows: Z-basis of ker d2
  IntMatrix transform_;   // V from the relation SNF
  IntMatrix generators_;  // rows of V^-1 * K for the non-unit factors
  std::vector<std::size_t> picked_;
  IntVector orders_;
};

struct InducedMap {
  /// rows: generators of H_2(source), cols: generators of H_2(target).
  IntMatrix matrix;
  IntVector source_orders;
  IntVector target_orders;
  bool epi = false;
  bool iso = false;
};

/// H_2(alpha; Z) via the tuple-wise chain map of bar complexes.
InducedMap h2_induced_map(const FiniteGroupHom& alpha, const Config& config = {});

/// Image of H_2 of the presentation complex in H_2(G; Z) (Hopf's surjection).
InducedMap h2_presentation_map(const GroupHom& alpha, const Config& config = {});

/// A Moore space M(G,1) exists iff H_2(G; Z) = 0.
bool moore_criterion(const GroupPtr& g, const Config& config = {});
/// H_1(G) = 0 and H_2(G) = 0.
bool homology_sphere_criterion(const GroupPtr& g, const Config& config = {});
bool is_superperfect(const GroupPtr& g, const Config& config = {});

enum class KnotVerdict { PassNecessary, Refuted, PassWithCertificate };
std::string to_string(KnotVerdict v);

struct KnotReport {
  KnotVerdict verdict = KnotVerdict::PassNecessary;
  IntVector h1;
  std::vector<std::string> reasons;
};

/// Necessary conditions for a knot group: H_1 = Z, weight 1, H_2 = 0.
///
/// Refutation is sound (H_1 differs from Z, or a finite quotient needs more
/// than one normal generator). The certificate verdict needs H_1 = Z, a
/// witness that normally generates every probe quotient, and H_2 of the
/// presentation complex equal to 0, which forces H_2(G) = 0.
KnotReport knot_group_criterion(const FinitePresentation& p, const std::optional<Word>& witness,
                                const std::vector<GroupHom>& probes, const Config& config = {});

/// Combines prime-power cyclic orders into invariant factors d1 | d2 | ...
IntVector invariant_factors_from_prime_powers(const IntVector& prime_powers);

}  // namespace quillen
