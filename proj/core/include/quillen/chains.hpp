#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quillen/config.hpp"
#include "quillen/group_ring.hpp"
#include "quillen/integer_matrix.hpp"
#include "quillen/ring_spec.hpp"

namespace quillen {

/// How a complex over Z[G] is turned into a complex of abelian groups.
enum class Coefficients {
  Trivial,  // augmentation: C tensored over Z[G] with Z
  Regular,  // forget the group action: C as a complex of free abelian groups
};

/// Finitely many free based modules over Z[G] (G trivial for plain complexes).
///
/// boundary(d) maps degree d to degree d-1, as a rank(d) x rank(d-1) matrix
/// acting on row vectors.
class BasedChainComplex {
 public:
  BasedChainComplex() = default;
  /// boundaries[i] is the boundary out of degree bottom + i; boundaries[0]
  /// must have zero columns. Validates shapes and that consecutive boundaries compose to zero.
  BasedChainComplex(GroupPtr group, RingSpec ring, int bottom, std::vector<GroupRingMatrix> boundaries,
                    std::vector<std::vector<std::string>> labels = {});
  /// Plain complex over Z from integer boundaries out of degrees bottom+1, bottom+2, ...
  static BasedChainComplex from_integer(int bottom, std::size_t bottom_rank, const std::vector<IntMatrix>& boundaries,
                                        RingSpec ring = {});
  /// Zero complex concentrated at the given degrees with the given ranks.
  static BasedChainComplex free_modules(GroupPtr group, int bottom, const std::vector<std::size_t>& ranks);

  const GroupPtr& group() const noexcept { return group_; }
  const RingSpec& ring() const noexcept { return ring_; }
  bool has_group() const noexcept { return group_->order() > 1; }
  int bottom() const noexcept { return bottom_; }
  int top() const noexcept { return bottom_ + static_cast<int>(boundaries_.size()) - 1; }
  std::size_t rank(int d) const;
  /// The zero matrix of the right shape outside the stored range.
  GroupRingMatrix boundary(int d) const;
  const std::vector<std::string>& labels(int d) const;
  std::string label(int d, std::size_t i) const;

  /// Boundary as an integer matrix under the chosen coefficients.
  IntMatrix integer_boundary(int d, Coefficients mode) const;
  /// Rank of degree d after the coefficient change.
  std::size_t integer_rank(int d, Coefficients mode) const;

  /// Euler characteristic of the ranks.
  long euler_characteristic() const;

  /// Copy with one boundary replaced (shapes and d^2 = 0 rechecked).
  BasedChainComplex with_boundary(int d, const GroupRingMatrix& m) const;
  /// Extends the degree range with zero modules so that it covers [lo, hi].
  BasedChainComplex widened(int lo, int hi) const;

 private:
  void validate() const;

  GroupPtr group_ = FiniteGroup::trivial();
  RingSpec ring_;
  int bottom_ = 0;
  std::vector<GroupRingMatrix> boundaries_;
  std::vector<std::vector<std::string>> labels_;
};

/// One homology group over a ring: factors in divisibility order (over Z or a
/// localization: torsion factors > 1 then a 0 per free summand; over Z/p:
/// a 0 per dimension).
struct HomologyGroup {
  IntVector factors;
  std::size_t betti = 0;

  bool is_zero() const noexcept { return factors.empty(); }
  /// Order of the torsion part (1 if none).
  Integer torsion_order() const;
  std::string to_string(const RingSpec& ring) const;
  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

struct HomologyReport {
  RingSpec ring;
  Coefficients mode = Coefficients::Trivial;
  int bottom = 0;
  std::vector<HomologyGroup> groups;

  /// Zero group outside the computed range.
  HomologyGroup at(int d) const;
  bool is_zero() const;
};

HomologyReport homology(const BasedChainComplex& c, const RingSpec& ring,
                        Coefficients mode = Coefficients::Trivial, const Config& config = {});

/// Homology of a complex given by integer boundaries; boundaries[i] leaves
/// degree bottom + i (boundaries[0] has zero columns).
HomologyReport integer_homology(const std::vector<IntMatrix>& boundaries, int bottom, const RingSpec& ring,
                                const Config& config = {});

/// Chain map given by one matrix per degree, rank_source(d) x rank_target(d).
class ChainMap {
 public:
  ChainMap(BasedChainComplex source, BasedChainComplex target, int bottom, std::vector<GroupRingMatrix> maps);
  static ChainMap identity(const BasedChainComplex& c);
  /// Inclusion of basis elements: image[d][i] is the target basis index of source basis element i.
  static ChainMap basis_inclusion(const BasedChainComplex& source, const BasedChainComplex& target,
                                  const std::vector<std::vector<std::size_t>>& image);

  const BasedChainComplex& source() const noexcept { return source_; }
  const BasedChainComplex& target() const noexcept { return target_; }
  GroupRingMatrix at(int d) const;
  /// For a basis inclusion, target indices of each source basis element in degree d.
  std::optional<std::vector<std::size_t>> basis_image(int d) const;

 private:
  BasedChainComplex source_;
  BasedChainComplex target_;
  int bottom_ = 0;
  std::vector<GroupRingMatrix> maps_;
};

/// C_k = S_{k-1} + T_k with rows [-d^S, f] for source cells and [0, d^T] for target cells.
BasedChainComplex mapping_cone(const ChainMap& f);

bool is_acyclic(const BasedChainComplex& c, const RingSpec& ring, Coefficients mode = Coefficients::Trivial,
                const Config& config = {});

/// Relative complex of a subcomplex spanned by basis elements: the cells
/// listed in `drop[d]` are deleted.
BasedChainComplex quotient_by_cells(const BasedChainComplex& c, int bottom,
                                    const std::vector<std::vector<std::size_t>>& drop);

struct LesReport {
  bool exact = true;
  std::vector<std::uint32_t> primes;
  std::vector<std::string> diagnostics;
};

/// Exactness of ... -> H(Y,X) -> H(Z,X) -> H(Z,Y) -> H(Y,X) -> ... for basis
/// inclusions X -> Y -> Z, with the induced and connecting maps computed over
/// F_p for a large prime and every prime dividing a torsion order.
LesReport les_consistency(const ChainMap& x_to_y, const ChainMap& y_to_z, Coefficients mode = Coefficients::Trivial,
                          const Config& config = {});

std::string to_string(Coefficients mode);

}  // namespace quillen
