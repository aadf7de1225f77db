#pragma once

#include <string>
#include <vector>

#include "quillen/chains.hpp"
#include "quillen/config.hpp"
#include "quillen/fox.hpp"
#include "quillen/torsion.hpp"

namespace quillen {

struct HomologyTargetReport {
  RingSpec ring;
  HomologyReport x_homology;
  HomologyReport y_homology;
  HomologyReport relative_homology;
  /// H_q(Y, X; R) = 0 for q >= 3.
  bool relative_vanishes = false;
  /// H_2(Y; R) -> H_2(Y, X; R) is zero.
  bool im_b_zero = false;
  /// H_q(X; R) and H_q(Y; R) agree for q >= 2.
  bool higher_homology_matches = false;
  IntVector h1_y;
  IntVector h1_group;
  bool w_equals_x = false;
  std::vector<std::string> notes;
};

struct HomologyTargetResult {
  /// Presentation of pi_1(W) = G: the generators and relators of X, then the new ones.
  GroupHom w_hom;
  BasedChainComplex x;
  BasedChainComplex y;
  std::vector<AttachmentRecord> added_cells;
  HomologyTargetReport report;
};

/// Builds Y from the presentation complex X of alpha's source by adding
/// 1- and 2-cells (so that pi_1 = G) and then one 3-cell per basis element of
/// im j1 in H_2(W, X; R). Throws NotLiftable when the spherical classes do
/// not span im j1, which happens exactly when H_2(alpha; R) is not onto.
HomologyTargetResult homology_equivalence_target(const GroupHom& alpha, const RingSpec& ring = {},
                                                 const Config& config = {});

struct PlusResult {
  BasedChainComplex x;
  BasedChainComplex x_plus;
  /// C(X+, X) over Z[G], concentrated in degrees 2 and 3.
  BasedChainComplex relative;
  std::vector<AttachmentRecord> added_cells;
  /// A padded with an identity block to size N.
  GroupRingMatrix padded;
  TorsionClass torsion;
  std::size_t seed_count = 0;
  std::vector<std::string> checks;
};

/// Plus construction of the presentation complex of alpha's source killing
/// the normal closure P of the seeds, with torsion represented by `a`.
/// alpha must map onto G with kernel P (checked when the source group can be
/// enumerated). Throws NotPerfect, NotInvertible.
PlusResult plus_with_torsion(const GroupHom& alpha, const std::vector<Word>& seeds, const GroupRingMatrix& a,
                             const Config& config = {});

/// Spheres x_i against handles b_k over F_2 with w_i = <w_2, x_i>.
struct FramingProblem {
  IntMatrix a_mod2;
  IntVector w;
  bool summand_certificate = false;
};

/// eps with w + a * eps = 0 over F_2 (free variables 0). Throws NotASummand
/// when the system is inconsistent.
IntVector framing_correction(const FramingProblem& fp);

}  // namespace quillen
