#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quillen/chains.hpp"
#include "quillen/config.hpp"
#include "quillen/plus_construction.hpp"
#include "quillen/torsion.hpp"

namespace quillen {

/// Chain shadow of a cobordism (W; M, N) over Z[G], G = pi_1(W).
struct ChainCobordismModel {
  BasedChainComplex m;
  BasedChainComplex w;
  BasedChainComplex n;
  ChainMap incl_m;
  ChainMap incl_n;
  /// Presentation of pi_1(M) and its map onto G.
  GroupHom alpha_m;
  /// Normal generators of P = ker(pi_1(M) -> G).
  std::vector<Word> seeds;
  int parity = 0;
};

/// W = M = N with identity inclusions.
ChainCobordismModel product_model(const GroupHom& alpha_m, int parity = 0);

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> diagnostics;
};

/// N -> W and M -> W have acyclic cones over Z[G] and the seeds generate a
/// perfect subgroup (when pi_1(M) can be enumerated).
VerifyReport verify_one_sided_h(const ChainCobordismModel& model, const Config& config = {});

struct CobordismClass {
  std::vector<Word> seeds;
  /// P inside the enumerated pi_1(M), when available.
  std::optional<Subgroup> p;
  TorsionClass tau;
};

/// (P, tau(W, N)); throws NotOneSidedH when verification fails.
CobordismClass classify(const ChainCobordismModel& model, const Config& config = {});

/// W is the plus construction of M along the seeds with tau(W, M) represented
/// by the dual-sign representative of tau; N is W with its top cells rebased
/// so that tau(W, N) = tau.
ChainCobordismModel realize(const GroupHom& alpha_m, const std::vector<Word>& seeds, const TorsionClass& tau,
                            const Config& config = {});

struct GlueReport {
  /// tau(N_1 -> W_1 u_M W_2)
  TorsionClass observed;
  /// tau_1 + tau(W_2, M)
  TorsionClass expected;
  TorsionInvariant observed_invariant;
  TorsionInvariant expected_invariant;
  bool formula_holds = false;
};

/// Glues two models along their common M. Throws MismatchedBase.
GlueReport glue(const ChainCobordismModel& first, const ChainCobordismModel& second, const Config& config = {});

struct ClassIndex {
  Subgroup p;
  GroupPtr quotient;
  std::size_t nontrivial_characters = 0;
  /// Rank of Wh(Z/n) = floor(n/2) + 1 - d(n) for cyclic quotients.
  std::optional<std::size_t> wh_rank;
  std::string description;
};

/// One entry per perfect normal subgroup P of pi. Throws OrderTooLarge.
std::vector<ClassIndex> enumerate_classes(const GroupPtr& pi, const Config& config = {});

}  // namespace quillen
