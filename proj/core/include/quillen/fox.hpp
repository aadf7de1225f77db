#pragma once

#include <string>
#include <vector>

#include "quillen/chains.hpp"
#include "quillen/config.hpp"
#include "quillen/group_ring.hpp"
#include "quillen/groups.hpp"

namespace quillen {

/// Left Fox derivative dw/dx pushed through alpha into Z[G].
GroupRingElement fox_derivative(const Word& w, std::uint32_t generator, const GroupHom& alpha);

/// Cellular chains of the G-cover of a presentation 2-complex.
///
/// Degree 0 has one cell, degree 1 one cell per generator with boundary
/// alpha(x) - 1, degree 2 one cell per relator with the Fox derivatives as
/// its row.
struct PresentationComplex {
  GroupHom hom;
  BasedChainComplex complex;

  const FinitePresentation& presentation() const noexcept { return hom.source(); }
};

PresentationComplex build_presentation_complex(const GroupHom& alpha);

/// A cell and its boundary row in the basis one degree down.
struct AttachmentRecord {
  int dimension = 2;
  std::vector<GroupRingElement> boundary_row;
  std::string label;
};

/// Attaches the cells in order; rows may refer to cells attached earlier in
/// the same call. Throws InvalidBoundary when a row does not compose to zero.
BasedChainComplex attach_cells(const BasedChainComplex& c, const std::vector<AttachmentRecord>& records);

/// Chains x in ker d2 whose coordinates on the 2-cells from `first_new` on are
/// the given target rows. Solved over Z through the regular representation.
/// Throws NotLiftable carrying the relative boundary that is not a boundary.
GroupRingMatrix kernel_lift_solve(const BasedChainComplex& c, std::size_t first_new, const GroupRingMatrix& targets,
                                  const Config& config = {});

}  // namespace quillen
