#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "quillen/chains.hpp"
#include "quillen/cobordism.hpp"
#include "quillen/config.hpp"
#include "quillen/errors.hpp"
#include "quillen/fox.hpp"
#include "quillen/group_homology.hpp"
#include "quillen/torsion.hpp"

namespace quillen {

using Json = nlohmann::ordered_json;

/// Fixed-point decimal with `precision` digits after the point.
std::string format_decimal(long double x, int precision);
Json integer_to_json(const Integer& x);
Integer integer_from_json(const Json& j);

/// A builtin name ("A5", "Z/2xZ/2"), {"builtin": name},
/// {"generators": [...], "permutations": [[...], ...]} with 0-based images, or
/// {"table": [[...]], "names": [...]}.
GroupPtr group_from_json(const Json& j, const Config& config = {});
Json group_to_json(const FiniteGroup& g);

/// {"generators": [...], "relators": [...]}
FinitePresentation presentation_from_json(const Json& j);
Json presentation_to_json(const FinitePresentation& p);

/// {"target": group, "images": [...]}: one image per generator, as an element
/// index or a word in the target's symbols.
GroupHom hom_from_json(const FinitePresentation& p, const Json& j, const Config& config = {});
Json hom_to_json(const GroupHom& h);
Element element_from_json(const GroupPtr& g, const Json& j);

/// Rows of group-ring strings (or integers).
GroupRingMatrix matrix_from_json(const Json& j, const GroupPtr& g, const RingSpec& ring = {});
Json matrix_to_json(const GroupRingMatrix& m);

/// {"group", "ring", "bottom", "bottom_rank", "boundaries": [matrix, ...], "labels"}; a
/// {"presentation", "hom"} object builds the presentation complex instead.
BasedChainComplex complex_from_json(const Json& j, const Config& config = {});
Json complex_to_json(const BasedChainComplex& c);
Json presentation_complex_to_json(const PresentationComplex& pc);

Json homology_to_json(const HomologyReport& h);
Json obstruction_to_json(const ObstructionData& d);
Json torsion_class_to_json(const TorsionClass& t);
Json torsion_invariant_to_json(const TorsionInvariant& inv, int precision);

Json model_to_json(const ChainCobordismModel& m);
ChainCobordismModel model_from_json(const Json& j, const Config& config = {});

/// Overrides the fields present in j.
Config config_from_json(const Json& j, Config base = {});
Json config_to_json(const Config& c);

}  // namespace quillen
