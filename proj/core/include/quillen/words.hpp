#pragma once

#include <string>
#include <vector>

#include "quillen/groups.hpp"

namespace quillen {

/// Parses a word over named generators.
///
///   word := factor*          (juxtaposition or '*' between factors)
///   factor := atom ('^' int)?
///   atom := name | '(' word ')' | '[' word ',' word ']' | '1'
///
/// Throws InvalidInput on unknown names or malformed text.
Word parse_word(const std::string& text, const std::vector<std::string>& names);

/// Compact text form, e.g. "a^2 b a^-1".
std::string format_word(const Word& w, const std::vector<std::string>& names);

FinitePresentation parse_presentation(const std::vector<std::string>& generators,
                                      const std::vector<std::string>& relators);

}  // namespace quillen
