#pragma once

#include <string>

#include "confseq/algebra.hpp"

namespace confseq {

/// Line-oriented algebra text.
///
///   algebra NAME                      cdga-free NAME
///   field Q                           field F5
///   basis LABEL degree D              generator LABEL degree D
///   unit LABEL                        d LABEL = c1*g1*g2 + ...
///   top LABEL                         truncate N
///   product A B = c1*C1 + c2*C2       end
///   d A = c1*C1 + ...
///   end
///
/// Unspecified products and differentials are zero, b.a follows from a.b by
/// graded commutativity, and '#' at line start or after whitespace starts a comment. Throws ParseError.
Algebra parse_algebra(const std::string& text);

/// Text that parse_algebra reads back to an equal algebra. Truncated free
/// models are written in the generator form.
std::string serialize_algebra(const Algebra& a);

/// The same truncated free model with another bound.
Algebra retruncate(const Algebra& a, int bound);

}  // namespace confseq
