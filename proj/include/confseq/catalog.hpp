#pragma once

#include <optional>
#include <string>
#include <vector>

#include "confseq/algebra.hpp"

namespace confseq {

/// Built-in algebras: point, s<m> (also sphere(<m>)), t<k> (t2 is the
/// torus), cp2, s2xs2, stb_s2xs2 (truncated model, default bound 12),
/// s5#s2xs3 and stb#s2xs5 (connected-sum presets).
Algebra catalog(const std::string& name, std::optional<int> truncate = std::nullopt);

/// Names listed by the catalog command.
std::vector<std::string> catalog_names();

/// Catalog entries with zero differential, each its own cohomology.
std::vector<std::string> formal_catalog();

/// Default truncation bound of the tangent-bundle model.
constexpr int kStbDefaultBound = 12;

}  // namespace confseq
