#pragma once

#include <array>
#include <optional>
#include <string>

#include "hyperdomain/domain.hpp"

namespace hyperdomain {

/// Deterministic SVG picture of one planar factor: branch curves over their
/// supports, dashed asymptotes, the shaded admissible region, corner
/// markers and an axis tick per t_j. Fixed-format floats make the output
/// byte-stable for golden-file comparison.
std::string render_factor_svg(const DomainSpec& d, int factor_index,
                              std::optional<std::array<double, 4>> window = std::nullopt);

} // namespace hyperdomain
