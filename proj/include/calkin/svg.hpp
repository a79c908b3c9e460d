#pragma once

// Per-level SVG plots: the level set in log-cylinder and planar views with
// the antipodal subset overlaid and component sample points marked.

#include <string>

#include "calkin/tower.hpp"

namespace calkin {

std::string level_svg(const Level& level);
void write_level_svg(const Level& level, const std::string& path);

}  // namespace calkin
