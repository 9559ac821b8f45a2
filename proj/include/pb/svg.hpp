#pragma once
// Minimal SVG 1.1 writer for billiard scenes: boundary pieces, orbit
// polyline, marked base points. Draws only real loci.

#include <string>

#include "pb/projbill.hpp"

namespace pb {

std::string render_svg(const Billiard<double>& b, const Orbit& orbit, int width = 640,
                       int height = 640);

} // namespace pb
