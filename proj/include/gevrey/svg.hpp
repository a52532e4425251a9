#ifndef GEVREY_SVG_HPP
#define GEVREY_SVG_HPP

#include <string>

#include "gevrey/polygon.hpp"

namespace gevrey
{

// SVG 1.1 drawing of the clipped Newton polygon. The viewBox is the clip box
// scaled by `unit` pixels per unit, with the y axis pointing up.
std::string render_svg(const NewtonPolygon &np, const ClipBox &clip, unsigned unit = 40);

} // namespace gevrey

#endif
