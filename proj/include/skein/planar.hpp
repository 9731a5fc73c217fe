#pragma once

// Builds crossing codes from plane polylines with per-segment heights.
// Fixtures are drawn this way instead of writing codes by hand.

#include <vector>

#include "skein/diagram.hpp"

namespace skein {

struct Point {
    double x = 0, y = 0;
};

struct Polyline {
    std::vector<Point> points;  // a closed line does not repeat its first point
    std::vector<double> heights;  // one per segment, or a single value for all
    bool closed = true;
    int framing_offset = 0;
    Decoration decoration;
    int orientation = 1;
};

// Open polylines must start and end at trivalent vertices: points where exactly
// three open ends meet. Throws on degenerate geometry or equal heights at a crossing.
LinkDiagram build_diagram(const std::vector<Polyline>& lines);

// Axis-parallel rectangle traversed counterclockwise from its lower-left corner.
Polyline rectangle(double x0, double y0, double x1, double y1, double height);

}  // namespace skein
