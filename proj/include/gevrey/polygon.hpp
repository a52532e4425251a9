#ifndef GEVREY_POLYGON_HPP
#define GEVREY_POLYGON_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "gevrey/pde.hpp"
#include "gevrey/scalar.hpp"

namespace gevrey
{

struct Point {
    Rational x;
    Rational y;

    friend bool operator==(const Point &, const Point &) = default;
};

// Corner (x, y) of the quadrant {X <= x, Y >= y}; `term` is empty for the
// principal point (s0 M, -M).
struct SupportPoint {
    Point at;
    std::optional<std::size_t> term;
};

struct Segment {
    Point start;
    Point end;
    Rational slope;
};

// Newton polygon of P: convex hull of the quadrants attached to the
// principal part and to every operator term. The hull boundary is a
// horizontal ray ending at the lowest vertex, a convex chain of segments
// with increasing positive slopes, and a vertical ray.
struct NewtonPolygon {
    Point principal;
    std::vector<SupportPoint> support_points;
    // Points not dominated by another (x' >= x and y' <= y), sorted by x.
    std::vector<Point> pareto_vertices;
    // Corners of the boundary chain, x strictly increasing.
    std::vector<Point> vertices;
    std::vector<Segment> segments;
    Rational k1_inverse;
    // Terms realising the maximum in the 1/k1 formula.
    std::vector<std::size_t> k1_terms;
};

NewtonPolygon build_polygon(const OperatorShape &shape);

// 1/k1 = max{0, max over terms of (s0 (j - M) + s.alpha) / (ord_t - j + M)}.
// Requires q >= 1 for every term.
Rational k1_inverse(const OperatorShape &shape);

struct ClipBox {
    Rational x0, y0, x1, y1;
};

struct PolygonGeometry {
    ClipBox clip;
    // Clipped outer boundary: horizontal ray, chain, vertical ray.
    std::vector<Point> boundary;
    // Closed outline of the clipped hull region, ready for filling.
    std::vector<Point> region;
    // Clipped quadrant outlines, one polyline per support point that meets
    // the clip box.
    std::vector<std::vector<Point>> quadrants;
    std::vector<Point> vertices;
    std::vector<Segment> segments;
};

PolygonGeometry export_geometry(const NewtonPolygon &np, const ClipBox &clip);

// Smallest box (with a unit margin) containing every support point.
ClipBox default_clip(const NewtonPolygon &np);

} // namespace gevrey

#endif
