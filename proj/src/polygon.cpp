#include "gevrey/polygon.hpp"

#include <algorithm>

namespace gevrey
{

namespace
{

Rational dot(const std::vector<Rational> &s, const MultiIndex &alpha)
{
    if (s.size() != alpha.size()) {
        throw DimensionError("orders and derivative multi-index differ in length");
    }
    Rational acc = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        acc += s[i] * Rational(static_cast<long>(alpha[i]));
    }
    return acc;
}

// (b - a) x (c - a); positive for a counter-clockwise turn.
Rational cross(const Point &a, const Point &b, const Point &c)
{
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

bool inside(const ClipBox &box, const Point &p)
{
    return p.x >= box.x0 && p.x <= box.x1 && p.y >= box.y0 && p.y <= box.y1;
}

// Liang-Barsky clipping of segment a-b against the box, in exact arithmetic.
std::optional<std::pair<Point, Point>> clip_segment(const Point &a, const Point &b, const ClipBox &box)
{
    Rational t0 = 0;
    Rational t1 = 1;
    const Rational dx = b.x - a.x;
    const Rational dy = b.y - a.y;
    const Rational p[4] = {-dx, dx, -dy, dy};
    const Rational q[4] = {a.x - box.x0, box.x1 - a.x, a.y - box.y0, box.y1 - a.y};
    for (int i = 0; i < 4; ++i) {
        if (p[i] == 0) {
            if (q[i] < 0) {
                return std::nullopt;
            }
            continue;
        }
        const Rational t = q[i] / p[i];
        if (p[i] < 0) {
            t0 = std::max(t0, t);
        } else {
            t1 = std::min(t1, t);
        }
        if (t0 > t1) {
            return std::nullopt;
        }
    }
    return std::make_pair(Point{a.x + t0 * dx, a.y + t0 * dy}, Point{a.x + t1 * dx, a.y + t1 * dy});
}

// Clips a polyline; pieces that leave and re-enter the box become separate
// polylines.
std::vector<std::vector<Point>> clip_polyline(const std::vector<Point> &line, const ClipBox &box)
{
    std::vector<std::vector<Point>> out;
    std::vector<Point> current;
    for (std::size_t i = 0; i + 1 < line.size(); ++i) {
        const auto piece = clip_segment(line[i], line[i + 1], box);
        if (!piece) {
            if (!current.empty()) {
                out.push_back(std::move(current));
                current.clear();
            }
            continue;
        }
        if (current.empty() || !(current.back() == piece->first)) {
            if (!current.empty()) {
                out.push_back(std::move(current));
                current.clear();
            }
            current.push_back(piece->first);
        }
        if (!(piece->second == current.back())) {
            current.push_back(piece->second);
        }
    }
    if (!current.empty()) {
        out.push_back(std::move(current));
    }
    return out;
}

} // namespace

Rational k1_inverse(const OperatorShape &shape)
{
    Rational best = 0;
    for (const auto &t : shape.terms) {
        const long q = t.q(shape.M);
        if (q < 1) {
            throw ValidationError("k1_inverse needs ord_t - j + M >= 1 for every term");
        }
        const Rational num =
            shape.s0 * (Rational(static_cast<long>(t.j)) - Rational(static_cast<long>(shape.M))) + dot(shape.s, t.alpha);
        best = std::max(best, Rational(num / q));
    }
    return best;
}

NewtonPolygon build_polygon(const OperatorShape &shape)
{
    NewtonPolygon np;
    const Rational M(static_cast<long>(shape.M));
    np.principal = {shape.s0 * M, -M};
    np.support_points.push_back({np.principal, std::nullopt});
    for (std::size_t i = 0; i < shape.terms.size(); ++i) {
        const auto &t = shape.terms[i];
        const Rational j(static_cast<long>(t.j));
        np.support_points.push_back(
            {{shape.s0 * j + dot(shape.s, t.alpha), Rational(static_cast<long>(t.ord_t)) - j}, i});
    }

    // Dominance filter: a point survives unless another lies weakly to its
    // right and weakly below it.
    std::vector<Point> pts;
    for (const auto &sp : np.support_points) {
        pts.push_back(sp.at);
    }
    std::sort(pts.begin(), pts.end(), [](const Point &a, const Point &b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    for (const auto &p : pts) {
        const bool dominated = std::any_of(pts.begin(), pts.end(), [&](const Point &o) {
            return !(o == p) && o.x >= p.x && o.y <= p.y;
        });
        if (!dominated) {
            np.pareto_vertices.push_back(p);
        }
    }

    // Lower convex chain of the staircase, collinear points dropped.
    for (const auto &p : np.pareto_vertices) {
        while (np.vertices.size() >= 2 && cross(np.vertices[np.vertices.size() - 2], np.vertices.back(), p) <= 0) {
            np.vertices.pop_back();
        }
        np.vertices.push_back(p);
    }
    for (std::size_t i = 0; i + 1 < np.vertices.size(); ++i) {
        const auto &a = np.vertices[i];
        const auto &b = np.vertices[i + 1];
        np.segments.push_back({a, b, (b.y - a.y) / (b.x - a.x)});
    }

    bool well_posed = true;
    for (const auto &t : shape.terms) {
        well_posed = well_posed && t.q(shape.M) >= 1;
    }
    if (well_posed) {
        np.k1_inverse = k1_inverse(shape);
        if (np.k1_inverse > 0) {
            for (std::size_t i = 0; i < shape.terms.size(); ++i) {
                const auto &t = shape.terms[i];
                const Rational num = shape.s0 * (Rational(static_cast<long>(t.j)) - M) + dot(shape.s, t.alpha);
                if (num / t.q(shape.M) == np.k1_inverse) {
                    np.k1_terms.push_back(i);
                }
            }
        }
    } else if (!np.segments.empty() && np.vertices.front() == np.principal) {
        // Outside assumption (c) the formula does not apply; fall back to the
        // first boundary slope when the chain starts at the principal point.
        np.k1_inverse = 1 / np.segments.front().slope;
    }
    return np;
}

ClipBox default_clip(const NewtonPolygon &np)
{
    ClipBox box{np.principal.x, np.principal.y, np.principal.x, np.principal.y};
    for (const auto &sp : np.support_points) {
        box.x0 = std::min(box.x0, sp.at.x);
        box.x1 = std::max(box.x1, sp.at.x);
        box.y0 = std::min(box.y0, sp.at.y);
        box.y1 = std::max(box.y1, sp.at.y);
    }
    box.x0 -= 1;
    box.y0 -= 1;
    box.x1 += 1;
    box.y1 += 1;
    return box;
}

PolygonGeometry export_geometry(const NewtonPolygon &np, const ClipBox &clip)
{
    if (clip.x0 >= clip.x1 || clip.y0 >= clip.y1) {
        throw ParameterError("degenerate clip box");
    }
    for (const auto &v : np.vertices) {
        if (!inside(clip, v)) {
            throw ParameterError("clip box does not contain polygon vertex (" + rational_to_string(v.x) + ", "
                                 + rational_to_string(v.y) + ")");
        }
    }
    PolygonGeometry g;
    g.clip = clip;
    g.vertices = np.vertices;
    g.segments = np.segments;

    const Point &first = np.vertices.front();
    const Point &last = np.vertices.back();
    g.boundary.push_back({clip.x0, first.y});
    if (!(g.boundary.back() == first)) {
        g.boundary.push_back(first);
    }
    for (std::size_t i = 1; i < np.vertices.size(); ++i) {
        g.boundary.push_back(np.vertices[i]);
    }
    if (last.y != clip.y1) {
        g.boundary.push_back({last.x, clip.y1});
    }

    g.region = g.boundary;
    if (!(g.region.back() == Point{clip.x0, clip.y1})) {
        g.region.push_back({clip.x0, clip.y1});
    }

    for (const auto &sp : np.support_points) {
        const std::vector<Point> outline{{clip.x0, sp.at.y}, sp.at, {sp.at.x, clip.y1}};
        for (auto &piece : clip_polyline(outline, clip)) {
            if (piece.size() >= 2) {
                g.quadrants.push_back(std::move(piece));
            }
        }
    }
    return g;
}

} // namespace gevrey
