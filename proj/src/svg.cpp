#include "gevrey/svg.hpp"

#include <sstream>

namespace gevrey
{

namespace
{

// Fixed-point rendering of an exact rational, 3 decimals, round half away.
std::string fixed(const Rational &q)
{
    const Integer scaled = boost::multiprecision::numerator(q) * 1000;
    const Integer den = boost::multiprecision::denominator(q);
    Integer v = (abs(scaled) * 2 + den) / (den * 2);
    const bool neg = scaled < 0 && v != 0;
    const Integer whole = v / 1000;
    const Integer frac = v % 1000;
    std::string f = frac.str();
    f.insert(0, 3 - f.size(), '0');
    while (!f.empty() && f.back() == '0') {
        f.pop_back();
    }
    return (neg ? "-" : "") + whole.str() + (f.empty() ? "" : "." + f);
}

class Canvas
{
public:
    Canvas(const ClipBox &clip, unsigned unit) : clip_(clip), unit_(static_cast<long>(unit)) {}

    std::string x(const Rational &v) const { return fixed((v - clip_.x0) * unit_); }
    std::string y(const Rational &v) const { return fixed((clip_.y1 - v) * unit_); }

    std::string points(const std::vector<Point> &pts) const
    {
        std::string out;
        for (const auto &p : pts) {
            if (!out.empty()) {
                out += ' ';
            }
            out += x(p.x) + "," + y(p.y);
        }
        return out;
    }

    std::string width() const { return fixed((clip_.x1 - clip_.x0) * unit_); }
    std::string height() const { return fixed((clip_.y1 - clip_.y0) * unit_); }

private:
    ClipBox clip_;
    Rational unit_;
};

} // namespace

std::string render_svg(const NewtonPolygon &np, const ClipBox &clip, unsigned unit)
{
    if (unit == 0) {
        throw ParameterError("svg unit must be positive");
    }
    const auto g = export_geometry(np, clip);
    const Canvas c(clip, unit);
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << c.width() << "\" height=\""
       << c.height() << "\" viewBox=\"0 0 " << c.width() << ' ' << c.height() << "\">\n";
    os << "  <rect x=\"0\" y=\"0\" width=\"" << c.width() << "\" height=\"" << c.height()
       << "\" fill=\"white\" stroke=\"none\"/>\n";

    os << "  <g stroke=\"#bbbbbb\" stroke-width=\"1\">\n";
    if (clip.x0 <= 0 && clip.x1 >= 0) {
        os << "    <line x1=\"" << c.x(0) << "\" y1=\"" << c.y(clip.y0) << "\" x2=\"" << c.x(0) << "\" y2=\""
           << c.y(clip.y1) << "\"/>\n";
    }
    if (clip.y0 <= 0 && clip.y1 >= 0) {
        os << "    <line x1=\"" << c.x(clip.x0) << "\" y1=\"" << c.y(0) << "\" x2=\"" << c.x(clip.x1) << "\" y2=\""
           << c.y(0) << "\"/>\n";
    }
    os << "  </g>\n";

    os << "  <polygon points=\"" << c.points(g.region) << "\" fill=\"#dbe8f5\" stroke=\"none\"/>\n";
    os << "  <g fill=\"none\" stroke=\"#7a7a7a\" stroke-width=\"1\" stroke-dasharray=\"4 3\">\n";
    for (const auto &q : g.quadrants) {
        os << "    <polyline points=\"" << c.points(q) << "\"/>\n";
    }
    os << "  </g>\n";
    os << "  <polyline points=\"" << c.points(g.boundary)
       << "\" fill=\"none\" stroke=\"#1f4e8c\" stroke-width=\"2\"/>\n";

    os << "  <g fill=\"#1f4e8c\">\n";
    for (const auto &v : g.vertices) {
        os << "    <circle cx=\"" << c.x(v.x) << "\" cy=\"" << c.y(v.y) << "\" r=\"3\"/>\n";
    }
    os << "  </g>\n";
    os << "  <g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\">\n";
    for (const auto &s : g.segments) {
        const Rational mx = (s.start.x + s.end.x) / 2;
        const Rational my = (s.start.y + s.end.y) / 2;
        os << "    <text x=\"" << c.x(mx) << "\" y=\"" << c.y(my) << "\" dx=\"6\" dy=\"-4\">slope "
           << rational_to_string(s.slope) << "</text>\n";
    }
    os << "    <text x=\"6\" y=\"14\">1/k1 = " << rational_to_string(np.k1_inverse) << "</text>\n";
    os << "  </g>\n";
    os << "</svg>\n";
    return os.str();
}

} // namespace gevrey
