#include <doctest.h>

#include <random>

#include "gevrey/polygon.hpp"

using namespace gevrey;

namespace
{

OperatorShape heat_shape()
{
    return {1, Rational(1), {Rational(1)}, {{0, MultiIndex{2}, 0}}};
}

Point pt(Rational x, Rational y)
{
    return {std::move(x), std::move(y)};
}

} // namespace

TEST_CASE("heat polygon")
{
    const auto np = build_polygon(heat_shape());
    CHECK(np.principal == pt(1, -1));
    REQUIRE(np.support_points.size() == 2);
    CHECK(np.support_points[1].at == pt(2, 0));
    CHECK(np.vertices == std::vector<Point>{pt(1, -1), pt(2, 0)});
    REQUIRE(np.segments.size() == 1);
    CHECK(np.segments[0].slope == 1);
    CHECK(np.k1_inverse == 1);
    CHECK(np.k1_terms == std::vector<std::size_t>{0});
}

TEST_CASE("zero-order term adds no positive slope")
{
    const OperatorShape s{1, Rational(1), {Rational(1)}, {{0, MultiIndex{0}, 0}}};
    const auto np = build_polygon(s);
    CHECK(np.support_points[1].at == pt(0, 0));
    CHECK(np.vertices == std::vector<Point>{pt(1, -1)});
    CHECK(np.segments.empty());
    CHECK(np.k1_inverse == 0);
    CHECK(np.k1_terms.empty());
}

TEST_CASE("empty operator set is a single quadrant")
{
    const OperatorShape s{2, Rational(3, 2), {Rational(1), Rational(2)}, {}};
    const auto np = build_polygon(s);
    CHECK(np.vertices == std::vector<Point>{pt(3, -2)});
    CHECK(np.k1_inverse == 0);
}

TEST_CASE("k1 formula examples")
{
    CHECK(k1_inverse(heat_shape()) == 1);
    CHECK(k1_inverse({1, Rational(1), {Rational(1)}, {{0, MultiIndex{2}, 1}}}) == Rational(1, 2));
    CHECK(k1_inverse({1, Rational(1, 2), {Rational(1)}, {{0, MultiIndex{1}, 0}}}) == Rational(1, 2));
    CHECK_THROWS_AS(k1_inverse({1, Rational(1), {Rational(1)}, {{3, MultiIndex{0}, 0}}}), ValidationError);
}

TEST_CASE("ties are reported as several terms")
{
    // (-1 + 2)/1 and (-1 + 4)/3 are not equal; (-1+3)/2 = 1 ties with heat.
    const OperatorShape s{1, Rational(1), {Rational(1)}, {{0, MultiIndex{2}, 0}, {0, MultiIndex{3}, 1}}};
    const auto np = build_polygon(s);
    CHECK(np.k1_inverse == 1);
    CHECK(np.k1_terms == std::vector<std::size_t>{0, 1});
    // Collinear middle point dropped from the chain.
    CHECK(np.vertices == std::vector<Point>{pt(1, -1), pt(3, 1)});
}

TEST_CASE("geometry export")
{
    const auto np = build_polygon(heat_shape());
    const auto g = export_geometry(np, {Rational(-1), Rational(-2), Rational(3), Rational(1)});
    CHECK(g.vertices.size() == 2);
    REQUIRE(g.segments.size() == 1);
    CHECK(g.segments[0].slope == 1);
    CHECK(g.boundary == std::vector<Point>{pt(-1, -1), pt(1, -1), pt(2, 0), pt(2, 1)});
    CHECK(g.region == std::vector<Point>{pt(-1, -1), pt(1, -1), pt(2, 0), pt(2, 1), pt(-1, 1)});
    REQUIRE(g.quadrants.size() == 2);
    CHECK(g.quadrants[0] == std::vector<Point>{pt(-1, -1), pt(1, -1), pt(1, 1)});
    CHECK(g.quadrants[1] == std::vector<Point>{pt(-1, 0), pt(2, 0), pt(2, 1)});

    const OperatorShape single{1, Rational(1), {Rational(1)}, {}};
    const auto sq = export_geometry(build_polygon(single), {Rational(0), Rational(-3), Rational(4), Rational(2)});
    CHECK(sq.boundary == std::vector<Point>{pt(0, -1), pt(1, -1), pt(1, 2)});

    CHECK_THROWS_AS(export_geometry(build_polygon(single), {Rational(2), Rational(0), Rational(4), Rational(2)}),
                    ParameterError);
    CHECK_THROWS_AS(export_geometry(np, {Rational(0), Rational(0), Rational(0), Rational(2)}), ParameterError);

    const auto box = default_clip(np);
    CHECK(box.x0 == 0);
    CHECK(box.y0 == -2);
    CHECK(box.x1 == 3);
    CHECK(box.y1 == 1);
}

TEST_CASE("first boundary slope agrees with the max formula on random operators")
{
    std::mt19937_64 rng(31);
    const Rational orders[] = {Rational(1, 2), Rational(1), Rational(3, 2), Rational(2)};
    for (int it = 0; it < 500; ++it) {
        const std::size_t M = 1 + rng() % 3;
        const std::size_t nv = 1 + rng() % 2;
        OperatorShape s{M, orders[rng() % 4], {}, {}};
        for (std::size_t i = 0; i < nv; ++i) {
            s.s.push_back(orders[1 + rng() % 3]);
        }
        const std::size_t nt = rng() % 4;
        for (std::size_t k = 0; k < nt; ++k) {
            const std::size_t j = rng() % (M + 1);
            MultiIndex a(nv);
            for (std::size_t i = 0; i < nv; ++i) {
                a[i] = static_cast<std::uint32_t>(rng() % 4);
            }
            const std::size_t lo = j + 1 > M ? j + 1 - M : 0;
            s.terms.push_back({j, a, lo + rng() % 3});
        }
        const auto np = build_polygon(s);
        const Rational k = k1_inverse(s);
        REQUIRE(np.k1_inverse == k);
        REQUIRE(np.vertices.front() == np.principal);
        if (k > 0) {
            REQUIRE(!np.segments.empty());
            const Point &v = np.segments.front().end;
            REQUIRE((v.x - np.principal.x) / (v.y + Rational(static_cast<long>(M))) == k);
        } else {
            REQUIRE(np.segments.empty());
        }
        // Brute force: 1/k1 is the largest ratio over all support points.
        Rational best = 0;
        for (const auto &sp : np.support_points) {
            if (sp.at.y > np.principal.y) {
                best = std::max(best, Rational((sp.at.x - np.principal.x) / (sp.at.y - np.principal.y)));
            }
        }
        REQUIRE(best == k);
        for (std::size_t i = 0; i + 1 < np.vertices.size(); ++i) {
            REQUIRE(np.vertices[i].x < np.vertices[i + 1].x);
            REQUIRE(np.vertices[i].y < np.vertices[i + 1].y);
        }

        // Raising a valuation never increases 1/k1.
        if (!s.terms.empty()) {
            auto raised = s;
            raised.terms[rng() % raised.terms.size()].ord_t += 1;
            REQUIRE(k1_inverse(raised) <= k);
        }
    }
}
