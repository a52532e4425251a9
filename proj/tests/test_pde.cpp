#include <doctest.h>

#include <random>

#include "builders.hpp"
#include "gevrey/pde.hpp"
#include "oracles.hpp"

using namespace gevrey;

namespace
{

using P = PolySeries<Rational>;
using TS = TimeSeries<Rational>;

OperatorShape shape_of(std::size_t M, Rational s0, std::vector<Rational> s, std::vector<TermShape> terms)
{
    return {M, std::move(s0), std::move(s), std::move(terms)};
}

} // namespace

TEST_CASE("valuation in t")
{
    P one_plus_z(1);
    one_plus_z.add_to(MultiIndex{0}, Rational(1));
    one_plus_z.add_to(MultiIndex{1}, Rational(1));
    CHECK(ord_t(TS::polynomial(1, {P(1), one_plus_z})) == 1);
    CHECK(ord_t(build::t_monomial<Rational>(1, 0, Rational(-1))) == 0);
    CHECK_THROWS_AS(ord_t(TS::polynomial(1, {P(1)})), ValidationError);
}

TEST_CASE("validation of operators")
{
    const auto heat = build::heat_geometric<Rational>(10, 30);
    const auto rep = validate(heat);
    CHECK(rep.passed());
    CHECK(heat.pde.shape().terms[0].q(1) == 1);
    CHECK(rep.warnings.empty());

    const auto bad_c = validate_shape(shape_of(1, Rational(1), {Rational(1)}, {{2, MultiIndex{0}, 0}}));
    CHECK(!bad_c.find("(c) ord_t(a) >= max(0, j-M+1)")->passed);
    CHECK(!bad_c.passed());
    CHECK(!bad_c.analysis_only());

    const auto bad_a = validate_shape(shape_of(1, Rational(1), {Rational(1, 2)}, {{0, MultiIndex{2}, 0}}));
    CHECK(!bad_a.find("(a) s in [1,inf)^N")->passed);
    CHECK(bad_a.analysis_only());

    const auto q = build::q_difference(5);
    CHECK(validate(q).passed());
    CHECK(validate(q).warnings.size() == 1);
}

TEST_CASE("backend and truncation checks")
{
    auto p = build::heat_geometric<Rational>(10, 30);
    p.pde.m0 = MomentSequence::gamma(Rational(1, 2));
    CHECK(!validate(p).find("backend")->passed);

    auto t = build::heat_geometric<Rational>(10, 30);
    t.pde.terms[0].coeff = TS(1, 5);
    t.pde.terms[0].coeff.push_back(P::constant(1, Rational(-1)));
    CHECK(!validate(t).find("truncation")->passed);

    auto d = build::heat_geometric<Rational>(10, 30);
    d.initial.clear();
    CHECK_THROWS_AS(validate(d), DimensionError);
}

TEST_CASE("apply: z^2 + 2t solves the heat equation")
{
    const auto pde = build::heat_geometric<Rational>(4, 10).pde;
    P u0(1);
    u0.set(MultiIndex{2}, Rational(1));
    const TS u(std::vector<P>{u0, P::constant(1, Rational(2))}, 6);
    const auto Pu = apply(pde, u);
    CHECK(Pu.t_order() == 5);
    for (std::size_t n = 0; n <= 5; ++n) {
        CHECK(Pu.at(n).is_zero());
    }
}

TEST_CASE("apply: d_t on the exponential and the identity term")
{
    MomentPDE<Rational> dt;
    dt.M = 1;
    dt.m = {MomentSequence::factorial_power(Rational(1))};
    std::vector<P> e;
    for (unsigned n = 0; n <= 8; ++n) {
        e.push_back(P::constant(1, Rational(1) / Rational(oracle::fact(n))));
    }
    const TS u(e, 8);
    const auto du = apply(dt, u);
    CHECK(du.t_order() == 7);
    for (std::size_t n = 0; n <= 7; ++n) {
        CHECK(du.at(n) == u.at(n));
    }

    MomentPDE<Rational> id = dt;
    id.terms.push_back({0, MultiIndex{0}, build::t_monomial<Rational>(1, 0, Rational(1))});
    const auto idu = apply(id, u);
    for (std::size_t n = 0; n <= 7; ++n) {
        CHECK(idu.at(n) == du.at(n) + u.at(n));
    }
    CHECK_THROWS_AS(apply(dt, TS::polynomial(1, e)), TruncationError);
}

TEST_CASE("apply is linear")
{
    std::mt19937_64 rng(21);
    auto pde = build::heat_geometric<Rational>(6, 20).pde;
    pde.terms.push_back({1, MultiIndex{1}, build::t_monomial<Rational>(1, 1, Rational(3, 2))});
    pde.M = 2;
    for (int it = 0; it < 30; ++it) {
        std::vector<P> a;
        std::vector<P> b;
        for (int n = 0; n <= 6; ++n) {
            P fa(1);
            P fb(1);
            for (int k = 0; k < 4; ++k) {
                fa.add_to(MultiIndex{static_cast<std::uint32_t>(rng() % 6)}, Rational(static_cast<long>(rng() % 7) - 3));
                fb.add_to(MultiIndex{static_cast<std::uint32_t>(rng() % 6)}, Rational(static_cast<long>(rng() % 7) - 3));
            }
            a.push_back(fa);
            b.push_back(fb);
        }
        const Rational c(static_cast<long>(rng() % 5) - 2, 3);
        std::vector<P> comb;
        for (int n = 0; n <= 6; ++n) {
            comb.push_back(a[static_cast<std::size_t>(n)] + b[static_cast<std::size_t>(n)] * c);
        }
        const auto lhs = apply(pde, TS(comb, 6));
        const auto pa = apply(pde, TS(a, 6));
        const auto pb = apply(pde, TS(b, 6));
        for (std::size_t n = 0; n <= 4; ++n) {
            REQUIRE(lhs.at(n).identical(pa.at(n) + pb.at(n) * c));
        }
    }
}
