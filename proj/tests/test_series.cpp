#include <doctest.h>

#include <random>

#include "gevrey/series.hpp"
#include "oracles.hpp"

using namespace gevrey;

namespace
{

using P = PolySeries<Rational>;

P poly1(std::initializer_list<std::pair<unsigned, Rational>> terms)
{
    P f(1);
    for (const auto &[e, c] : terms) {
        f.add_to(MultiIndex{e}, c);
    }
    return f;
}

P random_poly(std::mt19937_64 &rng, std::size_t nv, unsigned deg, unsigned terms)
{
    P f(nv);
    for (unsigned k = 0; k < terms; ++k) {
        MultiIndex g(nv);
        for (std::size_t i = 0; i < nv; ++i) {
            g[i] = static_cast<std::uint32_t>(rng() % (deg + 1));
        }
        f.add_to(g, Rational(static_cast<long>(rng() % 21) - 10, static_cast<long>(1 + rng() % 4)));
    }
    return f;
}

const MomentSequence fp1 = MomentSequence::factorial_power(Rational(1));

} // namespace

TEST_CASE("add and scale")
{
    CHECK(poly1({{0, 1}, {1, 1}}) + poly1({{1, 2}}) == poly1({{0, 1}, {1, 3}}));
    CHECK(poly1({{2, 1}}) * Rational(-1) == poly1({{2, -1}}));
    const auto sum = poly1({{0, 5}}) + poly1({{3, 7}});
    CHECK(sum.size() == 2);
    CHECK(sum.coeff(MultiIndex{0}) == 5);
    CHECK(sum.coeff(MultiIndex{3}) == 7);
    CHECK((poly1({{1, 1}}) - poly1({{1, 1}})).is_zero());
}

TEST_CASE("multiply")
{
    CHECK(poly1({{0, 1}, {1, 1}}) * poly1({{0, 1}, {1, -1}}) == poly1({{0, 1}, {2, -1}}));

    const auto geo = geometric_series<Rational>(1, Rational(1), {10});
    const auto shifted = geo * poly1({{1, 1}});
    CHECK(shifted.valid_degree() == std::vector<Degree>{10});
    CHECK(shifted.size() == 10);
    CHECK(shifted.coeff(MultiIndex{0}) == 0);
    for (unsigned k = 1; k <= 10; ++k) {
        CHECK(shifted.coeff(MultiIndex{k}) == 1);
    }

    const auto zero = geo * Rational(0);
    CHECK(zero.is_zero());
    CHECK(zero.valid_degree() == std::vector<Degree>{10});
    CHECK((geo * P(1)).valid_degree() == std::vector<Degree>{10});
}

TEST_CASE("validity region")
{
    P f(2, {3, kUnbounded});
    f.set(MultiIndex{3, 9}, Rational(1));
    CHECK_THROWS_AS(f.set(MultiIndex{4, 0}, Rational(1)), TruncationError);
    CHECK(!f.exact());
    CHECK(P(2).exact());

    // Equality only looks at the common region.
    P g(2, {2, kUnbounded});
    CHECK(f == g);
    CHECK(!f.identical(g));
    CHECK_THROWS_AS(f + P(3), DimensionError);
}

TEST_CASE("moment derivative examples")
{
    CHECK(moment_derive_z(poly1({{3, 1}}), 0, fp1) == poly1({{2, 3}}));
    CHECK(moment_derive_z(poly1({{3, 1}}), 0, MomentSequence::q_factorial(Rational(1, 2))) == poly1({{2, Rational(7, 4)}}));
    CHECK(moment_derive_z(poly1({{0, 5}}), 0, fp1).is_zero());

    const auto geo = geometric_series<Rational>(2, Rational(1), {6, 4});
    const auto d = moment_derive_z(geo, 1, fp1);
    CHECK(d.valid_degree() == std::vector<Degree>{6, 3});
    CHECK(moment_derive_z(P(1), 0, fp1).valid_degree() == std::vector<Degree>{kUnbounded});

    const std::vector<MomentTable<Rational>> tables{MomentTable<Rational>(fp1), MomentTable<Rational>(fp1)};
    const auto dd = moment_derive(geo, MultiIndex{2, 1}, tables);
    CHECK(dd.valid_degree() == std::vector<Degree>{4, 3});
    // d^2/dz1^2 d/dz2 of 1/((1-z1)(1-z2)) at 0: 2! * 1!.
    CHECK(dd.coeff(MultiIndex{0, 0}) == 2);
}

TEST_CASE("ell1 norm")
{
    CHECK(ell1_norm(poly1({{0, 2}, {1, 3}}), Rational(1, 2)) == Rational(7, 2));
    CHECK(ell1_norm(poly1({{0, 1}}), Rational(17, 3)) == 1);
    CHECK(ell1_norm(P::monomial(MultiIndex{1, 1}, Rational(1)), Rational(2)) == 4);
    CHECK_THROWS_AS(ell1_norm(poly1({{0, 1}}), Rational(0)), ParameterError);
}

TEST_CASE("ring axioms on random sparse polynomials")
{
    std::mt19937_64 rng(11);
    for (int it = 0; it < 200; ++it) {
        const std::size_t nv = 1 + rng() % 3;
        const auto a = random_poly(rng, nv, 4, 5);
        const auto b = random_poly(rng, nv, 4, 5);
        const auto c = random_poly(rng, nv, 4, 5);
        REQUIRE((a * b).identical(b * a));
        REQUIRE(((a * b) * c).identical(a * (b * c)));
        REQUIRE((a * (b + c)).identical(a * b + a * c));
        REQUIRE((a + b).identical(b + a));
    }
}

TEST_CASE("moment derivative is linear and matches the classical derivative for n!")
{
    std::mt19937_64 rng(12);
    const auto qseq = MomentSequence::q_factorial(Rational(2, 3));
    for (int it = 0; it < 200; ++it) {
        const std::size_t nv = 1 + rng() % 3;
        const std::size_t axis = rng() % nv;
        const auto f = random_poly(rng, nv, 5, 6);
        const auto g = random_poly(rng, nv, 5, 6);
        const Rational c(static_cast<long>(rng() % 9) - 4, 3);
        REQUIRE(moment_derive_z(f + g, axis, qseq).identical(moment_derive_z(f, axis, qseq) + moment_derive_z(g, axis, qseq)));
        REQUIRE(moment_derive_z(f * c, axis, qseq).identical(moment_derive_z(f, axis, qseq) * c));

        P classical(nv);
        for (const auto &[gamma, v] : f.terms()) {
            if (gamma[axis] == 0) {
                continue;
            }
            MultiIndex lower = gamma;
            lower[axis] -= 1;
            classical.add_to(lower, v * Rational(static_cast<long>(gamma[axis])));
        }
        REQUIRE(moment_derive_z(f, axis, fp1).identical(classical));
    }
}

TEST_CASE("ell1 norm is monotone in r and absolutely homogeneous")
{
    std::mt19937_64 rng(13);
    for (int it = 0; it < 100; ++it) {
        const std::size_t nv = 1 + rng() % 3;
        const auto f = random_poly(rng, nv, 6, 6);
        const Rational r1(static_cast<long>(1 + rng() % 8), 4);
        const Rational r2 = r1 + Rational(static_cast<long>(1 + rng() % 4), 3);
        REQUIRE(ell1_norm(f, r1) <= ell1_norm(f, r2));
        const Rational c(static_cast<long>(rng() % 11) - 5, 2);
        REQUIRE(ell1_norm(f * c, r1) == abs(c) * ell1_norm(f, r1));
    }
}

TEST_CASE("generators")
{
    const auto e = exp_series<Rational>(2, Rational(2), {3, 2});
    CHECK(e.valid_degree() == std::vector<Degree>{3, 2});
    CHECK(e.size() == 12);
    CHECK(e.coeff(MultiIndex{3, 2}) == Rational(32, 12));
    const auto g = geometric_series<Rational>(1, Rational(1, 3), {4});
    CHECK(g.coeff(MultiIndex{4}) == Rational(1, 81));

    std::vector<MultiIndex> seen;
    for_each_index({1, 2}, [&](const MultiIndex &m) { seen.push_back(m); });
    CHECK(seen.size() == 6);
    CHECK(seen.front() == MultiIndex{0, 0});
    CHECK(seen.back() == MultiIndex{1, 2});
    CHECK(std::is_sorted(seen.begin(), seen.end()));
}

TEST_CASE("time series truncation")
{
    TimeSeries<Rational> u(1, 3);
    u.push_back(poly1({{0, 1}}));
    CHECK(u.at(2).is_zero());
    CHECK_THROWS_AS(u.at(4), TruncationError);
    CHECK(u.valuation() == std::optional<std::size_t>(0));
    CHECK(TimeSeries<Rational>::polynomial(1, {}).covers(1000));
    CHECK(!TimeSeries<Rational>(1, 2).valuation());
}
