// Independent reference computations used to produce and re-check the
// frozen expectations in the tests. None of them calls into the library
// beyond the scalar types.
#ifndef GEVREY_TESTS_ORACLES_HPP
#define GEVREY_TESTS_ORACLES_HPP

#include <array>
#include <cmath>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "gevrey/scalar.hpp"

namespace oracle
{

using gevrey::BigFloat;
using gevrey::Integer;
using gevrey::Rational;

inline Integer fact(unsigned n)
{
    Integer r = 1;
    for (unsigned k = 2; k <= n; ++k) {
        r *= k;
    }
    return r;
}

// (2n)! / n! as the product (n+1)(n+2)...(2n).
inline Integer heat_at_zero(unsigned n)
{
    Integer r = 1;
    for (unsigned k = n + 1; k <= 2 * n; ++k) {
        r *= k;
    }
    return r;
}

// [n]_q! with [k]_q = 1 + q + ... + q^{k-1}.
inline Rational q_fact(const Rational &q, unsigned n)
{
    Rational r = 1;
    for (unsigned k = 1; k <= n; ++k) {
        Rational bracket = 0;
        Rational pw = 1;
        for (unsigned i = 0; i < k; ++i) {
            bracket += pw;
            pw *= q;
        }
        r *= bracket;
    }
    return r;
}

// Gamma(1 + n/2) from factorials and sqrt(pi), without any gamma routine.
inline BigFloat gamma_half_step(unsigned n)
{
    if (n % 2 == 0) {
        return BigFloat(fact(n / 2));
    }
    // Gamma(k + 3/2) = (2k+2)! sqrt(pi) / (4^{k+1} (k+1)!) with n = 2k+1.
    const unsigned k = (n - 1) / 2;
    Integer four = 1;
    for (unsigned i = 0; i <= k; ++i) {
        four *= 4;
    }
    return BigFloat(fact(2 * k + 2)) * boost::multiprecision::sqrt(boost::math::constants::pi<BigFloat>())
           / (BigFloat(four) * BigFloat(fact(k + 1)));
}

// Pascal-triangle binomial, independent of the library's binomial().
inline Integer pascal(unsigned n, unsigned k)
{
    if (k > n) {
        return 0;
    }
    std::vector<Integer> row(n + 1, 0);
    row[0] = 1;
    for (unsigned i = 1; i <= n; ++i) {
        for (unsigned j = i; j >= 1; --j) {
            row[j] += row[j - 1];
        }
    }
    return row[k];
}

// Least squares for y = c0 + c1 n + c2 log n! through the normal equations
// in long double (Cramer's rule). Returns {c0, c1, c2}.
inline std::array<long double, 3> fit(const std::vector<unsigned> &ns, const std::vector<long double> &y)
{
    long double G[3][3] = {};
    long double b[3] = {};
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const long double x[3] = {1.0L, static_cast<long double>(ns[i]), std::lgamma(static_cast<long double>(ns[i]) + 1)};
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) {
                G[r][c] += x[r] * x[c];
            }
            b[r] += x[r] * y[i];
        }
    }
    auto det = [](long double m[3][3]) {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
               + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    const long double d = det(G);
    std::array<long double, 3> out{};
    for (int k = 0; k < 3; ++k) {
        long double m[3][3];
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) {
                m[r][c] = c == k ? b[r] : G[r][c];
            }
        }
        out[k] = det(m) / d;
    }
    return out;
}

} // namespace oracle

#endif
