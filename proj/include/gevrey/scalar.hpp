#ifndef GEVREY_SCALAR_HPP
#define GEVREY_SCALAR_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "gevrey/errors.hpp"

namespace gevrey
{

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using BigFloat = boost::multiprecision::mpfr_float;

inline constexpr unsigned kDefaultPrecisionBits = 256;

// Scalar backends. Rational is exact; BigFloat carries the mantissa width
// set by the innermost PrecisionScope.
template <typename T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

template <typename T>
concept Scalar = std::is_same_v<T, Rational> || std::is_same_v<T, BigFloat>;

enum class Backend { rational, bigfloat };

std::string_view backend_name(Backend b);
Backend backend_from_name(std::string_view name);

template <Scalar T>
constexpr Backend backend_of()
{
    return is_exact_v<T> ? Backend::rational : Backend::bigfloat;
}

// Sets the working precision of newly created BigFloat values and restores
// the previous one on exit.
class PrecisionScope
{
public:
    explicit PrecisionScope(unsigned bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope &) = delete;
    PrecisionScope &operator=(const PrecisionScope &) = delete;

    static unsigned current_bits();

private:
    unsigned saved_digits10_;
    unsigned saved_bits_;
};

unsigned bits_to_digits10(unsigned bits);

// Parses "p", "p/q", "-p/q" and plain decimals ("0.25", "-1.5e-3") into an
// exact rational.
Rational parse_rational(std::string_view text);

std::string rational_to_string(const Rational &q);

bool is_integer(const Rational &q);

// Conversion helpers shared by the templated modules.
template <Scalar T>
T from_rational(const Rational &q)
{
    if constexpr (is_exact_v<T>) {
        return q;
    } else {
        return BigFloat(q);
    }
}

template <Scalar T>
T from_integer(const Integer &z)
{
    if constexpr (is_exact_v<T>) {
        return Rational(z);
    } else {
        return BigFloat(z);
    }
}

template <Scalar T>
T from_int(std::int64_t v)
{
    return T(v);
}

template <Scalar T>
T abs_value(const T &x)
{
    return x < 0 ? T(-x) : x;
}

template <Scalar T>
BigFloat to_bigfloat(const T &x)
{
    return BigFloat(x);
}

template <Scalar T>
double to_double(const T &x)
{
    if constexpr (is_exact_v<T>) {
        return BigFloat(x).template convert_to<double>();
    } else {
        return x.template convert_to<double>();
    }
}

// Natural log of a positive scalar, evaluated in BigFloat.
template <Scalar T>
BigFloat log_of(const T &x)
{
    return boost::multiprecision::log(BigFloat(x));
}

std::string bigfloat_to_string(const BigFloat &x);

template <Scalar T>
std::string to_string(const T &x)
{
    if constexpr (is_exact_v<T>) {
        return rational_to_string(x);
    } else {
        return bigfloat_to_string(x);
    }
}

// x^e for a rational exponent. Exact when e is an integer; a non-integer
// exponent needs the BigFloat backend.
template <Scalar T>
T pow_rational(const T &base, const Rational &e)
{
    if (is_integer(e)) {
        const Integer num = boost::multiprecision::numerator(e);
        if (abs(num) > Integer(1u << 20)) {
            throw ParameterError("exponent too large: " + rational_to_string(e));
        }
        const long k = num.convert_to<long>();
        T acc(1);
        T b = k < 0 ? T(T(1) / base) : base;
        for (unsigned long m = static_cast<unsigned long>(k < 0 ? -k : k); m != 0; m >>= 1) {
            if (m & 1u) {
                acc *= b;
            }
            if (m > 1) {
                b *= b;
            }
        }
        return acc;
    }
    if constexpr (is_exact_v<T>) {
        throw BackendError("non-integer exponent " + rational_to_string(e) + " needs the bigfloat backend");
    } else {
        return boost::multiprecision::pow(base, BigFloat(e));
    }
}

template <Scalar T>
void require_finite(const T &x, std::string_view what)
{
    if constexpr (!is_exact_v<T>) {
        if (!boost::multiprecision::isfinite(x)) {
            throw PrecisionError(std::string(what) + " is not finite; increase --precision");
        }
    }
}

Integer factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);

} // namespace gevrey

#endif
