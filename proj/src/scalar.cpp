#include "gevrey/scalar.hpp"

#include <algorithm>
#include <cctype>

namespace gevrey
{

std::string_view backend_name(Backend b)
{
    return b == Backend::rational ? "rational" : "bigfloat";
}

Backend backend_from_name(std::string_view name)
{
    if (name == "rational") {
        return Backend::rational;
    }
    if (name == "bigfloat") {
        return Backend::bigfloat;
    }
    throw ParameterError("unknown backend '" + std::string(name) + "' (expected rational or bigfloat)");
}

unsigned bits_to_digits10(unsigned bits)
{
    // ceil(bits * log10(2))
    return static_cast<unsigned>((static_cast<unsigned long long>(bits) * 30103ull + 99999ull) / 100000ull);
}

namespace
{
// Bits requested by the innermost active scope; 0 outside any scope.
unsigned g_scope_bits = 0;
} // namespace

PrecisionScope::PrecisionScope(unsigned bits)
    : saved_digits10_(BigFloat::default_precision()), saved_bits_(g_scope_bits)
{
    if (bits < 16) {
        throw ParameterError("precision must be at least 16 bits");
    }
    BigFloat::default_precision(bits_to_digits10(bits));
    g_scope_bits = bits;
}

PrecisionScope::~PrecisionScope()
{
    BigFloat::default_precision(saved_digits10_);
    g_scope_bits = saved_bits_;
}

unsigned PrecisionScope::current_bits()
{
    if (g_scope_bits != 0) {
        return g_scope_bits;
    }
    return static_cast<unsigned>(static_cast<unsigned long long>(BigFloat::default_precision()) * 100000ull / 30103ull);
}

namespace
{

bool all_digits(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

Integer parse_integer(std::string_view s, std::string_view whole)
{
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) {
        throw ParameterError("malformed number '" + std::string(whole) + "'");
    }
    // A leading zero would make the Integer constructor read octal.
    s.remove_prefix(std::min(s.find_first_not_of('0'), s.size() - 1));
    Integer z{std::string(s)};
    return neg ? Integer(-z) : z;
}

Rational parse_decimal(std::string_view s, std::string_view whole)
{
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    long exponent = 0;
    if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        const Integer ez = parse_integer(s.substr(e + 1), whole);
        if (abs(ez) > 10000) {
            throw ParameterError("exponent out of range in '" + std::string(whole) + "'");
        }
        exponent = ez.convert_to<long>();
        s = s.substr(0, e);
    }
    std::string digits;
    if (const auto dot = s.find('.'); dot != std::string_view::npos) {
        const auto intpart = s.substr(0, dot);
        const auto frac = s.substr(dot + 1);
        if ((intpart.empty() && frac.empty()) || (!intpart.empty() && !all_digits(intpart))
            || (!frac.empty() && !all_digits(frac))) {
            throw ParameterError("malformed number '" + std::string(whole) + "'");
        }
        digits = std::string(intpart) + std::string(frac);
        exponent -= static_cast<long>(frac.size());
    } else {
        if (!all_digits(s)) {
            throw ParameterError("malformed number '" + std::string(whole) + "'");
        }
        digits = std::string(s);
    }
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
    Rational q{Integer(digits)};
    Integer ten_pow = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
    if (exponent < 0) {
        q /= Rational(ten_pow);
    } else {
        q *= Rational(ten_pow);
    }
    return neg ? Rational(-q) : q;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    auto first = text.find_first_not_of(" \t");
    auto last = text.find_last_not_of(" \t");
    if (first == std::string_view::npos) {
        throw ParameterError("empty number");
    }
    const auto s = text.substr(first, last - first + 1);
    if (const auto slash = s.find('/'); slash != std::string_view::npos) {
        const Integer num = parse_integer(s.substr(0, slash), text);
        const Integer den = parse_integer(s.substr(slash + 1), text);
        if (den == 0) {
            throw ParameterError("zero denominator in '" + std::string(text) + "'");
        }
        return Rational(num, den);
    }
    if (s.find_first_of(".eE") != std::string_view::npos) {
        return parse_decimal(s, text);
    }
    return Rational(parse_integer(s, text));
}

std::string rational_to_string(const Rational &q)
{
    const Integer &den = boost::multiprecision::denominator(q);
    if (den == 1) {
        return boost::multiprecision::numerator(q).str();
    }
    return boost::multiprecision::numerator(q).str() + "/" + den.str();
}

bool is_integer(const Rational &q)
{
    return boost::multiprecision::denominator(q) == 1;
}

std::string bigfloat_to_string(const BigFloat &x)
{
    if (x == 0) {
        return "0";
    }
    return x.str(static_cast<std::streamsize>(BigFloat::default_precision()), std::ios_base::scientific);
}

Integer factorial(unsigned n)
{
    Integer f = 1;
    for (unsigned k = 2; k <= n; ++k) {
        f *= k;
    }
    return f;
}

Integer binomial(unsigned n, unsigned k)
{
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    Integer c = 1;
    for (unsigned i = 1; i <= k; ++i) {
        c *= n - k + i;
        c /= i;
    }
    return c;
}

} // namespace gevrey
