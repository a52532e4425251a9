#include "gevrey/moment_sequence.hpp"

#include <limits>

namespace gevrey
{

std::string_view kind_name(MomentSequence::Kind k)
{
    switch (k) {
        case MomentSequence::Kind::factorial_power:
            return "factorial_power";
        case MomentSequence::Kind::gamma:
            return "gamma";
        case MomentSequence::Kind::q_factorial:
            return "q_factorial";
        case MomentSequence::Kind::product:
            return "product";
        case MomentSequence::Kind::quotient:
            return "quotient";
        case MomentSequence::Kind::table:
            return "table";
    }
    return "unknown";
}

MomentSequence MomentSequence::factorial_power(Rational s)
{
    if (s < 0) {
        throw ParameterError("factorial_power: s must be non-negative");
    }
    return MomentSequence(std::make_shared<Node>(Node{Kind::factorial_power, s, s, {}, nullptr, nullptr}));
}

MomentSequence MomentSequence::gamma(Rational s)
{
    if (s < 0) {
        throw ParameterError("gamma: s must be non-negative");
    }
    return MomentSequence(std::make_shared<Node>(Node{Kind::gamma, s, s, {}, nullptr, nullptr}));
}

MomentSequence MomentSequence::q_factorial(Rational q)
{
    if (q <= 0 || q >= 1) {
        throw ParameterError("q_factorial: q must lie in (0, 1)");
    }
    return MomentSequence(std::make_shared<Node>(Node{Kind::q_factorial, Rational(0), q, {}, nullptr, nullptr}));
}

MomentSequence MomentSequence::product(const MomentSequence &lhs, const MomentSequence &rhs)
{
    return MomentSequence(std::make_shared<Node>(Node{Kind::product, lhs.order() + rhs.order(), Rational(0), {},
                                                      std::make_shared<const MomentSequence>(lhs),
                                                      std::make_shared<const MomentSequence>(rhs)}));
}

MomentSequence MomentSequence::quotient(const MomentSequence &lhs, const MomentSequence &rhs)
{
    if (lhs.order() < rhs.order()) {
        throw ParameterError("quotient: numerator order must be at least the denominator order");
    }
    return MomentSequence(std::make_shared<Node>(Node{Kind::quotient, lhs.order() - rhs.order(), Rational(0), {},
                                                      std::make_shared<const MomentSequence>(lhs),
                                                      std::make_shared<const MomentSequence>(rhs)}));
}

MomentSequence MomentSequence::table(std::vector<Rational> values, Rational declared_order)
{
    if (values.empty() || values.front() != 1) {
        throw ParameterError("table: the first value must be 1");
    }
    for (const auto &v : values) {
        if (v <= 0) {
            throw ParameterError("table: values must be positive");
        }
    }
    if (declared_order < 0) {
        throw ParameterError("table: order must be non-negative");
    }
    return MomentSequence(
        std::make_shared<Node>(Node{Kind::table, declared_order, Rational(0), std::move(values), nullptr, nullptr}));
}

const MomentSequence &MomentSequence::lhs() const
{
    if (!node_->lhs) {
        throw ParameterError("sequence has no operands");
    }
    return *node_->lhs;
}

const MomentSequence &MomentSequence::rhs() const
{
    if (!node_->rhs) {
        throw ParameterError("sequence has no operands");
    }
    return *node_->rhs;
}

bool MomentSequence::rational_valued() const
{
    switch (kind()) {
        case Kind::factorial_power:
        case Kind::gamma:
            return is_integer(parameter());
        case Kind::q_factorial:
        case Kind::table:
            return true;
        case Kind::product:
        case Kind::quotient:
            return lhs().rational_valued() && rhs().rational_valued();
    }
    return false;
}

std::size_t MomentSequence::max_index() const
{
    switch (kind()) {
        case Kind::table:
            return table_values().size() - 1;
        case Kind::product:
        case Kind::quotient:
            return std::min(lhs().max_index(), rhs().max_index());
        default:
            return std::numeric_limits<std::size_t>::max();
    }
}

std::string MomentSequence::describe() const
{
    switch (kind()) {
        case Kind::factorial_power:
            return "n!^" + rational_to_string(parameter());
        case Kind::gamma:
            return "Gamma(1+" + rational_to_string(parameter()) + "n)";
        case Kind::q_factorial:
            return "[n]_q! (q=" + rational_to_string(parameter()) + ")";
        case Kind::product:
            return "(" + lhs().describe() + ")*(" + rhs().describe() + ")";
        case Kind::quotient:
            return "(" + lhs().describe() + ")/(" + rhs().describe() + ")";
        case Kind::table:
            return "table[" + std::to_string(table_values().size()) + "]";
    }
    return "?";
}

bool operator==(const MomentSequence &a, const MomentSequence &b)
{
    if (a.node_ == b.node_) {
        return true;
    }
    if (a.kind() != b.kind() || a.order() != b.order() || a.parameter() != b.parameter()
        || a.table_values() != b.table_values()) {
        return false;
    }
    if (a.kind() == MomentSequence::Kind::product || a.kind() == MomentSequence::Kind::quotient) {
        return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    }
    return true;
}

namespace detail
{

template <Scalar T>
std::vector<T> evaluate_prefix(const MomentSequence &seq, std::size_t n_max)
{
    using Kind = MomentSequence::Kind;
    if (n_max > seq.max_index()) {
        throw RangeError("index " + std::to_string(n_max) + " beyond the end of " + seq.describe());
    }
    std::vector<T> out;
    out.reserve(n_max + 1);
    switch (seq.kind()) {
        case Kind::factorial_power: {
            const Rational &s = seq.parameter();
            if (is_integer(s)) {
                // m(n+1) = m(n) (n+1)^s, exact.
                out.emplace_back(1);
                for (std::size_t n = 1; n <= n_max; ++n) {
                    out.push_back(out.back() * pow_rational<T>(T(static_cast<long>(n)), s));
                }
            } else if constexpr (is_exact_v<T>) {
                throw BackendError("factorial_power with non-integer s needs the bigfloat backend");
            } else {
                // n!^s = exp(s log n!), with n! accumulated exactly.
                const BigFloat sf(s);
                Integer fact = 1;
                out.emplace_back(1);
                for (std::size_t n = 1; n <= n_max; ++n) {
                    fact *= static_cast<unsigned long>(n);
                    out.push_back(boost::multiprecision::exp(sf * boost::multiprecision::log(BigFloat(fact))));
                }
            }
            break;
        }
        case Kind::gamma: {
            const Rational &s = seq.parameter();
            if (is_integer(s)) {
                // Gamma(1 + s n) = (s n)!
                const auto step = numerator(s).convert_to<unsigned long>();
                Integer fact = 1;
                unsigned long k = 0;
                out.emplace_back(1);
                for (std::size_t n = 1; n <= n_max; ++n) {
                    while (k < step * n) {
                        fact *= ++k;
                    }
                    out.push_back(from_integer<T>(fact));
                }
            } else if constexpr (is_exact_v<T>) {
                throw BackendError("gamma with non-integer s needs the bigfloat backend");
            } else {
                const BigFloat sf(s);
                out.emplace_back(1);
                for (std::size_t n = 1; n <= n_max; ++n) {
                    out.push_back(boost::multiprecision::tgamma(1 + sf * static_cast<unsigned long>(n)));
                }
            }
            break;
        }
        case Kind::q_factorial: {
            // [k]_q = (1 - q^k) / (1 - q)
            const T q = from_rational<T>(seq.parameter());
            const T one_minus_q = T(1) - q;
            T qk(1);
            out.emplace_back(1);
            for (std::size_t k = 1; k <= n_max; ++k) {
                qk *= q;
                out.push_back(out.back() * ((T(1) - qk) / one_minus_q));
            }
            break;
        }
        case Kind::product:
        case Kind::quotient: {
            auto a = evaluate_prefix<T>(seq.lhs(), n_max);
            const auto b = evaluate_prefix<T>(seq.rhs(), n_max);
            for (std::size_t n = 0; n <= n_max; ++n) {
                if (seq.kind() == Kind::product) {
                    a[n] *= b[n];
                } else {
                    a[n] /= b[n];
                }
            }
            out = std::move(a);
            break;
        }
        case Kind::table:
            for (std::size_t n = 0; n <= n_max; ++n) {
                out.push_back(from_rational<T>(seq.table_values()[n]));
            }
            break;
    }
    for (const auto &v : out) {
        require_finite(v, "moment value of " + seq.describe());
    }
    return out;
}

template std::vector<Rational> evaluate_prefix<Rational>(const MomentSequence &, std::size_t);
template std::vector<BigFloat> evaluate_prefix<BigFloat>(const MomentSequence &, std::size_t);

} // namespace detail

template <Scalar T>
RegularityConstants<T> regularity_constants(const MomentSequence &seq, std::size_t n_max)
{
    if (n_max < 1) {
        throw ParameterError("regularity_constants: n_max must be at least 1");
    }
    const auto v = detail::evaluate_prefix<T>(seq, n_max + 1);
    RegularityConstants<T> out{T(0), T(0)};
    for (std::size_t n = 0; n <= n_max; ++n) {
        const T scaled = (v[n + 1] / v[n]) / pow_rational<T>(T(static_cast<long>(n + 1)), seq.order());
        if (n == 0 || scaled < out.c) {
            out.c = scaled;
        }
        if (n == 0 || scaled > out.C) {
            out.C = scaled;
        }
    }
    return out;
}

template RegularityConstants<Rational> regularity_constants<Rational>(const MomentSequence &, std::size_t);
template RegularityConstants<BigFloat> regularity_constants<BigFloat>(const MomentSequence &, std::size_t);

GevreyBounds gevrey_bounds(const MomentSequence &seq, std::size_t n_max)
{
    if (n_max < 1) {
        throw ParameterError("gevrey_bounds: n_max must be at least 1");
    }
    const auto v = detail::evaluate_prefix<BigFloat>(seq, n_max);
    const BigFloat s(seq.order());
    GevreyBounds out;
    BigFloat log_fact = 0;
    for (std::size_t n = 1; n <= n_max; ++n) {
        log_fact += boost::multiprecision::log(BigFloat(static_cast<unsigned long>(n)));
        const BigFloat g = boost::multiprecision::exp((boost::multiprecision::log(v[n]) - s * log_fact) / n);
        require_finite(g, "growth constant");
        if (n == 1 || g < out.a) {
            out.a = g;
        }
        if (n == 1 || g > out.A) {
            out.A = g;
        }
    }
    return out;
}

} // namespace gevrey
