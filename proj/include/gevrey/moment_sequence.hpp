#ifndef GEVREY_MOMENT_SEQUENCE_HPP
#define GEVREY_MOMENT_SEQUENCE_HPP

#include <cstddef>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "gevrey/scalar.hpp"

namespace gevrey
{

// A positive sequence m(n) with m(0) = 1 and a declared Gevrey order s,
// i.e. a^n n!^s <= m(n) <= A^n n!^s. Immutable; copies share structure.
class MomentSequence
{
public:
    enum class Kind { factorial_power, gamma, q_factorial, product, quotient, table };

    // m(n) = n!^s
    static MomentSequence factorial_power(Rational s);
    // m(n) = Gamma(1 + s n)
    static MomentSequence gamma(Rational s);
    // m(n) = [n]_q!, order 0
    static MomentSequence q_factorial(Rational q);
    static MomentSequence product(const MomentSequence &lhs, const MomentSequence &rhs);
    static MomentSequence quotient(const MomentSequence &lhs, const MomentSequence &rhs);
    // Finite list m(0..k); values[0] must be 1. Not covered by any growth
    // guarantee, the declared order is taken at face value.
    static MomentSequence table(std::vector<Rational> values, Rational declared_order);

    Kind kind() const noexcept { return node_->kind; }
    const Rational &order() const noexcept { return node_->order; }
    // s for factorial_power/gamma, q for q_factorial.
    const Rational &parameter() const noexcept { return node_->param; }
    const MomentSequence &lhs() const;
    const MomentSequence &rhs() const;
    const std::vector<Rational> &table_values() const noexcept { return node_->values; }

    // True when every m(n) is rational, so the exact backend applies.
    bool rational_valued() const;

    // Largest admissible index (table kind); unbounded otherwise.
    std::size_t max_index() const;

    std::string describe() const;

    friend bool operator==(const MomentSequence &a, const MomentSequence &b);

private:
    struct Node {
        Kind kind;
        Rational order;
        Rational param;
        std::vector<Rational> values;
        std::shared_ptr<const MomentSequence> lhs;
        std::shared_ptr<const MomentSequence> rhs;
    };

    explicit MomentSequence(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

std::string_view kind_name(MomentSequence::Kind k);

namespace detail
{
// Directly evaluates m(n) for every n <= n_max.
template <Scalar T>
std::vector<T> evaluate_prefix(const MomentSequence &seq, std::size_t n_max);
} // namespace detail

// Memoizing evaluator of one sequence in one backend. Values are extended
// on demand under a lock; all observable results are deterministic.
template <Scalar T>
class MomentTable
{
public:
    explicit MomentTable(MomentSequence seq, std::size_t reserve = 0) : seq_(std::move(seq))
    {
        if (reserve > 0) {
            extend(reserve);
        }
    }

    MomentTable(const MomentTable &other) : seq_(other.seq_)
    {
        std::scoped_lock lock(other.mutex_);
        values_ = other.values_;
    }

    const MomentSequence &sequence() const noexcept { return seq_; }

    T value(std::size_t n) const
    {
        std::scoped_lock lock(mutex_);
        if (n >= values_.size()) {
            extend_locked(n);
        }
        return values_[n];
    }

    // m(n+1) / m(n)
    T ratio(std::size_t n) const
    {
        std::scoped_lock lock(mutex_);
        if (n + 1 >= values_.size()) {
            extend_locked(n + 1);
        }
        return values_[n + 1] / values_[n];
    }

    void extend(std::size_t n_max) const
    {
        std::scoped_lock lock(mutex_);
        if (n_max >= values_.size()) {
            extend_locked(n_max);
        }
    }

private:
    void extend_locked(std::size_t n_max) const
    {
        // Grow geometrically so incremental access stays linear overall.
        std::size_t target = std::max(n_max, values_.size() * 2);
        if (target > seq_.max_index()) {
            target = n_max;
        }
        values_ = detail::evaluate_prefix<T>(seq_, target);
    }

    MomentSequence seq_;
    mutable std::mutex mutex_;
    mutable std::vector<T> values_;
};

template <Scalar T>
T eval(const MomentSequence &seq, std::size_t n)
{
    return detail::evaluate_prefix<T>(seq, n).back();
}

template <Scalar T>
T ratio(const MomentSequence &seq, std::size_t n)
{
    const auto v = detail::evaluate_prefix<T>(seq, n + 1);
    return v[n + 1] / v[n];
}

template <Scalar T>
struct RegularityConstants {
    T c;
    T C;
};

// c = min, C = max of ratio(n) / (n+1)^s over 0 <= n <= n_max.
template <Scalar T>
RegularityConstants<T> regularity_constants(const MomentSequence &seq, std::size_t n_max);

// Growth constants a = min, A = max of (m(n) / n!^s)^{1/n} over
// 1 <= n <= n_max, so that a^n n!^s <= m(n) <= A^n n!^s on that range.
struct GevreyBounds {
    BigFloat a;
    BigFloat A;
};

GevreyBounds gevrey_bounds(const MomentSequence &seq, std::size_t n_max);

extern template std::vector<Rational> detail::evaluate_prefix<Rational>(const MomentSequence &, std::size_t);
extern template std::vector<BigFloat> detail::evaluate_prefix<BigFloat>(const MomentSequence &, std::size_t);
extern template RegularityConstants<Rational> regularity_constants<Rational>(const MomentSequence &, std::size_t);
extern template RegularityConstants<BigFloat> regularity_constants<BigFloat>(const MomentSequence &, std::size_t);

} // namespace gevrey

#endif
