#ifndef GEVREY_SERIES_HPP
#define GEVREY_SERIES_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gevrey/moment_sequence.hpp"
#include "gevrey/multi_index.hpp"
#include "gevrey/scalar.hpp"

namespace gevrey
{

// Per-variable validity bound. Coefficients at gamma with gamma_i <= bound_i
// for every i are exact; kUnbounded marks an exactly known polynomial and a
// negative bound marks an axis with no trusted coefficient at all.
using Degree = std::int64_t;
inline constexpr Degree kUnbounded = std::numeric_limits<Degree>::max();

inline Degree min_degree(Degree a, Degree b) { return std::min(a, b); }

inline Degree lower_degree(Degree d, std::uint32_t by)
{
    return d == kUnbounded ? d : d - static_cast<Degree>(by);
}

inline std::string degree_to_string(Degree d)
{
    return d == kUnbounded ? "inf" : std::to_string(d);
}

// Truncated multivariate power series in z_1..z_N with a sparse,
// lexicographically ordered coefficient map.
template <Scalar T>
class PolySeries
{
public:
    using map_type = std::map<MultiIndex, T>;

    PolySeries() = default;

    explicit PolySeries(std::size_t num_vars) : num_vars_(num_vars), valid_(num_vars, kUnbounded) {}

    PolySeries(std::size_t num_vars, std::vector<Degree> valid) : num_vars_(num_vars), valid_(std::move(valid))
    {
        if (valid_.size() != num_vars_) {
            throw DimensionError("valid_degree length does not match the number of variables");
        }
    }

    static PolySeries constant(std::size_t num_vars, const T &c)
    {
        PolySeries f(num_vars);
        f.set(MultiIndex(num_vars), c);
        return f;
    }

    static PolySeries monomial(const MultiIndex &gamma, const T &c)
    {
        PolySeries f(gamma.size());
        f.set(gamma, c);
        return f;
    }

    std::size_t num_vars() const noexcept { return num_vars_; }
    const std::vector<Degree> &valid_degree() const noexcept { return valid_; }
    const map_type &terms() const noexcept { return coeffs_; }
    std::size_t size() const noexcept { return coeffs_.size(); }

    bool is_zero() const noexcept { return coeffs_.empty(); }

    // All coefficients are known: the series is an exact polynomial.
    bool exact() const
    {
        return std::all_of(valid_.begin(), valid_.end(), [](Degree d) { return d == kUnbounded; });
    }

    bool region_empty() const
    {
        return std::any_of(valid_.begin(), valid_.end(), [](Degree d) { return d < 0; });
    }

    bool in_region(const MultiIndex &gamma) const
    {
        check_index(gamma);
        for (std::size_t i = 0; i < num_vars_; ++i) {
            if (static_cast<Degree>(gamma[i]) > valid_[i]) {
                return false;
            }
        }
        return true;
    }

    T coeff(const MultiIndex &gamma) const
    {
        check_index(gamma);
        const auto it = coeffs_.find(gamma);
        return it == coeffs_.end() ? T(0) : it->second;
    }

    void set(const MultiIndex &gamma, const T &c)
    {
        if (!in_region(gamma)) {
            throw TruncationError("coefficient " + gamma.str() + " lies outside the valid region");
        }
        if (c == 0) {
            coeffs_.erase(gamma);
        } else {
            coeffs_.insert_or_assign(gamma, c);
        }
    }

    void add_to(const MultiIndex &gamma, const T &c)
    {
        if (c == 0) {
            return;
        }
        auto [it, inserted] = coeffs_.try_emplace(gamma, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                coeffs_.erase(it);
            }
        }
    }

    // Shrinks the valid region to the componentwise min with `bound` and
    // drops coefficients that fall outside it.
    void restrict_to(const std::vector<Degree> &bound)
    {
        if (bound.size() != num_vars_) {
            throw DimensionError("valid_degree length does not match the number of variables");
        }
        for (std::size_t i = 0; i < num_vars_; ++i) {
            valid_[i] = min_degree(valid_[i], bound[i]);
        }
        std::erase_if(coeffs_, [this](const auto &kv) { return !in_region(kv.first); });
    }

    // Largest stored exponent of z_axis, or -1 for the zero series.
    Degree max_exponent(std::size_t axis) const
    {
        Degree d = -1;
        for (const auto &[g, c] : coeffs_) {
            d = std::max<Degree>(d, g[axis]);
        }
        return d;
    }

    PolySeries &operator+=(const PolySeries &g)
    {
        check_vars(g);
        auto bound = valid_;
        for (std::size_t i = 0; i < num_vars_; ++i) {
            bound[i] = min_degree(bound[i], g.valid_[i]);
        }
        for (const auto &[gamma, c] : g.coeffs_) {
            add_to(gamma, c);
        }
        restrict_to(bound);
        return *this;
    }

    PolySeries &operator-=(const PolySeries &g)
    {
        PolySeries neg = g;
        neg *= T(-1);
        return *this += neg;
    }

    PolySeries &operator*=(const T &c)
    {
        if (c == 0) {
            coeffs_.clear();
            return *this;
        }
        for (auto &[g, v] : coeffs_) {
            v *= c;
        }
        return *this;
    }

    friend PolySeries operator+(PolySeries f, const PolySeries &g) { return f += g; }
    friend PolySeries operator-(PolySeries f, const PolySeries &g) { return f -= g; }
    friend PolySeries operator*(PolySeries f, const T &c) { return f *= c; }
    friend PolySeries operator*(const T &c, PolySeries f) { return f *= c; }
    PolySeries operator-() const { return *this * T(-1); }

    // Cauchy product truncated to the common valid region.
    friend PolySeries operator*(const PolySeries &f, const PolySeries &g)
    {
        f.check_vars(g);
        std::vector<Degree> bound(f.num_vars_);
        for (std::size_t i = 0; i < f.num_vars_; ++i) {
            bound[i] = min_degree(f.valid_[i], g.valid_[i]);
        }
        PolySeries out(f.num_vars_, bound);
        if (out.region_empty()) {
            return out;
        }
        for (const auto &[a, ca] : f.coeffs_) {
            if (!out.in_region(a)) {
                continue;
            }
            for (const auto &[b, cb] : g.coeffs_) {
                MultiIndex ab = a + b;
                if (out.in_region(ab)) {
                    out.add_to(ab, ca * cb);
                }
            }
        }
        return out;
    }

    // Equality on the common valid region.
    friend bool operator==(const PolySeries &f, const PolySeries &g)
    {
        if (f.num_vars_ != g.num_vars_) {
            return false;
        }
        auto same_on = [&](const PolySeries &a, const PolySeries &b) {
            for (const auto &[gamma, c] : a.coeffs_) {
                if (b.in_region(gamma) && b.coeff(gamma) != c) {
                    return false;
                }
            }
            return true;
        };
        return same_on(f, g) && same_on(g, f);
    }

    // Same coefficients and same validity metadata.
    bool identical(const PolySeries &g) const
    {
        return num_vars_ == g.num_vars_ && valid_ == g.valid_ && coeffs_ == g.coeffs_;
    }

private:
    void check_vars(const PolySeries &g) const
    {
        if (g.num_vars_ != num_vars_) {
            throw DimensionError("series have different numbers of variables");
        }
    }

    void check_index(const MultiIndex &gamma) const
    {
        if (gamma.size() != num_vars_) {
            throw DimensionError("multi-index length does not match the number of variables");
        }
    }

    std::size_t num_vars_ = 0;
    map_type coeffs_;
    std::vector<Degree> valid_;
};

// Moment derivative in z_axis: coefficient gamma of the result is
// f_{gamma+e_axis} m(gamma_axis + 1) / m(gamma_axis).
template <Scalar T>
PolySeries<T> moment_derive_z(const PolySeries<T> &f, std::size_t axis, const MomentTable<T> &m)
{
    if (axis >= f.num_vars()) {
        throw DimensionError("derivative axis out of range");
    }
    auto valid = f.valid_degree();
    valid[axis] = lower_degree(valid[axis], 1);
    PolySeries<T> out(f.num_vars(), valid);
    for (const auto &[gamma, c] : f.terms()) {
        if (gamma[axis] == 0) {
            continue;
        }
        MultiIndex lowered = gamma;
        lowered[axis] -= 1;
        if (out.in_region(lowered)) {
            out.set(lowered, c * m.ratio(lowered[axis]));
        }
    }
    return out;
}

template <Scalar T>
PolySeries<T> moment_derive_z(const PolySeries<T> &f, std::size_t axis, const MomentSequence &m)
{
    return moment_derive_z(f, axis, MomentTable<T>(m));
}

// Applies the moment derivative alpha_k times along every axis k.
template <Scalar T>
PolySeries<T> moment_derive(const PolySeries<T> &f, const MultiIndex &alpha, const std::vector<MomentTable<T>> &m)
{
    if (alpha.size() != f.num_vars() || m.size() != f.num_vars()) {
        throw DimensionError("derivative order length does not match the number of variables");
    }
    PolySeries<T> out = f;
    for (std::size_t k = 0; k < alpha.size(); ++k) {
        for (std::uint32_t i = 0; i < alpha[k]; ++i) {
            out = moment_derive_z(out, k, m[k]);
        }
    }
    return out;
}

// sum |f_gamma| r^{|gamma|} over stored coefficients.
template <Scalar T>
T ell1_norm(const PolySeries<T> &f, const T &r)
{
    if (r <= 0) {
        throw ParameterError("ell1_norm: r must be positive");
    }
    T sum(0);
    for (const auto &[gamma, c] : f.terms()) {
        sum += abs_value(c) * pow_rational<T>(r, Rational(static_cast<long>(gamma.total())));
    }
    return sum;
}

// Enumerates every gamma with 0 <= gamma_i <= cap_i in lexicographic order.
template <typename F>
void for_each_index(const std::vector<Degree> &cap, F &&fn)
{
    for (auto c : cap) {
        if (c < 0) {
            return;
        }
        if (c == kUnbounded) {
            throw ParameterError("cannot enumerate an unbounded index range");
        }
    }
    const std::size_t n = cap.size();
    MultiIndex gamma(n);
    while (true) {
        fn(static_cast<const MultiIndex &>(gamma));
        std::size_t i = n;
        while (i > 0 && static_cast<Degree>(gamma[i - 1]) == cap[i - 1]) {
            gamma[i - 1] = 0;
            --i;
        }
        if (i == 0) {
            return;
        }
        ++gamma[i - 1];
    }
}

// Builtin generators for infinite initial data; coefficients are produced
// up to `cap` and the validity metadata records the cut.
template <Scalar T>
PolySeries<T> geometric_series(std::size_t num_vars, const Rational &c, const std::vector<Degree> &cap)
{
    PolySeries<T> f(num_vars, cap);
    const T cv = from_rational<T>(c);
    for_each_index(cap, [&](const MultiIndex &gamma) {
        f.set(gamma, pow_rational<T>(cv, Rational(static_cast<long>(gamma.total()))));
    });
    return f;
}

// exp(c (z_1 + ... + z_N)) = prod_i sum_k c^k z_i^k / k!
template <Scalar T>
PolySeries<T> exp_series(std::size_t num_vars, const Rational &c, const std::vector<Degree> &cap)
{
    PolySeries<T> f(num_vars, cap);
    const T cv = from_rational<T>(c);
    for_each_index(cap, [&](const MultiIndex &gamma) {
        Integer denom = 1;
        for (std::size_t i = 0; i < gamma.size(); ++i) {
            denom *= factorial(gamma[i]);
        }
        f.set(gamma, pow_rational<T>(cv, Rational(static_cast<long>(gamma.total()))) / from_integer<T>(denom));
    });
    return f;
}

// u(t, z) = sum_n u_n(z) t^n, known exactly for n <= t_valid. Entries past
// the stored prefix but within t_valid are zero.
template <Scalar T>
class TimeSeries
{
public:
    TimeSeries() = default;

    TimeSeries(std::size_t num_vars, Degree t_valid) : num_vars_(num_vars), t_valid_(t_valid), zero_(num_vars) {}

    TimeSeries(std::vector<PolySeries<T>> entries, Degree t_valid)
        : num_vars_(entries.empty() ? 0 : entries.front().num_vars()), t_valid_(t_valid), entries_(std::move(entries)),
          zero_(num_vars_)
    {
        for (const auto &e : entries_) {
            if (e.num_vars() != num_vars_) {
                throw DimensionError("time series entries have different numbers of variables");
            }
        }
        check_length();
    }

    // A polynomial in t: exact for every n.
    static TimeSeries polynomial(std::size_t num_vars, std::vector<PolySeries<T>> entries)
    {
        TimeSeries out(num_vars, kUnbounded);
        for (auto &e : entries) {
            out.push_back(std::move(e));
        }
        return out;
    }

    std::size_t num_vars() const noexcept { return num_vars_; }
    Degree t_order() const noexcept { return t_valid_; }
    std::size_t stored() const noexcept { return entries_.size(); }
    const std::vector<PolySeries<T>> &entries() const noexcept { return entries_; }

    const PolySeries<T> &at(std::size_t n) const
    {
        if (n < entries_.size()) {
            return entries_[n];
        }
        if (static_cast<Degree>(n) <= t_valid_) {
            return zero_;
        }
        throw TruncationError("t-coefficient " + std::to_string(n) + " requested but the series is truncated at "
                              + degree_to_string(t_valid_));
    }

    bool covers(std::size_t n) const { return static_cast<Degree>(n) <= t_valid_; }

    void push_back(PolySeries<T> e)
    {
        if (e.num_vars() != num_vars_) {
            throw DimensionError("time series entry has the wrong number of variables");
        }
        entries_.push_back(std::move(e));
        check_length();
    }

    PolySeries<T> &mutable_entry(std::size_t n) { return entries_.at(n); }

    // Smallest n with a non-zero stored entry.
    std::optional<std::size_t> valuation() const
    {
        for (std::size_t n = 0; n < entries_.size(); ++n) {
            if (!entries_[n].is_zero()) {
                return n;
            }
        }
        return std::nullopt;
    }

    friend bool operator==(const TimeSeries &a, const TimeSeries &b)
    {
        if (a.num_vars_ != b.num_vars_) {
            return false;
        }
        const std::size_t n = std::max(a.entries_.size(), b.entries_.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (!a.covers(i) || !b.covers(i)) {
                break;
            }
            if (!(a.at(i) == b.at(i))) {
                return false;
            }
        }
        return true;
    }

private:
    void check_length() const
    {
        if (t_valid_ != kUnbounded && static_cast<Degree>(entries_.size()) > t_valid_ + 1) {
            throw TruncationError("time series stores more entries than its t-order");
        }
    }

    std::size_t num_vars_ = 0;
    Degree t_valid_ = kUnbounded;
    std::vector<PolySeries<T>> entries_;
    PolySeries<T> zero_;
};

} // namespace gevrey

#endif
