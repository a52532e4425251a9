#ifndef GEVREY_MULTI_INDEX_HPP
#define GEVREY_MULTI_INDEX_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

#include "gevrey/errors.hpp"

namespace gevrey
{

class MultiIndex
{
public:
    using value_type = std::uint32_t;

    MultiIndex() = default;
    explicit MultiIndex(std::size_t num_vars) : c_(num_vars, 0) {}
    MultiIndex(std::initializer_list<value_type> init) : c_(init) {}
    explicit MultiIndex(std::vector<value_type> c) : c_(std::move(c)) {}

    static MultiIndex unit(std::size_t num_vars, std::size_t axis)
    {
        MultiIndex e(num_vars);
        e.c_.at(axis) = 1;
        return e;
    }

    std::size_t size() const noexcept { return c_.size(); }
    value_type operator[](std::size_t i) const { return c_[i]; }
    value_type &operator[](std::size_t i) { return c_[i]; }
    const std::vector<value_type> &components() const noexcept { return c_; }

    // |gamma|
    std::uint64_t total() const { return std::accumulate(c_.begin(), c_.end(), std::uint64_t{0}); }

    bool is_zero() const
    {
        for (auto v : c_) {
            if (v != 0) {
                return false;
            }
        }
        return true;
    }

    bool all_positive() const
    {
        for (auto v : c_) {
            if (v == 0) {
                return false;
            }
        }
        return true;
    }

    MultiIndex &operator+=(const MultiIndex &o)
    {
        check(o);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            c_[i] += o.c_[i];
        }
        return *this;
    }

    friend MultiIndex operator+(MultiIndex a, const MultiIndex &b) { return a += b; }

    friend MultiIndex operator*(std::uint32_t k, MultiIndex a)
    {
        for (auto &v : a.c_) {
            v *= k;
        }
        return a;
    }

    // Componentwise <=
    bool le(const MultiIndex &o) const
    {
        check(o);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] > o.c_[i]) {
                return false;
            }
        }
        return true;
    }

    friend bool operator==(const MultiIndex &, const MultiIndex &) = default;
    friend auto operator<=>(const MultiIndex &, const MultiIndex &) = default;

    std::string str() const
    {
        std::string s = "(";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            s += (i ? "," : "") + std::to_string(c_[i]);
        }
        return s + ")";
    }

private:
    void check(const MultiIndex &o) const
    {
        if (o.c_.size() != c_.size()) {
            throw DimensionError("multi-index length mismatch");
        }
    }

    std::vector<value_type> c_;
};

} // namespace gevrey

#endif
