#ifndef GEVREY_PDE_HPP
#define GEVREY_PDE_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gevrey/moment_sequence.hpp"
#include "gevrey/series.hpp"

namespace gevrey
{

// The combinatorial data of one operator term: a(t,z) d_t^j d_z^alpha with
// ord_t(a) = ord_t.
struct TermShape {
    std::size_t j = 0;
    MultiIndex alpha;
    std::size_t ord_t = 0;

    // q = ord_t - j + M, the first t-index at which the term feeds the
    // recurrence. May be non-positive for operators that fail validation.
    long q(std::size_t M) const { return static_cast<long>(ord_t) - static_cast<long>(j) + static_cast<long>(M); }
};

// Backend-independent view of P = d_t^M + sum a_{j,alpha} d_t^j d_z^alpha:
// everything the Newton polygon and alpha_0 need.
struct OperatorShape {
    std::size_t M = 1;
    Rational s0;
    std::vector<Rational> s;
    std::vector<TermShape> terms;

    std::size_t num_vars() const { return s.size(); }
};

// Valuation of a coefficient in t. Throws when the stored coefficient is
// identically zero, because such a term has to be dropped from the operator.
template <Scalar T>
std::size_t ord_t(const TimeSeries<T> &coeff)
{
    const auto v = coeff.valuation();
    if (!v) {
        throw ValidationError("coefficient is identically zero; the term must be dropped");
    }
    return *v;
}

template <Scalar T>
struct OperatorTerm {
    std::size_t j = 0;
    MultiIndex alpha;
    TimeSeries<T> coeff;

    std::size_t valuation() const { return ord_t(coeff); }
};

template <Scalar T>
struct MomentPDE {
    std::size_t M = 1;
    MomentSequence m0 = MomentSequence::factorial_power(Rational(1));
    std::vector<MomentSequence> m;
    std::vector<OperatorTerm<T>> terms;

    std::size_t num_vars() const { return m.size(); }
    const Rational &s0() const { return m0.order(); }

    std::vector<Rational> s() const
    {
        std::vector<Rational> out;
        out.reserve(m.size());
        for (const auto &seq : m) {
            out.push_back(seq.order());
        }
        return out;
    }

    OperatorShape shape() const
    {
        OperatorShape sh{M, s0(), s(), {}};
        for (const auto &t : terms) {
            sh.terms.push_back({t.j, t.alpha, t.valuation()});
        }
        return sh;
    }
};

struct Truncation {
    std::size_t t_order = 0;
    std::vector<Degree> z_degree;
};

template <Scalar T>
struct CauchyProblem {
    MomentPDE<T> pde;
    TimeSeries<T> rhs;
    std::vector<PolySeries<T>> initial;
    Truncation truncation;
};

struct ValidationCheck {
    std::string name;
    bool passed = true;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    std::vector<std::string> warnings;

    bool passed() const
    {
        for (const auto &c : checks) {
            if (!c.passed) {
                return false;
            }
        }
        return true;
    }

    // Only assumption (a) failed: the polygon is still meaningful.
    bool analysis_only() const;

    const ValidationCheck *find(std::string_view name) const;
};

// Checks on the operator alone: s_i >= 1, the valuation inequality and q >= 1
// per term, and the s0 = 0 warning.
ValidationReport validate_shape(const OperatorShape &shape);

template <Scalar T>
void check_dimensions(const CauchyProblem<T> &p)
{
    const std::size_t n = p.pde.num_vars();
    if (n == 0) {
        throw DimensionError("the problem needs at least one space variable");
    }
    if (p.pde.M == 0) {
        throw DimensionError("the principal order M must be positive");
    }
    for (const auto &t : p.pde.terms) {
        if (t.alpha.size() != n || t.coeff.num_vars() != n) {
            throw DimensionError("operator term dimension does not match the number of variables");
        }
    }
    if (p.rhs.num_vars() != n) {
        throw DimensionError("right-hand side dimension does not match the number of variables");
    }
    if (p.initial.size() != p.pde.M) {
        throw DimensionError("expected " + std::to_string(p.pde.M) + " initial functions, got "
                             + std::to_string(p.initial.size()));
    }
    for (const auto &phi : p.initial) {
        if (phi.num_vars() != n) {
            throw DimensionError("initial data dimension does not match the number of variables");
        }
    }
    if (p.truncation.t_order == 0 || p.truncation.z_degree.size() != n) {
        throw DimensionError("truncation needs a positive t-order and one z-degree per variable");
    }
}

template <Scalar T>
ValidationReport validate(const CauchyProblem<T> &p)
{
    check_dimensions(p);
    ValidationReport report = validate_shape(p.pde.shape());

    ValidationCheck backend{"backend", true, std::string(backend_name(backend_of<T>()))};
    if constexpr (is_exact_v<T>) {
        std::vector<const MomentSequence *> seqs{&p.pde.m0};
        for (const auto &m : p.pde.m) {
            seqs.push_back(&m);
        }
        for (const auto *m : seqs) {
            if (!m->rational_valued()) {
                backend.passed = false;
                backend.detail = m->describe() + " is not rational-valued; use the bigfloat backend";
            }
        }
    }
    report.checks.push_back(backend);

    // Coefficients are consumed up to t-index t_order (f and t^{M-j} a).
    ValidationCheck trunc{"truncation", true, "coefficients reach t-order " + std::to_string(p.truncation.t_order)};
    const std::size_t N = p.truncation.t_order;
    if (N >= p.pde.M && !p.rhs.covers(N - p.pde.M)) {
        trunc.passed = false;
        trunc.detail = "right-hand side truncated below t-order " + std::to_string(N - p.pde.M);
    }
    for (std::size_t i = 0; i < p.pde.terms.size(); ++i) {
        const auto &t = p.pde.terms[i];
        const long need = static_cast<long>(N) - static_cast<long>(p.pde.M) + static_cast<long>(t.j);
        if (need >= 0 && !t.coeff.covers(static_cast<std::size_t>(need))) {
            trunc.passed = false;
            trunc.detail = "coefficient of term " + std::to_string(i) + " truncated below t-order " + std::to_string(need);
        }
    }
    report.checks.push_back(trunc);
    return report;
}

namespace detail
{

// Coefficient k of d^j_{m0,t} u: u_{k+j} m0(k+j) / m0(k).
template <Scalar T>
PolySeries<T> t_moment_shift(const TimeSeries<T> &u, std::size_t k, std::size_t j, const MomentTable<T> &m0)
{
    if (j == 0) {
        return u.at(k);
    }
    return u.at(k + j) * (m0.value(k + j) / m0.value(k));
}

template <Scalar T>
std::vector<MomentTable<T>> z_tables(const MomentPDE<T> &pde)
{
    std::vector<MomentTable<T>> out;
    out.reserve(pde.m.size());
    for (const auto &seq : pde.m) {
        out.emplace_back(seq);
    }
    return out;
}

} // namespace detail

// P u truncated to t-order u.t_order - M.
template <Scalar T>
TimeSeries<T> apply(const MomentPDE<T> &pde, const TimeSeries<T> &u)
{
    if (u.num_vars() != pde.num_vars()) {
        throw DimensionError("series dimension does not match the operator");
    }
    if (u.t_order() == kUnbounded) {
        throw TruncationError("apply needs a finite t-order");
    }
    if (u.t_order() < static_cast<Degree>(pde.M)) {
        throw TruncationError("apply needs t-order at least M = " + std::to_string(pde.M));
    }
    const std::size_t out_order = static_cast<std::size_t>(u.t_order()) - pde.M;
    const MomentTable<T> m0(pde.m0, static_cast<std::size_t>(u.t_order()));
    const auto mz = detail::z_tables(pde);

    TimeSeries<T> out(pde.num_vars(), static_cast<Degree>(out_order));
    for (std::size_t n = 0; n <= out_order; ++n) {
        PolySeries<T> acc = detail::t_moment_shift(u, n, pde.M, m0);
        for (const auto &term : pde.terms) {
            for (std::size_t p = 0; p <= n; ++p) {
                if (!term.coeff.covers(p)) {
                    throw TruncationError("operator coefficient truncated below t-order " + std::to_string(p));
                }
                const auto &a = term.coeff.at(p);
                if (a.is_zero()) {
                    continue;
                }
                const std::size_t k = n - p;
                if (static_cast<Degree>(k + term.j) > u.t_order()) {
                    throw TruncationError("apply needs u beyond its t-order");
                }
                acc += a * moment_derive(detail::t_moment_shift(u, k, term.j, m0), term.alpha, mz);
            }
        }
        out.push_back(std::move(acc));
    }
    return out;
}

} // namespace gevrey

#endif
