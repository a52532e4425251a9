#ifndef GEVREY_PROBLEM_HPP
#define GEVREY_PROBLEM_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gevrey/estimator.hpp"
#include "gevrey/pde.hpp"

namespace gevrey
{

// value * t^t_power * z^z
struct Monomial {
    std::size_t t_power = 0;
    MultiIndex z;
    Rational value;

    friend bool operator==(const Monomial &, const Monomial &) = default;
};

// Initial data or a generated right-hand side factor in z.
struct DataSpec {
    enum class Kind { poly, geometric, exp };
    Kind kind = Kind::poly;
    // poly: the z-monomials (t_power unused).
    std::vector<Monomial> monomials;
    // geometric: sum c^{|g|} z^g; exp: sum c^{|g|} z^g / g!.
    Rational c{1};

    friend bool operator==(const DataSpec &, const DataSpec &) = default;
};

struct TermSpec {
    std::size_t j = 0;
    MultiIndex alpha;
    std::vector<Monomial> coefficient;
    // When given it must equal the valuation of the coefficient.
    std::optional<std::size_t> ord_t;

    friend bool operator==(const TermSpec &, const TermSpec &) = default;
};

struct RhsSpec {
    std::vector<Monomial> monomials;
    // Optional generated part t^t_power * g(z).
    std::optional<DataSpec> generator;
    std::size_t generator_t_power = 0;

    friend bool operator==(const RhsSpec &, const RhsSpec &) = default;
};

struct NumericsSpec {
    // Empty: rational when every moment sequence is rational-valued.
    std::optional<Backend> backend;
    unsigned precision_bits = kDefaultPrecisionBits;

    friend bool operator==(const NumericsSpec &, const NumericsSpec &) = default;
};

struct EstimationSpec {
    Rational r{1, 2};
    Rational rho{1, 4};
    std::optional<FitWindow> window;
    double tolerance = 0.15;
    NormMode mode = NormMode::sup_proxy;

    EstimationConfig config() const { return {mode, r, rho, window, tolerance}; }

    friend bool operator==(const EstimationSpec &a, const EstimationSpec &b)
    {
        const auto wa = a.window ? std::optional(std::pair(a.window->first, a.window->last)) : std::nullopt;
        const auto wb = b.window ? std::optional(std::pair(b.window->first, b.window->last)) : std::nullopt;
        return a.r == b.r && a.rho == b.rho && wa == wb && a.tolerance == b.tolerance && a.mode == b.mode;
    }
};

// Backend-independent content of a problem file.
struct ProblemSpec {
    std::size_t variables = 1;
    MomentSequence m0 = MomentSequence::factorial_power(Rational(1));
    std::vector<MomentSequence> m;
    std::size_t M = 1;
    std::vector<TermSpec> terms;
    RhsSpec rhs;
    std::vector<DataSpec> initial;
    Truncation truncation;
    NumericsSpec numerics;
    EstimationSpec estimation;

    Backend backend() const;
    OperatorShape shape() const;

    friend bool operator==(const ProblemSpec &a, const ProblemSpec &b);
};

// Parses problem JSON. Syntax and schema errors are ParseError with the
// line/column of the offending value and its JSON-pointer path.
ProblemSpec parse_problem(std::string_view text, std::string_view source = "<input>");
ProblemSpec load_problem(const std::string &path);

nlohmann::ordered_json problem_to_json(const ProblemSpec &spec);
std::string emit_problem(const ProblemSpec &spec);

nlohmann::ordered_json sequence_to_json(const MomentSequence &seq);

template <Scalar T>
PolySeries<T> materialize(const DataSpec &d, std::size_t num_vars, const std::vector<Degree> &cap)
{
    switch (d.kind) {
    case DataSpec::Kind::geometric:
        return geometric_series<T>(num_vars, d.c, cap);
    case DataSpec::Kind::exp:
        return exp_series<T>(num_vars, d.c, cap);
    case DataSpec::Kind::poly:
        break;
    }
    PolySeries<T> f(num_vars);
    for (const auto &mono : d.monomials) {
        f.add_to(mono.z, from_rational<T>(mono.value));
    }
    return f;
}

template <Scalar T>
TimeSeries<T> materialize_t(const std::vector<Monomial> &monos, std::size_t num_vars)
{
    std::vector<PolySeries<T>> entries;
    for (const auto &mono : monos) {
        if (entries.size() <= mono.t_power) {
            entries.resize(mono.t_power + 1, PolySeries<T>(num_vars));
        }
        entries[mono.t_power].add_to(mono.z, from_rational<T>(mono.value));
    }
    while (!entries.empty() && entries.back().is_zero()) {
        entries.pop_back();
    }
    return TimeSeries<T>::polynomial(num_vars, std::move(entries));
}

// The Cauchy problem in backend T. Checks declared valuations against the
// coefficient data.
template <Scalar T>
CauchyProblem<T> build_problem(const ProblemSpec &spec)
{
    const std::size_t nv = spec.variables;
    CauchyProblem<T> p;
    p.pde.M = spec.M;
    p.pde.m0 = spec.m0;
    p.pde.m = spec.m;
    for (std::size_t i = 0; i < spec.terms.size(); ++i) {
        const auto &ts = spec.terms[i];
        OperatorTerm<T> term{ts.j, ts.alpha, materialize_t<T>(ts.coefficient, nv)};
        const std::size_t v = term.valuation();
        if (ts.ord_t && *ts.ord_t != v) {
            throw ValidationError("term " + std::to_string(i) + " declares ord_t = " + std::to_string(*ts.ord_t)
                                  + " but its coefficient has valuation " + std::to_string(v));
        }
        p.pde.terms.push_back(std::move(term));
    }
    p.rhs = materialize_t<T>(spec.rhs.monomials, nv);
    if (spec.rhs.generator) {
        const auto g = materialize<T>(*spec.rhs.generator, nv, spec.truncation.z_degree);
        auto entries = p.rhs.entries();
        if (entries.size() <= spec.rhs.generator_t_power) {
            entries.resize(spec.rhs.generator_t_power + 1, PolySeries<T>(nv));
        }
        entries[spec.rhs.generator_t_power] += g;
        p.rhs = TimeSeries<T>::polynomial(nv, std::move(entries));
    }
    for (const auto &d : spec.initial) {
        p.initial.push_back(materialize<T>(d, nv, spec.truncation.z_degree));
    }
    p.truncation = spec.truncation;
    return p;
}

} // namespace gevrey

#endif
