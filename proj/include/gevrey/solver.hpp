#ifndef GEVREY_SOLVER_HPP
#define GEVREY_SOLVER_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gevrey/pde.hpp"

namespace gevrey
{

struct SolveProvenance {
    Backend backend = Backend::rational;
    unsigned precision_bits = 0;
    std::size_t t_order = 0;
    std::vector<Degree> z_degree;
};

template <Scalar T>
struct FormalSolution {
    // u_0 .. u_{t_order}
    TimeSeries<T> coefficients;
    // q_{j,alpha} per operator term, in term order.
    std::vector<long> q_table;
    // max over n <= t_order - M of ell1(coefficient n of P u - f, r = 1).
    T residual_max{0};
    // Largest residual relative to the size of d^M u + f at the same index.
    T residual_relative{0};
    SolveProvenance provenance;

    const PolySeries<T> &u(std::size_t n) const { return coefficients.at(n); }

    // Indices whose valid z-region is empty (the data ran out of degrees).
    std::vector<std::size_t> exhausted() const
    {
        std::vector<std::size_t> out;
        for (std::size_t n = 0; n < coefficients.stored(); ++n) {
            if (coefficients.at(n).region_empty()) {
                out.push_back(n);
            }
        }
        return out;
    }
};

// Coefficient 0 of d^j_{m0,t} u, i.e. u_j m0(j).
template <Scalar T>
PolySeries<T> initial_trace(const TimeSeries<T> &u, std::size_t j, const MomentSequence &m0)
{
    return u.at(j) * eval<T>(m0, j);
}

namespace detail
{

// Derivatives d_z^alpha u_k are reused across n; cache them per (alpha, k).
template <Scalar T>
class DerivativeCache
{
public:
    DerivativeCache(const std::vector<MomentTable<T>> &tables) : tables_(tables) {}

    const PolySeries<T> &get(const MultiIndex &alpha, std::size_t k, const PolySeries<T> &uk)
    {
        auto &slot = cache_[alpha];
        if (slot.size() <= k) {
            slot.resize(k + 1);
        }
        if (!slot[k]) {
            slot[k] = alpha.is_zero() ? uk : moment_derive(uk, alpha, tables_);
        }
        return *slot[k];
    }

private:
    const std::vector<MomentTable<T>> &tables_;
    std::map<MultiIndex, std::vector<std::optional<PolySeries<T>>>> cache_;
};

} // namespace detail

// Residual of a candidate solution: P u - f over the checkable range. The
// second value divides each residual by the l1 size of the principal part
// d^M u plus f at the same index.
template <Scalar T>
std::pair<T, T> residual_parts(const CauchyProblem<T> &p, const TimeSeries<T> &u)
{
    const auto Pu = apply(p.pde, u);
    const MomentTable<T> m0(p.pde.m0, Pu.stored() + p.pde.M);
    T worst(0);
    T worst_rel(0);
    const T one(1);
    for (std::size_t n = 0; n < Pu.stored(); ++n) {
        const PolySeries<T> diff = Pu.at(n) - p.rhs.at(n);
        const T r = ell1_norm(diff, one);
        if (r > worst) {
            worst = r;
        }
        if (r != 0) {
            const T scale = ell1_norm(detail::t_moment_shift(u, n, p.pde.M, m0), one) + ell1_norm(p.rhs.at(n), one);
            const T rel = scale == 0 ? r : T(r / scale);
            if (rel > worst_rel) {
                worst_rel = rel;
            }
        }
    }
    return {worst, worst_rel};
}

template <Scalar T>
T residual(const CauchyProblem<T> &p, const FormalSolution<T> &sol)
{
    return residual_parts(p, sol.coefficients).first;
}

// Formal solution sum_n u_n(z) t^n up to t-order N via the coefficient
// recurrence
//   u_n = m0(n-M)/m0(n) [ f~_n - sum_{(j,alpha)} sum_{p=q}^{n}
//           a~_{j,alpha,p} m0(n-p)/m0(n-p-j) d_z^alpha u_{n-p} ],
// where f~ = t^M f, a~ = t^{M-j} a and summands with n-p-j < 0 vanish.
template <Scalar T>
FormalSolution<T> solve(const CauchyProblem<T> &p)
{
    const auto report = validate(p);
    if (!report.passed()) {
        std::string why;
        for (const auto &c : report.checks) {
            if (!c.passed) {
                why += (why.empty() ? "" : "; ") + c.name + ": " + c.detail;
            }
        }
        throw ValidationError("problem failed validation: " + why);
    }
    const auto &pde = p.pde;
    const std::size_t M = pde.M;
    const std::size_t N = p.truncation.t_order;
    const std::size_t nv = pde.num_vars();
    const MomentTable<T> m0(pde.m0, N);
    const auto mz = detail::z_tables(pde);

    FormalSolution<T> sol;
    sol.coefficients = TimeSeries<T>(nv, static_cast<Degree>(N));
    sol.provenance = {backend_of<T>(), is_exact_v<T> ? 0u : PrecisionScope::current_bits(), N, p.truncation.z_degree};
    for (const auto &t : pde.terms) {
        sol.q_table.push_back(static_cast<long>(t.valuation()) - static_cast<long>(t.j) + static_cast<long>(M));
    }

    // u_j = phi_j / m0(j): the t^0 coefficient of d^j u is u_j m0(j).
    for (std::size_t j = 0; j < M && j <= N; ++j) {
        sol.coefficients.push_back(p.initial[j] * (T(1) / m0.value(j)));
    }

    detail::DerivativeCache<T> derivs(mz);
    for (std::size_t n = M; n <= N; ++n) {
        PolySeries<T> acc = p.rhs.at(n - M);
        for (std::size_t ti = 0; ti < pde.terms.size(); ++ti) {
            const auto &term = pde.terms[ti];
            const long shift = static_cast<long>(term.j) - static_cast<long>(M);
            const auto q = static_cast<std::size_t>(sol.q_table[ti]);
            for (std::size_t pp = q; pp <= n; ++pp) {
                if (n < pp + term.j) {
                    continue;
                }
                // a~_p = coefficient p - M + j of a.
                const long idx = static_cast<long>(pp) + shift;
                if (idx < 0) {
                    continue;
                }
                if (!term.coeff.covers(static_cast<std::size_t>(idx))) {
                    throw TruncationError("coefficient of term " + std::to_string(ti) + " is needed at t-order "
                                          + std::to_string(idx) + " but is truncated earlier");
                }
                const auto &a = term.coeff.at(static_cast<std::size_t>(idx));
                if (a.is_zero()) {
                    continue;
                }
                const std::size_t k = n - pp;
                const T weight = term.j == 0 ? T(1) : T(m0.value(k) / m0.value(k - term.j));
                const auto &du = derivs.get(term.alpha, k, sol.coefficients.at(k));
                acc -= (a * du) * weight;
            }
        }
        acc *= m0.value(n - M) / m0.value(n);
        sol.coefficients.push_back(std::move(acc));
    }

    for (std::size_t j = 0; j < M && j <= N; ++j) {
        const auto trace = initial_trace(sol.coefficients, j, pde.m0);
        bool ok = trace == p.initial[j];
        if constexpr (!is_exact_v<T>) {
            const T one(1);
            const T err = ell1_norm(trace - p.initial[j], one);
            ok = err <= ell1_norm(p.initial[j], one) * pow_rational<T>(T(2), -Rational(sol.provenance.precision_bits / 2));
        }
        if (!ok) {
            throw Error("initial condition " + std::to_string(j) + " is not reproduced by the solution");
        }
    }

    if (N >= M) {
        auto [res, rel] = residual_parts(p, sol.coefficients);
        sol.residual_max = res;
        sol.residual_relative = rel;
    }
    return sol;
}

} // namespace gevrey

#endif
