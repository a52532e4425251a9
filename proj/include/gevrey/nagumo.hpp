#ifndef GEVREY_NAGUMO_HPP
#define GEVREY_NAGUMO_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gevrey/series.hpp"
#include "gevrey/solver.hpp"

namespace gevrey
{

// Parameters of the modified Nagumo norm ||f||_{alpha,r,s}. alpha is either
// all-positive or zero (the l1 case); mixed multi-indices are rejected.
template <Scalar T>
struct NagumoParams {
    MultiIndex alpha;
    T r;
    std::vector<Rational> s;
};

template <Scalar T>
struct NormValue {
    T value{0};
    // Computed from a truncated series: only a lower bound for the true norm.
    bool lower_bound = false;
};

// Coefficient (n+a)!^s / n!^s of Theta_s^{(a)}.
template <Scalar T>
T theta_coeff(const Rational &s, std::uint32_t a, std::uint32_t n)
{
    Integer rising = 1;
    for (std::uint32_t k = n + 1; k <= n + a; ++k) {
        rising *= k;
    }
    return pow_rational<T>(from_integer<T>(rising), s);
}

template <Scalar T>
void check_params(const NagumoParams<T> &p, std::size_t num_vars)
{
    if (p.alpha.size() != num_vars || p.s.size() != num_vars) {
        throw DimensionError("Nagumo parameters do not match the number of variables");
    }
    if (!p.alpha.is_zero() && !p.alpha.all_positive()) {
        throw ParameterError("Nagumo norm needs alpha in N^N (all components >= 1) or alpha = 0, got "
                             + p.alpha.str());
    }
    if (p.r <= 0) {
        throw ParameterError("Nagumo norm needs r > 0");
    }
    for (const auto &si : p.s) {
        if (si < 1) {
            throw ParameterError("Nagumo norm needs every s_i >= 1");
        }
    }
}

// For alpha in N^N: the least A with
//   f << A prod_i Theta_{s_i}^{(alpha_i - 1)}(z_i / r) / (r^{alpha_i} (alpha_i - 1)!^{s_i}),
// i.e. max over gamma of |f_gamma| r^{|gamma|+|alpha|} prod_i C(gamma_i+alpha_i-1, gamma_i)^{-s_i}.
// For alpha = 0: the weighted l1 norm.
template <Scalar T>
NormValue<T> nagumo_norm(const PolySeries<T> &f, const NagumoParams<T> &p)
{
    check_params(p, f.num_vars());
    NormValue<T> out;
    out.lower_bound = !f.exact();
    if (p.alpha.is_zero()) {
        out.value = ell1_norm(f, p.r);
        return out;
    }
    const T r_alpha = pow_rational<T>(p.r, Rational(static_cast<long>(p.alpha.total())));
    for (const auto &[gamma, c] : f.terms()) {
        T weight = abs_value(c) * r_alpha * pow_rational<T>(p.r, Rational(static_cast<long>(gamma.total())));
        for (std::size_t i = 0; i < gamma.size(); ++i) {
            const Integer b = binomial(gamma[i] + p.alpha[i] - 1, gamma[i]);
            weight /= pow_rational<T>(from_integer<T>(b), p.s[i]);
        }
        if (weight > out.value) {
            out.value = weight;
        }
    }
    return out;
}

template <Scalar T>
NormValue<T> nagumo_norm(const PolySeries<T> &f, const MultiIndex &alpha, const T &r, const std::vector<Rational> &s)
{
    return nagumo_norm(f, NagumoParams<T>{alpha, r, s});
}

namespace detail
{

// lhs <= rhs, exactly for rationals and with relative slack 1e-12 otherwise.
template <Scalar T>
bool within(const T &lhs, const T &rhs)
{
    if constexpr (is_exact_v<T>) {
        return lhs <= rhs;
    } else {
        return lhs <= rhs + abs_value(rhs) * BigFloat("1e-12");
    }
}

template <Scalar T>
void require_exact_input(const PolySeries<T> &f)
{
    if (!f.exact()) {
        throw ParameterError("lemma checks run on exactly represented (polynomial) inputs only");
    }
}

} // namespace detail

struct VandermondeReport {
    std::uint32_t p = 0;
    std::uint32_t q = 0;
    std::size_t n_max = 0;
    bool passed = true;
    std::optional<std::size_t> first_failure;
};

// sum_k C(k+p-1, k) C(n-k+q-1, n-k) = C(n+p+q-1, n) for all n <= n_max.
VandermondeReport check_vandermonde(std::uint32_t p, std::uint32_t q, std::size_t n_max);

// ||f g||_{alpha+beta} <= ||f||_alpha ||g||_beta; with beta = 0 the right
// factor is the l1 norm of g.
template <Scalar T>
bool check_submultiplicative(const PolySeries<T> &f, const PolySeries<T> &g, const MultiIndex &alpha,
                             const MultiIndex &beta, const T &r, const std::vector<Rational> &s)
{
    detail::require_exact_input(f);
    detail::require_exact_input(g);
    const auto lhs = nagumo_norm(f * g, alpha + beta, r, s).value;
    const auto rhs = nagumo_norm(f, alpha, r, s).value * nagumo_norm(g, beta, r, s).value;
    return detail::within(lhs, rhs);
}

// ||d_{m_j, z_j} f||_{alpha+e_j} <= C alpha_j^{s_j} ||f||_alpha, with C the
// upper regularity constant of m_j scanned over the degrees of f.
template <Scalar T>
bool check_derivative_bound(const PolySeries<T> &f, std::size_t axis, const MultiIndex &alpha, const T &r,
                            const std::vector<Rational> &s, const MomentSequence &m_j)
{
    detail::require_exact_input(f);
    if (!alpha.all_positive()) {
        throw ParameterError("derivative bound needs alpha in N^N");
    }
    if (axis >= f.num_vars()) {
        throw DimensionError("derivative axis out of range");
    }
    const auto deg = static_cast<std::size_t>(std::max<Degree>(1, f.max_exponent(axis)));
    const T C = regularity_constants<T>(m_j, deg).C;
    const auto df = moment_derive_z(f, axis, m_j);
    const T lhs = nagumo_norm(df, alpha + MultiIndex::unit(f.num_vars(), axis), r, s).value;
    const T rhs = C * pow_rational<T>(T(static_cast<long>(alpha[axis])), s[axis]) * nagumo_norm(f, alpha, r, s).value;
    return detail::within(lhs, rhs);
}

// ||f||_{alpha+beta} <= r^{|beta|} ||f||_alpha for alpha in N^N or 0, beta in N^N.
template <Scalar T>
bool check_shift_bound(const PolySeries<T> &f, const MultiIndex &alpha, const MultiIndex &beta, const T &r,
                       const std::vector<Rational> &s)
{
    detail::require_exact_input(f);
    if (!beta.all_positive()) {
        throw ParameterError("shift bound needs beta in N^N");
    }
    const T lhs = nagumo_norm(f, alpha + beta, r, s).value;
    const T rhs = pow_rational<T>(r, Rational(static_cast<long>(beta.total()))) * nagumo_norm(f, alpha, r, s).value;
    return detail::within(lhs, rhs);
}

struct SupBoundConstant {
    BigFloat epsilon;
    BigFloat A;
};

// A = max{1, (1+eps)^{|s|} / (eps^{|s|} [r - (1+eps)^{|s|-N} rho])} for an
// admissible eps (rho (1+eps)^{|s|-N} < r). Without an explicit eps the
// midpoint of the admissible interval is used, or eps = 1 when every s_i = 1
// and all eps > 0 are admissible.
SupBoundConstant sup_bound_constant(const BigFloat &rho, const BigFloat &r, const std::vector<Rational> &s,
                                    std::optional<BigFloat> epsilon = std::nullopt);

// Deterministic points on the torus |z_i| = rho, as angles in [0, 2 pi).
std::vector<std::vector<BigFloat>> torus_angles(std::size_t num_vars, std::size_t count);

// sup over |z_i| < rho of |f| <= A^{|alpha|} ||f||_{alpha,r,s}, checked at
// sample_count torus points and through the l1(rho) majorant.
template <Scalar T>
bool check_sup_bound(const PolySeries<T> &f, const MultiIndex &alpha, const T &rho, const T &r,
                     const std::vector<Rational> &s, std::size_t sample_count,
                     std::optional<BigFloat> epsilon = std::nullopt)
{
    detail::require_exact_input(f);
    if (rho <= 0 || rho >= r) {
        throw ParameterError("sup bound needs 0 < rho < r");
    }
    const auto k = sup_bound_constant(to_bigfloat(rho), to_bigfloat(r), s, epsilon);
    const BigFloat bound = boost::multiprecision::pow(k.A, static_cast<long>(alpha.total()))
                           * to_bigfloat(nagumo_norm(f, alpha, r, s).value);
    const BigFloat slack = bound * BigFloat("1e-12");

    if (to_bigfloat(ell1_norm(f, rho)) > bound + slack) {
        return false;
    }
    const BigFloat rho_f = to_bigfloat(rho);
    for (const auto &theta : torus_angles(f.num_vars(), sample_count)) {
        BigFloat re = 0;
        BigFloat im = 0;
        for (const auto &[gamma, c] : f.terms()) {
            BigFloat phase = 0;
            for (std::size_t i = 0; i < gamma.size(); ++i) {
                phase += theta[i] * static_cast<unsigned long>(gamma[i]);
            }
            const BigFloat mag = to_bigfloat(c) * boost::multiprecision::pow(rho_f, static_cast<long>(gamma.total()));
            re += mag * boost::multiprecision::cos(phase);
            im += mag * boost::multiprecision::sin(phase);
        }
        if (boost::multiprecision::sqrt(re * re + im * im) > bound + slack) {
            return false;
        }
    }
    return true;
}

// v_0 = ||u_0||_{0,r,s} and v_n = ||u_n||_{n alpha0, r, s} for n >= 1.
template <Scalar T>
std::vector<NormValue<T>> nagumo_profile(const FormalSolution<T> &sol, const MultiIndex &alpha0, const T &r,
                                         const std::vector<Rational> &s)
{
    if (!alpha0.all_positive()) {
        throw ParameterError("nagumo_profile needs an all-positive alpha0");
    }
    std::vector<NormValue<T>> out;
    for (std::size_t n = 0; n < sol.coefficients.stored(); ++n) {
        const auto &un = sol.u(n);
        const MultiIndex alpha = n == 0 ? MultiIndex(alpha0.size()) : static_cast<std::uint32_t>(n) * alpha0;
        if (un.region_empty()) {
            out.push_back({T(0), true});
            continue;
        }
        out.push_back(nagumo_norm(un, alpha, r, s));
    }
    return out;
}

// Randomised sweep over every norm lemma.
struct LemmaTally {
    std::string name;
    std::size_t instances = 0;
    std::size_t passed = 0;
    std::vector<std::size_t> failed_instances;

    bool ok() const { return instances == passed; }
};

struct LemmaBatteryConfig {
    std::uint64_t seed = 7;
    std::size_t instances = 1000;
    std::uint32_t max_degree = 6;
    std::size_t max_vars = 3;
    std::uint32_t vandermonde_pq = 10;
    std::size_t vandermonde_n = 50;
    std::size_t unit_norm_cases = 20;
    std::size_t sup_samples = 64;
    unsigned precision_bits = kDefaultPrecisionBits;
};

struct LemmaBatteryReport {
    LemmaBatteryConfig config;
    LemmaTally vandermonde;
    LemmaTally submultiplicative;
    LemmaTally derivative_bound;
    LemmaTally shift_bound;
    LemmaTally sup_bound;
    LemmaTally unit_norm;

    std::vector<const LemmaTally *> tallies() const
    {
        return {&vandermonde, &submultiplicative, &derivative_bound, &shift_bound, &sup_bound, &unit_norm};
    }

    bool ok() const
    {
        for (const auto *t : tallies()) {
            if (!t->ok()) {
                return false;
            }
        }
        return true;
    }
};

LemmaBatteryReport run_lemma_battery(const LemmaBatteryConfig &config);

} // namespace gevrey

#endif
