#ifndef GEVREY_ESTIMATOR_HPP
#define GEVREY_ESTIMATOR_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gevrey/nagumo.hpp"
#include "gevrey/polygon.hpp"
#include "gevrey/solver.hpp"

namespace gevrey
{

struct FitWindow {
    std::size_t first = 0;
    std::size_t last = 0;
};

// [ceil(n_max / 2), n_max]
FitWindow default_window(std::size_t n_max);

// Least-squares fit of log v_n = logA + n logB + s log n!.
struct OrderFit {
    // max(0, s_raw): Gevrey orders are nonnegative, a negative coefficient
    // means faster-than-geometric decay.
    double s_hat = 0;
    double s_raw = 0;
    double logB_hat = 0;
    double logA_hat = 0;
    FitWindow window;
    double rms_residual = 0;
    // Indices that entered the fit (positive norms inside the window).
    std::vector<std::size_t> points;
};

// log_norms[n] is log v_n, or empty when v_n = 0.
OrderFit estimate_order_log(const std::vector<std::optional<double>> &log_norms, std::optional<FitWindow> window = {});

template <Scalar T>
OrderFit estimate_order(const std::vector<T> &norms, std::optional<FitWindow> window = {})
{
    std::vector<std::optional<double>> logs;
    logs.reserve(norms.size());
    for (const auto &v : norms) {
        if (v < 0) {
            throw ParameterError("norms must be nonnegative");
        }
        if (v == 0) {
            logs.emplace_back();
        } else {
            logs.emplace_back(log_of(v).template convert_to<double>());
        }
    }
    return estimate_order_log(logs, window);
}

// alpha0_k = floor(max over terms of alpha_k / q) + 1.
MultiIndex alpha0(const OperatorShape &shape);

template <Scalar T>
MultiIndex alpha0(const MomentPDE<T> &pde)
{
    return alpha0(pde.shape());
}

enum class NormMode { nagumo_profile, sup_proxy };

std::string_view norm_mode_name(NormMode m);
NormMode norm_mode_from_name(std::string_view name);

struct EstimationConfig {
    NormMode mode = NormMode::sup_proxy;
    Rational r{1, 2};
    Rational rho{1, 4};
    std::optional<FitWindow> window;
    double tolerance = 0.15;
};

struct TheoremReport {
    Rational k1_inverse;
    NormMode mode = NormMode::sup_proxy;
    MultiIndex alpha0;
    OrderFit fit;
    double tolerance = 0.15;
    // Entries of the norm profile, log v_n (empty where v_n = 0).
    std::vector<std::optional<double>> log_norms;
    // Some profile entries come from truncated data.
    bool lower_bound = false;
    bool verdict = false;
};

namespace detail
{

template <Scalar T>
std::vector<NormValue<T>> profile(const FormalSolution<T> &sol, const std::vector<Rational> &s, const MultiIndex &a0,
                                  const EstimationConfig &cfg)
{
    if (cfg.mode == NormMode::nagumo_profile) {
        return nagumo_profile(sol, a0, from_rational<T>(cfg.r), s);
    }
    const T rho = from_rational<T>(cfg.rho);
    if (rho <= 0) {
        throw ParameterError("rho must be positive");
    }
    std::vector<NormValue<T>> out;
    for (std::size_t n = 0; n < sol.coefficients.stored(); ++n) {
        const auto &un = sol.u(n);
        out.push_back({ell1_norm(un, rho), !un.exact()});
    }
    return out;
}

} // namespace detail

template <Scalar T>
TheoremReport verify_theorem(const CauchyProblem<T> &p, const FormalSolution<T> &sol,
                             const EstimationConfig &cfg = {})
{
    const auto shape = p.pde.shape();
    TheoremReport rep;
    rep.k1_inverse = k1_inverse(shape);
    rep.mode = cfg.mode;
    rep.alpha0 = alpha0(shape);
    rep.tolerance = cfg.tolerance;

    std::vector<T> values;
    for (const auto &v : detail::profile(sol, p.pde.s(), rep.alpha0, cfg)) {
        rep.lower_bound = rep.lower_bound || v.lower_bound;
        values.push_back(v.value);
        rep.log_norms.push_back(v.value == 0 ? std::nullopt
                                             : std::optional<double>(log_of(v.value).template convert_to<double>()));
    }
    rep.fit = estimate_order_log(rep.log_norms, cfg.window);
    rep.verdict = rep.fit.s_hat <= to_double(rep.k1_inverse) + cfg.tolerance;
    return rep;
}

} // namespace gevrey

#endif
