#include "gevrey/estimator.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace gevrey
{

FitWindow default_window(std::size_t n_max)
{
    return {(n_max + 1) / 2, n_max};
}

OrderFit estimate_order_log(const std::vector<std::optional<double>> &log_norms, std::optional<FitWindow> window)
{
    if (log_norms.size() < 2) {
        throw FitError("need norms for at least n = 0, 1");
    }
    const std::size_t n_max = log_norms.size() - 1;
    const FitWindow w = window.value_or(default_window(n_max));
    if (w.first < 1 || w.last > n_max || w.first > w.last) {
        throw FitError("fit window [" + std::to_string(w.first) + ", " + std::to_string(w.last)
                       + "] is not inside [1, " + std::to_string(n_max) + "]");
    }

    OrderFit fit;
    fit.window = w;
    for (std::size_t n = w.first; n <= w.last; ++n) {
        if (log_norms[n]) {
            fit.points.push_back(n);
        }
    }
    if (fit.points.empty()) {
        // All-zero tail: a polynomial, hence convergent.
        return fit;
    }
    if (fit.points.size() < 5) {
        throw FitError("fit needs at least 5 positive norms in the window, found " + std::to_string(fit.points.size()));
    }

    const auto rows = static_cast<Eigen::Index>(fit.points.size());
    Eigen::MatrixXd X(rows, 3);
    Eigen::VectorXd y(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto n = static_cast<double>(fit.points[static_cast<std::size_t>(i)]);
        X(i, 0) = 1.0;
        X(i, 1) = n;
        X(i, 2) = std::lgamma(n + 1.0);
        y(i) = *log_norms[fit.points[static_cast<std::size_t>(i)]];
    }
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    if (qr.rank() < 3) {
        throw FitError("degenerate design matrix; widen the fit window");
    }
    const Eigen::VectorXd beta = qr.solve(y);
    fit.logA_hat = beta(0);
    fit.logB_hat = beta(1);
    fit.s_raw = beta(2);
    fit.s_hat = std::max(0.0, fit.s_raw);
    fit.rms_residual = std::sqrt((X * beta - y).squaredNorm() / static_cast<double>(rows));
    return fit;
}

MultiIndex alpha0(const OperatorShape &shape)
{
    const std::size_t nv = shape.s.size();
    std::vector<Rational> best(nv, Rational(0));
    for (const auto &t : shape.terms) {
        const long q = t.q(shape.M);
        if (q < 1) {
            throw ValidationError("alpha0 needs ord_t - j + M >= 1 for every term");
        }
        for (std::size_t k = 0; k < nv; ++k) {
            best[k] = std::max(best[k], Rational(static_cast<long>(t.alpha[k]), q));
        }
    }
    MultiIndex a(nv);
    for (std::size_t k = 0; k < nv; ++k) {
        const Integer fl = boost::multiprecision::numerator(best[k]) / boost::multiprecision::denominator(best[k]);
        a[k] = fl.convert_to<std::uint32_t>() + 1;
    }
    return a;
}

std::string_view norm_mode_name(NormMode m)
{
    return m == NormMode::nagumo_profile ? "nagumo_profile" : "sup_proxy";
}

NormMode norm_mode_from_name(std::string_view name)
{
    if (name == "nagumo_profile") {
        return NormMode::nagumo_profile;
    }
    if (name == "sup_proxy") {
        return NormMode::sup_proxy;
    }
    throw ParameterError("unknown norm mode '" + std::string(name) + "' (expected nagumo_profile or sup_proxy)");
}

} // namespace gevrey
