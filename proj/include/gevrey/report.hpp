#ifndef GEVREY_REPORT_HPP
#define GEVREY_REPORT_HPP

#include <json.hpp>

#include "gevrey/estimator.hpp"
#include "gevrey/nagumo.hpp"
#include "gevrey/polygon.hpp"
#include "gevrey/solver.hpp"

namespace gevrey
{

using Json = nlohmann::ordered_json;

template <Scalar T>
Json scalar_json(const T &x)
{
    return to_string(x);
}

Json degrees_json(const std::vector<Degree> &d);
Json point_json(const Point &p);
Json polygon_json(const NewtonPolygon &np);
Json theorem_json(const TheoremReport &rep);
Json fit_json(const OrderFit &fit);
Json battery_json(const LemmaBatteryReport &rep);
Json validation_json(const ValidationReport &rep);

template <Scalar T>
Json series_json(const PolySeries<T> &f)
{
    Json terms = Json::array();
    for (const auto &[gamma, c] : f.terms()) {
        terms.push_back({{"z_powers", gamma.components()}, {"value", scalar_json(c)}});
    }
    return {{"valid_degree", degrees_json(f.valid_degree())}, {"terms", std::move(terms)}};
}

template <Scalar T>
Json solution_json(const FormalSolution<T> &sol)
{
    Json out;
    out["backend"] = std::string(backend_name(sol.provenance.backend));
    if (sol.provenance.backend == Backend::bigfloat) {
        out["precision_bits"] = sol.provenance.precision_bits;
    }
    out["t_order"] = sol.provenance.t_order;
    out["z_degree"] = degrees_json(sol.provenance.z_degree);
    out["q"] = sol.q_table;
    out["residual_max"] = scalar_json(sol.residual_max);
    out["residual_relative"] = scalar_json(sol.residual_relative);
    out["exhausted"] = sol.exhausted();
    Json at_zero = Json::array();
    Json coeffs = Json::array();
    for (std::size_t n = 0; n < sol.coefficients.stored(); ++n) {
        const auto &un = sol.u(n);
        const MultiIndex zero(un.num_vars());
        at_zero.push_back(un.in_region(zero) ? scalar_json(un.coeff(zero)) : Json());
        coeffs.push_back(series_json(un));
    }
    out["u_at_zero"] = std::move(at_zero);
    out["coefficients"] = std::move(coeffs);
    return out;
}

} // namespace gevrey

#endif
