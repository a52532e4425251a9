#include "gevrey/report.hpp"

namespace gevrey
{

Json degrees_json(const std::vector<Degree> &d)
{
    Json out = Json::array();
    for (const auto v : d) {
        if (v == kUnbounded) {
            out.push_back("inf");
        } else {
            out.push_back(v);
        }
    }
    return out;
}

Json point_json(const Point &p)
{
    return Json::array({rational_to_string(p.x), rational_to_string(p.y)});
}

Json polygon_json(const NewtonPolygon &np)
{
    Json out;
    out["k1_inverse"] = rational_to_string(np.k1_inverse);
    out["principal"] = point_json(np.principal);
    Json support = Json::array();
    for (const auto &sp : np.support_points) {
        Json e;
        e["point"] = point_json(sp.at);
        e["term"] = sp.term ? Json(*sp.term) : Json();
        support.push_back(std::move(e));
    }
    out["support_points"] = std::move(support);
    Json vertices = Json::array();
    for (const auto &v : np.vertices) {
        vertices.push_back(point_json(v));
    }
    out["vertices"] = std::move(vertices);
    Json segments = Json::array();
    for (const auto &s : np.segments) {
        segments.push_back(
            {{"start", point_json(s.start)}, {"end", point_json(s.end)}, {"slope", rational_to_string(s.slope)}});
    }
    out["segments"] = std::move(segments);
    out["k1_terms"] = np.k1_terms;
    return out;
}

Json fit_json(const OrderFit &fit)
{
    Json out;
    out["s_hat"] = fit.s_hat;
    out["s_raw"] = fit.s_raw;
    out["logB_hat"] = fit.logB_hat;
    out["logA_hat"] = fit.logA_hat;
    out["window"] = {fit.window.first, fit.window.last};
    out["rms_residual"] = fit.rms_residual;
    out["points"] = fit.points.size();
    return out;
}

Json theorem_json(const TheoremReport &rep)
{
    Json out;
    out["k1_inverse"] = rational_to_string(rep.k1_inverse);
    out["s_hat"] = rep.fit.s_hat;
    out["window"] = {rep.fit.window.first, rep.fit.window.last};
    out["rms_residual"] = rep.fit.rms_residual;
    out["verdict"] = rep.verdict ? "PASS" : "FAIL";
    out["s_raw"] = rep.fit.s_raw;
    out["logB_hat"] = rep.fit.logB_hat;
    out["logA_hat"] = rep.fit.logA_hat;
    out["mode"] = std::string(norm_mode_name(rep.mode));
    out["alpha0"] = rep.alpha0.components();
    out["tolerance"] = rep.tolerance;
    out["lower_bound"] = rep.lower_bound;
    return out;
}

Json battery_json(const LemmaBatteryReport &rep)
{
    Json out;
    out["seed"] = rep.config.seed;
    out["instances"] = rep.config.instances;
    Json lemmas = Json::array();
    for (const auto *t : rep.tallies()) {
        lemmas.push_back({{"name", t->name},
                          {"instances", t->instances},
                          {"passed", t->passed},
                          {"failed_instances", t->failed_instances},
                          {"verdict", t->ok() ? "PASS" : "FAIL"}});
    }
    out["lemmas"] = std::move(lemmas);
    out["verdict"] = rep.ok() ? "PASS" : "FAIL";
    return out;
}

Json validation_json(const ValidationReport &rep)
{
    Json checks = Json::array();
    for (const auto &c : rep.checks) {
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    return {{"passed", rep.passed()}, {"checks", std::move(checks)}, {"warnings", rep.warnings}};
}

} // namespace gevrey
