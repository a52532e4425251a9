#include "gevrey/pde.hpp"

namespace gevrey
{

bool ValidationReport::analysis_only() const
{
    for (const auto &c : checks) {
        if (!c.passed && c.name != "(a) s in [1,inf)^N") {
            return false;
        }
    }
    return !passed();
}

const ValidationCheck *ValidationReport::find(std::string_view name) const
{
    for (const auto &c : checks) {
        if (c.name == name) {
            return &c;
        }
    }
    return nullptr;
}

ValidationReport validate_shape(const OperatorShape &shape)
{
    ValidationReport report;

    ValidationCheck a{"(a) s in [1,inf)^N", true, ""};
    for (std::size_t i = 0; i < shape.s.size(); ++i) {
        if (shape.s[i] < 1) {
            a.passed = false;
            a.detail = "s_" + std::to_string(i + 1) + " = " + rational_to_string(shape.s[i])
                       + " < 1; only the Newton polygon is meaningful (analysis-only)";
        }
    }
    report.checks.push_back(a);

    ValidationCheck c{"(c) ord_t(a) >= max(0, j-M+1)", true, ""};
    ValidationCheck q{"q_{j,alpha} >= 1", true, ""};
    for (std::size_t i = 0; i < shape.terms.size(); ++i) {
        const auto &t = shape.terms[i];
        const long bound = std::max(0L, static_cast<long>(t.j) - static_cast<long>(shape.M) + 1);
        if (static_cast<long>(t.ord_t) < bound) {
            c.passed = false;
            c.detail = "term " + std::to_string(i) + " (j=" + std::to_string(t.j) + ", alpha=" + t.alpha.str()
                       + "): ord_t = " + std::to_string(t.ord_t) + " < " + std::to_string(bound);
        }
        if (t.q(shape.M) < 1) {
            q.passed = false;
            q.detail = "term " + std::to_string(i) + ": q = " + std::to_string(t.q(shape.M));
        }
    }
    report.checks.push_back(c);
    report.checks.push_back(q);

    if (shape.s0 == 0) {
        report.warnings.push_back("s0 = 0: the Newton polygon construction assumes sequences of positive order");
    }
    return report;
}

} // namespace gevrey
