#include <doctest.h>

#include <fstream>
#include <sstream>

#include "gevrey/problem.hpp"
#include "gevrey/report.hpp"
#include "gevrey/svg.hpp"

using namespace gevrey;

namespace
{

std::string data_path(const std::string &name)
{
    return std::string(GEVREY_TEST_DATA) + "/" + name;
}

std::string read_file(const std::string &path)
{
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

const char *const fixtures[] = {"heat.json",           "heat_exp.json",      "valuation_shift.json",
                                "fractional.json",     "q_difference.json", "two_variables.json"};

// Expects a ParseError and returns it.
ParseError parse_error(const std::string &text)
{
    try {
        parse_problem(text);
    } catch (const ParseError &e) {
        return e;
    }
    FAIL("no ParseError for: " << text);
    return ParseError("", "");
}

} // namespace

TEST_CASE("heat fixture parses and builds")
{
    const auto spec = load_problem(data_path("heat.json"));
    CHECK(spec.variables == 1);
    CHECK(spec.M == 1);
    REQUIRE(spec.terms.size() == 1);
    CHECK(spec.terms[0].alpha == MultiIndex{2});
    CHECK(spec.terms[0].coefficient[0].value == -1);
    CHECK(spec.truncation.t_order == 40);
    CHECK(spec.truncation.z_degree == std::vector<Degree>{120});
    CHECK(spec.estimation.r == Rational(1, 2));
    CHECK(spec.backend() == Backend::rational);
    CHECK(k1_inverse(spec.shape()) == 1);

    const auto p = build_problem<Rational>(spec);
    CHECK(validate(p).passed());
    CHECK(p.initial[0].coeff(MultiIndex{120}) == 1);
    CHECK(p.initial[0].valid_degree() == std::vector<Degree>{120});
}

TEST_CASE("exact rational scalars")
{
    CHECK(parse_rational("-1") == -1);
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-6/8") == Rational(-3, 4));
    CHECK_THROWS_AS(parse_rational("1/0"), ParameterError);
    CHECK(parse_rational("0.125") == Rational(1, 8));
    CHECK(parse_rational("2.5e-1") == Rational(1, 4));
    CHECK(parse_rational("010/09") == Rational(10, 9));
    CHECK(parse_rational("000") == 0);
    CHECK_THROWS_AS(parse_rational("1/2/3"), ParameterError);
    CHECK_THROWS_AS(parse_rational(""), ParameterError);
}

TEST_CASE("schema errors carry a path")
{
    auto j = nlohmann::json::parse(read_file(data_path("heat.json")));
    j.erase("M");
    const auto e = parse_error(j.dump(2));
    CHECK(e.path() == "/M");
    CHECK(std::string(e.what()).find("/M") != std::string::npos);

    auto u = nlohmann::json::parse(read_file(data_path("heat.json")));
    u["terms"][0]["colour"] = 1;
    const auto eu = parse_error(u.dump(2));
    CHECK(eu.path() == "/terms/0/colour");
    CHECK(eu.line() > 1);

    auto bad = nlohmann::json::parse(read_file(data_path("heat.json")));
    bad["terms"][0]["coefficient"][0]["value"] = "1/x";
    CHECK(parse_error(bad.dump(2)).path() == "/terms/0/coefficient/0/value");
}

TEST_CASE("syntax errors carry line and column")
{
    const auto e = parse_error("{\n  \"variables\": 1,\n  \"M\": ]\n}");
    CHECK(e.line() == 3);
    CHECK(e.column() == 8);
    CHECK(std::string(e.what()).rfind("<input>:3:8: ", 0) == 0);
}

TEST_CASE("declared valuation must match the data")
{
    auto j = nlohmann::json::parse(read_file(data_path("heat.json")));
    j["terms"][0]["ord_t"] = 1;
    const auto spec = parse_problem(j.dump());
    CHECK_THROWS_AS(build_problem<Rational>(spec), ValidationError);
}

TEST_CASE("fixtures round-trip through the emitter")
{
    for (const char *name : fixtures) {
        INFO(name);
        const auto spec = load_problem(data_path(name));
        const auto text = emit_problem(spec);
        const auto again = parse_problem(text);
        CHECK(again == spec);
        CHECK(emit_problem(again) == text);
    }
}

TEST_CASE("backend selection")
{
    CHECK(load_problem(data_path("fractional.json")).backend() == Backend::bigfloat);
    CHECK(load_problem(data_path("q_difference.json")).backend() == Backend::rational);
    auto j = nlohmann::json::parse(read_file(data_path("heat.json")));
    j["numerics"]["backend"] = "bigfloat";
    CHECK(parse_problem(j.dump()).backend() == Backend::bigfloat);
    j["numerics"]["backend"] = "decimal";
    CHECK_THROWS_AS(parse_problem(j.dump()), ParseError);
}

TEST_CASE("reports")
{
    const auto spec = load_problem(data_path("heat.json"));
    auto small = spec;
    small.truncation = {4, {8}};
    const auto p = build_problem<Rational>(small);
    const auto sol = solve(p);
    const auto js = solution_json(sol);
    CHECK(js["u_at_zero"] == Json::array({"1", "2", "12", "120", "1680"}));
    CHECK(js["backend"] == "rational");
    CHECK(js["coefficients"][4]["valid_degree"] == Json::array({0}));

    const auto pj = polygon_json(build_polygon(spec.shape()));
    CHECK(pj["k1_inverse"] == "1");

    const auto rep = verify_theorem(build_problem<Rational>(spec), solve(build_problem<Rational>(spec)),
                                    spec.estimation.config());
    const auto tj = theorem_json(rep);
    CHECK(tj["verdict"] == "PASS");
    CHECK(tj.begin().key() == "k1_inverse");
}

TEST_CASE("SVG output is deterministic")
{
    const auto np = build_polygon(load_problem(data_path("two_variables.json")).shape());
    const auto a = render_svg(np, default_clip(np));
    CHECK(a == render_svg(np, default_clip(np)));
    CHECK(a.find("<svg") != std::string::npos);
    CHECK(a.find("</svg>") != std::string::npos);
}
