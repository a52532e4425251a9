#include "gevrey/problem.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace gevrey
{

using nlohmann::json;
using nlohmann::ordered_json;

namespace
{

// Byte offset of the value at a JSON pointer inside already-validated JSON
// text. Falls back to the deepest existing ancestor.
class Locator
{
public:
    explicit Locator(std::string_view text) : text_(text) {}

    std::size_t find(const json::json_pointer &ptr) const
    {
        std::vector<std::string> tokens;
        for (auto p = ptr; !p.empty(); p = p.parent_pointer()) {
            tokens.insert(tokens.begin(), p.back());
        }
        std::size_t i = skip_ws(0);
        for (const auto &tok : tokens) {
            const auto next = child(i, tok);
            if (!next) {
                break;
            }
            i = *next;
        }
        return i;
    }

private:
    std::size_t skip_ws(std::size_t i) const
    {
        while (i < text_.size() && (text_[i] == ' ' || text_[i] == '\t' || text_[i] == '\n' || text_[i] == '\r')) {
            ++i;
        }
        return i;
    }

    std::size_t skip_string(std::size_t i) const
    {
        for (++i; i < text_.size() && text_[i] != '"'; ++i) {
            if (text_[i] == '\\') {
                ++i;
            }
        }
        return i + 1;
    }

    std::size_t skip_value(std::size_t i) const
    {
        if (i >= text_.size()) {
            return i;
        }
        if (text_[i] == '"') {
            return skip_string(i);
        }
        if (text_[i] == '{' || text_[i] == '[') {
            int depth = 0;
            for (; i < text_.size(); ++i) {
                const char c = text_[i];
                if (c == '"') {
                    i = skip_string(i) - 1;
                } else if (c == '{' || c == '[') {
                    ++depth;
                } else if (c == '}' || c == ']') {
                    if (--depth == 0) {
                        return i + 1;
                    }
                }
            }
            return i;
        }
        while (i < text_.size() && text_[i] != ',' && text_[i] != '}' && text_[i] != ']' && text_[i] != ' '
               && text_[i] != '\n' && text_[i] != '\r' && text_[i] != '\t') {
            ++i;
        }
        return i;
    }

    std::optional<std::size_t> child(std::size_t i, const std::string &tok) const
    {
        if (i >= text_.size()) {
            return std::nullopt;
        }
        if (text_[i] == '{') {
            i = skip_ws(i + 1);
            while (i < text_.size() && text_[i] == '"') {
                const std::size_t end = skip_string(i);
                const auto key = json::parse(text_.substr(i, end - i)).get<std::string>();
                i = skip_ws(end);
                i = skip_ws(i + 1); // ':'
                if (key == tok) {
                    return i;
                }
                i = skip_ws(skip_value(i));
                if (i < text_.size() && text_[i] == ',') {
                    i = skip_ws(i + 1);
                }
            }
            return std::nullopt;
        }
        if (text_[i] == '[') {
            std::size_t index = 0;
            try {
                index = std::stoul(tok);
            } catch (const std::exception &) {
                return std::nullopt;
            }
            i = skip_ws(i + 1);
            for (std::size_t k = 0; i < text_.size() && text_[i] != ']'; ++k) {
                if (k == index) {
                    return i;
                }
                i = skip_ws(skip_value(i));
                if (i < text_.size() && text_[i] == ',') {
                    i = skip_ws(i + 1);
                }
            }
        }
        return std::nullopt;
    }

    std::string_view text_;
};

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset)
{
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

class Reader
{
public:
    Reader(std::string_view text, std::string_view source) : text_(text), source_(source), locator_(text) {}

    [[noreturn]] void fail(const json::json_pointer &at, const std::string &message) const
    {
        const auto [line, col] = line_column(text_, locator_.find(at));
        throw ParseError(message, at.to_string().empty() ? "/" : at.to_string(), line, col, std::string(source_));
    }

    const json &field(const json &obj, const json::json_pointer &at, const std::string &key) const
    {
        if (!obj.contains(key)) {
            fail(at / key, "missing required field \"" + key + "\"");
        }
        return obj.at(key);
    }

    void expect_object(const json &v, const json::json_pointer &at, std::initializer_list<std::string_view> keys) const
    {
        if (!v.is_object()) {
            fail(at, "expected an object");
        }
        for (const auto &[k, _] : v.items()) {
            if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
                fail(at / k, "unknown field \"" + k + "\"");
            }
        }
    }

    void expect_array(const json &v, const json::json_pointer &at) const
    {
        if (!v.is_array()) {
            fail(at, "expected an array");
        }
    }

    std::size_t natural(const json &v, const json::json_pointer &at) const
    {
        if (!v.is_number_unsigned()) {
            fail(at, "expected a nonnegative integer");
        }
        return v.get<std::size_t>();
    }

    Rational rational(const json &v, const json::json_pointer &at) const
    {
        if (v.is_number_integer()) {
            return Rational(v.get<std::int64_t>());
        }
        if (!v.is_string()) {
            fail(at, "expected a rational as a string (\"p\", \"p/q\" or a decimal)");
        }
        try {
            return parse_rational(v.get<std::string>());
        } catch (const ParameterError &e) {
            fail(at, e.what());
        }
    }

    double real(const json &v, const json::json_pointer &at) const
    {
        if (v.is_number()) {
            return v.get<double>();
        }
        return rational(v, at).convert_to<double>();
    }

    std::string string(const json &v, const json::json_pointer &at) const
    {
        if (!v.is_string()) {
            fail(at, "expected a string");
        }
        return v.get<std::string>();
    }

    MultiIndex index(const json &v, const json::json_pointer &at, std::size_t n) const
    {
        expect_array(v, at);
        if (v.size() != n) {
            fail(at, "expected " + std::to_string(n) + " components, got " + std::to_string(v.size()));
        }
        MultiIndex out(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto c = natural(v[i], at / i);
            if (c > 1'000'000) {
                fail(at / i, "exponent too large");
            }
            out[i] = static_cast<std::uint32_t>(c);
        }
        return out;
    }

    MomentSequence sequence(const json &v, const json::json_pointer &at) const
    {
        if (!v.is_object()) {
            fail(at, "expected a moment sequence object");
        }
        const auto kind = string(field(v, at, "kind"), at / "kind");
        try {
            if (kind == "factorial_power" || kind == "gamma") {
                expect_object(v, at, {"kind", "s"});
                const Rational s = rational(field(v, at, "s"), at / "s");
                return kind == "gamma" ? MomentSequence::gamma(s) : MomentSequence::factorial_power(s);
            }
            if (kind == "q_factorial") {
                expect_object(v, at, {"kind", "q"});
                return MomentSequence::q_factorial(rational(field(v, at, "q"), at / "q"));
            }
            if (kind == "product" || kind == "quotient") {
                expect_object(v, at, {"kind", "lhs", "rhs"});
                const auto l = sequence(field(v, at, "lhs"), at / "lhs");
                const auto r = sequence(field(v, at, "rhs"), at / "rhs");
                return kind == "product" ? MomentSequence::product(l, r) : MomentSequence::quotient(l, r);
            }
            if (kind == "table") {
                expect_object(v, at, {"kind", "values", "order"});
                const auto &vals = field(v, at, "values");
                expect_array(vals, at / "values");
                std::vector<Rational> values;
                for (std::size_t i = 0; i < vals.size(); ++i) {
                    values.push_back(rational(vals[i], at / "values" / i));
                }
                return MomentSequence::table(std::move(values), rational(field(v, at, "order"), at / "order"));
            }
        } catch (const ParseError &) {
            throw;
        } catch (const Error &e) {
            fail(at, e.what());
        }
        fail(at / "kind", "unknown sequence kind \"" + kind + "\"");
    }

    std::vector<Monomial> monomials(const json &v, const json::json_pointer &at, std::size_t nv, bool with_t) const
    {
        expect_array(v, at);
        std::vector<Monomial> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const auto here = at / i;
            if (with_t) {
                expect_object(v[i], here, {"t_power", "z_powers", "value"});
            } else {
                expect_object(v[i], here, {"z_powers", "value"});
            }
            Monomial m;
            if (with_t && v[i].contains("t_power")) {
                m.t_power = natural(v[i]["t_power"], here / "t_power");
            }
            m.z = v[i].contains("z_powers") ? index(v[i]["z_powers"], here / "z_powers", nv) : MultiIndex(nv);
            m.value = rational(field(v[i], here, "value"), here / "value");
            out.push_back(std::move(m));
        }
        return out;
    }

    DataSpec data(const json &v, const json::json_pointer &at, std::size_t nv) const
    {
        DataSpec d;
        if (v.is_array()) {
            d.monomials = monomials(v, at, nv, false);
            return d;
        }
        expect_object(v, at, {"generator", "c", "monomials"});
        const auto gen = v.contains("generator") ? string(v["generator"], at / "generator") : std::string("poly");
        if (gen == "poly") {
            if (v.contains("c")) {
                fail(at / "c", "\"c\" applies to the geometric and exp generators only");
            }
            d.monomials = monomials(field(v, at, "monomials"), at / "monomials", nv, false);
            return d;
        }
        if (gen != "geometric" && gen != "exp") {
            fail(at / "generator", "unknown generator \"" + gen + "\" (expected poly, geometric or exp)");
        }
        if (v.contains("monomials")) {
            fail(at / "monomials", "monomials apply to the poly generator only");
        }
        d.kind = gen == "geometric" ? DataSpec::Kind::geometric : DataSpec::Kind::exp;
        if (v.contains("c")) {
            d.c = rational(v["c"], at / "c");
        }
        return d;
    }

    ProblemSpec problem(const json &root) const
    {
        const json::json_pointer top;
        expect_object(root, top,
                      {"variables", "moment", "M", "terms", "rhs", "initial", "truncation", "numerics", "estimation"});
        ProblemSpec spec;
        spec.variables = natural(field(root, top, "variables"), top / "variables");
        const std::size_t nv = spec.variables;
        if (nv == 0) {
            fail(top / "variables", "at least one space variable is required");
        }

        const auto mp = top / "moment";
        const auto &moment = field(root, top, "moment");
        expect_object(moment, mp, {"t", "z"});
        spec.m0 = sequence(field(moment, mp, "t"), mp / "t");
        const auto &z = field(moment, mp, "z");
        expect_array(z, mp / "z");
        if (z.size() != nv) {
            fail(mp / "z", "expected one sequence per variable (" + std::to_string(nv) + ")");
        }
        for (std::size_t i = 0; i < nv; ++i) {
            spec.m.push_back(sequence(z[i], mp / "z" / i));
        }

        spec.M = natural(field(root, top, "M"), top / "M");
        if (spec.M == 0) {
            fail(top / "M", "M must be positive");
        }

        const auto &terms = field(root, top, "terms");
        expect_array(terms, top / "terms");
        for (std::size_t i = 0; i < terms.size(); ++i) {
            const auto at = top / "terms" / i;
            expect_object(terms[i], at, {"j", "alpha", "coefficient", "ord_t"});
            TermSpec t;
            t.j = natural(field(terms[i], at, "j"), at / "j");
            t.alpha = index(field(terms[i], at, "alpha"), at / "alpha", nv);
            t.coefficient = monomials(field(terms[i], at, "coefficient"), at / "coefficient", nv, true);
            if (terms[i].contains("ord_t")) {
                t.ord_t = natural(terms[i]["ord_t"], at / "ord_t");
            }
            spec.terms.push_back(std::move(t));
        }

        if (root.contains("rhs")) {
            const auto at = top / "rhs";
            const auto &rhs = root["rhs"];
            if (rhs.is_array()) {
                spec.rhs.monomials = monomials(rhs, at, nv, true);
            } else {
                expect_object(rhs, at, {"monomials", "generator", "t_power"});
                if (rhs.contains("monomials")) {
                    spec.rhs.monomials = monomials(rhs["monomials"], at / "monomials", nv, true);
                }
                if (rhs.contains("generator")) {
                    spec.rhs.generator = data(rhs["generator"], at / "generator", nv);
                }
                if (rhs.contains("t_power")) {
                    spec.rhs.generator_t_power = natural(rhs["t_power"], at / "t_power");
                }
            }
        }

        const auto &initial = field(root, top, "initial");
        expect_array(initial, top / "initial");
        if (initial.size() != spec.M) {
            fail(top / "initial", "expected M = " + std::to_string(spec.M) + " initial functions, got "
                                      + std::to_string(initial.size()));
        }
        for (std::size_t i = 0; i < initial.size(); ++i) {
            spec.initial.push_back(data(initial[i], top / "initial" / i, nv));
        }

        const auto tp = top / "truncation";
        const auto &trunc = field(root, top, "truncation");
        expect_object(trunc, tp, {"t_order", "z_degree"});
        spec.truncation.t_order = natural(field(trunc, tp, "t_order"), tp / "t_order");
        if (spec.truncation.t_order == 0) {
            fail(tp / "t_order", "t_order must be positive");
        }
        const auto zd = index(field(trunc, tp, "z_degree"), tp / "z_degree", nv);
        for (std::size_t i = 0; i < nv; ++i) {
            spec.truncation.z_degree.push_back(static_cast<Degree>(zd[i]));
        }

        if (root.contains("numerics")) {
            const auto at = top / "numerics";
            const auto &num = root["numerics"];
            expect_object(num, at, {"backend", "precision_bits"});
            if (num.contains("backend")) {
                const auto b = string(num["backend"], at / "backend");
                if (b != "auto") {
                    try {
                        spec.numerics.backend = backend_from_name(b);
                    } catch (const ParameterError &e) {
                        fail(at / "backend", e.what());
                    }
                }
            }
            if (num.contains("precision_bits")) {
                const auto bits = natural(num["precision_bits"], at / "precision_bits");
                if (bits < 16 || bits > 1'000'000) {
                    fail(at / "precision_bits", "precision_bits must lie in [16, 1000000]");
                }
                spec.numerics.precision_bits = static_cast<unsigned>(bits);
            }
        }

        if (root.contains("estimation")) {
            const auto at = top / "estimation";
            const auto &est = root["estimation"];
            expect_object(est, at, {"r", "rho", "window", "tolerance", "mode"});
            if (est.contains("r")) {
                spec.estimation.r = rational(est["r"], at / "r");
            }
            if (est.contains("rho")) {
                spec.estimation.rho = rational(est["rho"], at / "rho");
            }
            if (spec.estimation.r <= 0 || spec.estimation.rho <= 0) {
                fail(at, "r and rho must be positive");
            }
            if (est.contains("window")) {
                const auto &w = est["window"];
                if (!w.is_array() || w.size() != 2) {
                    fail(at / "window", "expected [first, last]");
                }
                spec.estimation.window =
                    FitWindow{natural(w[0], at / "window" / 0), natural(w[1], at / "window" / 1)};
            }
            if (est.contains("tolerance")) {
                spec.estimation.tolerance = real(est["tolerance"], at / "tolerance");
            }
            if (est.contains("mode")) {
                try {
                    spec.estimation.mode = norm_mode_from_name(string(est["mode"], at / "mode"));
                } catch (const ParameterError &e) {
                    fail(at / "mode", e.what());
                }
            }
        }
        return spec;
    }

private:
    std::string_view text_;
    std::string_view source_;
    Locator locator_;
};

ordered_json rational_json(const Rational &q)
{
    return rational_to_string(q);
}

ordered_json index_json(const MultiIndex &a)
{
    return a.components();
}

ordered_json monomials_json(const std::vector<Monomial> &monos, bool with_t)
{
    ordered_json out = ordered_json::array();
    for (const auto &m : monos) {
        ordered_json e;
        if (with_t) {
            e["t_power"] = m.t_power;
        }
        e["z_powers"] = index_json(m.z);
        e["value"] = rational_json(m.value);
        out.push_back(std::move(e));
    }
    return out;
}

ordered_json data_json(const DataSpec &d)
{
    ordered_json out;
    switch (d.kind) {
    case DataSpec::Kind::poly:
        out["generator"] = "poly";
        out["monomials"] = monomials_json(d.monomials, false);
        break;
    case DataSpec::Kind::geometric:
    case DataSpec::Kind::exp:
        out["generator"] = d.kind == DataSpec::Kind::geometric ? "geometric" : "exp";
        out["c"] = rational_json(d.c);
        break;
    }
    return out;
}

} // namespace

Backend ProblemSpec::backend() const
{
    if (numerics.backend) {
        return *numerics.backend;
    }
    bool exact = m0.rational_valued();
    for (const auto &seq : m) {
        exact = exact && seq.rational_valued();
    }
    return exact ? Backend::rational : Backend::bigfloat;
}

OperatorShape ProblemSpec::shape() const
{
    // Valuations come from the coefficient data; the rational backend is
    // exact for any spec.
    return build_problem<Rational>(*this).pde.shape();
}

bool operator==(const ProblemSpec &a, const ProblemSpec &b)
{
    return a.variables == b.variables && a.m0 == b.m0 && a.m == b.m && a.M == b.M && a.terms == b.terms
           && a.rhs == b.rhs && a.initial == b.initial && a.truncation.t_order == b.truncation.t_order
           && a.truncation.z_degree == b.truncation.z_degree && a.numerics == b.numerics
           && a.estimation == b.estimation;
}

ProblemSpec parse_problem(std::string_view text, std::string_view source)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error &e) {
        const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        std::string msg = e.what();
        // Keep only the reason from nlohmann's "[json.exception...] parse error at ...: reason".
        if (const auto pos = msg.find(": "); pos != std::string::npos) {
            msg = msg.substr(pos + 2);
        }
        throw ParseError(msg, "", line, col, std::string(source));
    }
    return Reader(text, source).problem(root);
}

ProblemSpec load_problem(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open problem file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem(buf.str(), path);
}

ordered_json sequence_to_json(const MomentSequence &seq)
{
    ordered_json out;
    out["kind"] = std::string(kind_name(seq.kind()));
    switch (seq.kind()) {
    case MomentSequence::Kind::factorial_power:
    case MomentSequence::Kind::gamma:
        out["s"] = rational_json(seq.parameter());
        break;
    case MomentSequence::Kind::q_factorial:
        out["q"] = rational_json(seq.parameter());
        break;
    case MomentSequence::Kind::product:
    case MomentSequence::Kind::quotient:
        out["lhs"] = sequence_to_json(seq.lhs());
        out["rhs"] = sequence_to_json(seq.rhs());
        break;
    case MomentSequence::Kind::table: {
        ordered_json vals = ordered_json::array();
        for (const auto &v : seq.table_values()) {
            vals.push_back(rational_json(v));
        }
        out["values"] = std::move(vals);
        out["order"] = rational_json(seq.order());
        break;
    }
    }
    return out;
}

ordered_json problem_to_json(const ProblemSpec &spec)
{
    ordered_json out;
    out["variables"] = spec.variables;
    ordered_json z = ordered_json::array();
    for (const auto &seq : spec.m) {
        z.push_back(sequence_to_json(seq));
    }
    out["moment"] = {{"t", sequence_to_json(spec.m0)}, {"z", std::move(z)}};
    out["M"] = spec.M;
    ordered_json terms = ordered_json::array();
    for (const auto &t : spec.terms) {
        ordered_json e;
        e["j"] = t.j;
        e["alpha"] = index_json(t.alpha);
        e["coefficient"] = monomials_json(t.coefficient, true);
        if (t.ord_t) {
            e["ord_t"] = *t.ord_t;
        }
        terms.push_back(std::move(e));
    }
    out["terms"] = std::move(terms);
    ordered_json rhs;
    rhs["monomials"] = monomials_json(spec.rhs.monomials, true);
    if (spec.rhs.generator) {
        rhs["generator"] = data_json(*spec.rhs.generator);
        rhs["t_power"] = spec.rhs.generator_t_power;
    }
    out["rhs"] = std::move(rhs);
    ordered_json initial = ordered_json::array();
    for (const auto &d : spec.initial) {
        initial.push_back(data_json(d));
    }
    out["initial"] = std::move(initial);
    ordered_json zd = ordered_json::array();
    for (const auto d : spec.truncation.z_degree) {
        zd.push_back(d);
    }
    out["truncation"] = {{"t_order", spec.truncation.t_order}, {"z_degree", std::move(zd)}};
    out["numerics"] = {{"backend", spec.numerics.backend ? std::string(backend_name(*spec.numerics.backend)) : "auto"},
                       {"precision_bits", spec.numerics.precision_bits}};
    ordered_json est;
    est["r"] = rational_json(spec.estimation.r);
    est["rho"] = rational_json(spec.estimation.rho);
    if (spec.estimation.window) {
        est["window"] = {spec.estimation.window->first, spec.estimation.window->last};
    }
    est["tolerance"] = spec.estimation.tolerance;
    est["mode"] = std::string(norm_mode_name(spec.estimation.mode));
    out["estimation"] = std::move(est);
    return out;
}

std::string emit_problem(const ProblemSpec &spec)
{
    return problem_to_json(spec).dump(2) + "\n";
}

} // namespace gevrey
