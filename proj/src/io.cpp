#include "holocurve/io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "holocurve/expr.hpp"

namespace holocurve {

namespace {

// field access that turns schema mistakes into validation errors instead of
// nlohmann exceptions
const Json& field(const Json& j, const char* name) {
    if (!j.is_object() || !j.contains(name))
        throw ValidationError("json-schema",
                              std::string("missing field \"") + name + "\"");
    return j.at(name);
}

double number_of(const Json& j, const char* what) {
    if (!j.is_number())
        throw ValidationError("json-schema",
                              std::string(what) + " must be a number");
    return j.get<double>();
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Json json_of(cplx v) { return Json{{"re", v.real()}, {"im", v.imag()}}; }

cplx complex_from_json(const Json& j) {
    return {number_of(field(j, "re"), "re"), number_of(field(j, "im"), "im")};
}

Json json_of(const Curve& c) {
    Json coords = Json::array();
    for (const ExprPtr& e : c.coords) coords.push_back(to_string(e));
    return Json{{"dimension", c.dim()},
                {"domain", c.domain == Domain::plane ? "plane" : "punctured"},
                {"coordinates", coords}};
}

Curve curve_from_json(const Json& j) {
    Curve c;
    std::string dom = field(j, "domain").get<std::string>();
    if (dom == "plane")
        c.domain = Domain::plane;
    else if (dom == "punctured")
        c.domain = Domain::punctured;
    else
        throw ValidationError("json-schema",
                              "domain must be \"plane\" or \"punctured\"");
    const Json& coords = field(j, "coordinates");
    if (!coords.is_array() || coords.size() < 2)
        throw ValidationError("json-schema",
                              "coordinates must list at least two expressions");
    for (const Json& s : coords)
        c.coords.push_back(parse_expr(s.get<std::string>()));
    int n = field(j, "dimension").get<int>();
    if (n != c.dim())
        throw ValidationError("json-schema",
                              "dimension does not match the coordinate count");
    validate_curve(c);
    return c;
}

Json json_of(const OstrowskiData& d) {
    Json zeros = Json::array(), poles = Json::array();
    for (cplx v : d.zeros) zeros.push_back(json_of(v));
    for (cplx v : d.poles) poles.push_back(json_of(v));
    return Json{
        {"a", json_of(d.a)}, {"m", d.m}, {"zeros", zeros}, {"poles", poles}};
}

OstrowskiData ostrowski_from_json(const Json& j) {
    OstrowskiData d;
    d.a = complex_from_json(field(j, "a"));
    d.m = field(j, "m").get<int>();
    for (const Json& v : field(j, "zeros"))
        d.zeros.push_back(complex_from_json(v));
    for (const Json& v : field(j, "poles"))
        d.poles.push_back(complex_from_json(v));
    validate_data(d);
    return d;
}

Json json_of(const InterpProblem& p) {
    Json pts = Json::array(), tgts = Json::array();
    for (cplx m : p.E.points) pts.push_back(json_of(m));
    for (const HomogeneousPoint& t : p.targets) {
        Json coords = Json::array();
        for (cplx w : t.coords) coords.push_back(json_of(w));
        tgts.push_back(coords);
    }
    return Json{{"points", pts}, {"targets", tgts}, {"dimension", p.n}};
}

InterpProblem problem_from_json(const Json& j) {
    InterpProblem p;
    std::vector<cplx> pts;
    for (const Json& v : field(j, "points")) pts.push_back(complex_from_json(v));
    p.E = validate_sparse(pts);
    p.n = field(j, "dimension").get<int>();
    for (const Json& t : field(j, "targets")) {
        HomogeneousPoint h;
        for (const Json& w : t) h.coords.push_back(complex_from_json(w));
        p.targets.push_back(std::move(h));
    }
    validate_problem(p);
    return p;
}

Json json_of(const InterpState& st) {
    Json assign = Json::array();
    for (const VPoint& a : st.assignment) {
        Json zeta = Json::array();
        for (cplx v : a.zeta) zeta.push_back(json_of(v));
        assign.push_back(Json{{"zeta", zeta}, {"sheet", a.sheet}});
    }
    return Json{{"assignment", assign},
                {"iterations", st.iterations},
                {"converged", st.converged},
                {"step_norms", st.step_norms},
                {"residuals", st.residuals},
                {"max_residual", st.max_residual},
                {"max_displacement", st.max_displacement},
                {"max_phi_norm", st.max_phi_norm}};
}

std::vector<VPoint> assignment_from_json(const Json& j) {
    std::vector<VPoint> out;
    for (const Json& a : field(j, "assignment")) {
        VPoint v;
        for (const Json& z : field(a, "zeta"))
            v.zeta.push_back(complex_from_json(z));
        v.sheet = field(a, "sheet").get<int>();
        out.push_back(std::move(v));
    }
    return out;
}

Json json_of(const CharReport& r) {
    return Json{{"r", r.radii},
                {"T", r.T},
                {"A", r.A},
                {"jensen_residual", r.jensen_residual},
                {"order", r.order},
                {"fit_r2", r.fit_r2}};
}

Json json_of(const OrderEstimate& r) {
    return Json{
        {"order", r.order}, {"fit_r2", r.fit_r2}, {"r", r.radii}, {"T", r.T}};
}

Json json_of(const RescaleResult& r) {
    return Json{{"n_radius", r.n_radius},
                {"z_n", json_of(r.z_n)},
                {"M_n", r.M_n},
                {"rho_n", r.rho_n},
                {"rescaled", json_of(r.rescaled)}};
}

Json json_of(const RescaleCheck& r) {
    return Json{{"ok", r.ok},
                {"g_sharp_0", r.g_sharp_0},
                {"max_g_sharp", r.max_g_sharp},
                {"argmax", json_of(r.argmax)},
                {"bound", r.bound}};
}

Json json_of(const ConditionReport& r) {
    return Json{{"c1", r.c1},
                {"c2", r.c2},
                {"c3_log", r.c3_log},
                {"c4", r.c4},
                {"c5", r.c5},
                {"pass",
                 Json{{"c1", r.pass_c1},
                      {"c2", r.pass_c2},
                      {"c3", r.pass_c3},
                      {"c4", r.pass_c4},
                      {"c5", r.pass_c5}}},
                {"all_pass", r.all_pass()}};
}

Json json_of(const Admissibility& r) {
    return Json{{"admissible", r.admissible}, {"H", r.H}};
}

Json json_of(const MontelReport& r) {
    return Json{{"max_count", r.max_count},
                {"worst_center", json_of(r.worst_center)},
                {"per_target_hits", r.per_target_hits}};
}

Json json_of(const QualityReport& r) {
    return Json{{"max_residual", r.max_residual},
                {"sup_sphderiv", r.sup_sphderiv},
                {"argmax", json_of(r.argmax)},
                {"empirical_C", r.empirical_C}};
}

namespace {
Json json_of_check(const PointCheck& c) {
    return Json{{"ok", c.ok},
                {"worst", c.worst},
                {"worst_at", json_of(c.worst_at)},
                {"violations", c.violations}};
}
}  // namespace

Json json_of(const ChpmReport& r) {
    return Json{{"sph", json_of_check(r.sph)},
                {"low", json_of_check(r.low)},
                {"high", json_of_check(r.high)},
                {"growth", json_of_check(r.growth)},
                {"deriv", json_of_check(r.deriv)},
                {"all_ok", r.all_ok()}};
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("io", "cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.byte, "json", path + ": " + e.what());
    }
}

void save_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw ValidationError("io", "cannot open " + path);
    out << j.dump(2) << '\n';
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ValidationError("io", "cannot open " + path);
    out << text;
}

cplx parse_complex(const std::string& s) {
    if (s.empty()) throw ParseError(0, "complex literal", "empty complex literal");
    std::string body = s;
    bool imag_tail = body.back() == 'i' || body.back() == 'I';
    if (imag_tail) body.pop_back();

    auto parse_num = [&](const std::string& part, std::size_t at) {
        if (part.empty() || part == "+") return 1.0;
        if (part == "-") return -1.0;
        const char* c = part.c_str();
        char* end = nullptr;
        double v = std::strtod(c, &end);
        if (end != c + part.size())
            throw ParseError(at + (end - c), "number",
                             "bad complex literal \"" + s + "\"");
        return v;
    };

    // split at the last +/- that is not a sign or an exponent
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        char ch = body[k];
        if ((ch == '+' || ch == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (!imag_tail) {
        if (split != std::string::npos)
            throw ParseError(split, "i", "bad complex literal \"" + s + "\"");
        return {parse_num(body, 0), 0.0};
    }
    if (split == std::string::npos) return {0.0, parse_num(body, 0)};
    return {parse_num(body.substr(0, split), 0),
            parse_num(body.substr(split), split)};
}

namespace {
std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t comma = s.find(',', start);
        if (comma == std::string::npos) {
            parts.push_back(s.substr(start));
            break;
        }
        parts.push_back(s.substr(start, comma - start));
        start = comma + 1;
    }
    return parts;
}
}  // namespace

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    for (const std::string& p : split_commas(s)) {
        const char* c = p.c_str();
        char* end = nullptr;
        double v = std::strtod(c, &end);
        if (p.empty() || end != c + p.size())
            throw ParseError(0, "number", "bad number list \"" + s + "\"");
        out.push_back(v);
    }
    return out;
}

std::vector<cplx> parse_complex_list(const std::string& s) {
    std::vector<cplx> out;
    for (const std::string& p : split_commas(s)) out.push_back(parse_complex(p));
    return out;
}

std::string grid_csv(const std::vector<double>& xs,
                     const std::vector<double>& ys,
                     const std::vector<double>& values) {
    if (values.size() != xs.size() * ys.size())
        throw ValidationError("invalid-grid", "grid value count mismatch");
    std::ostringstream out;
    out << "x,y,value\n";
    for (std::size_t j = 0; j < ys.size(); ++j)
        for (std::size_t i = 0; i < xs.size(); ++i)
            out << fmt(xs[i]) << ',' << fmt(ys[j]) << ','
                << fmt(values[j * xs.size() + i]) << '\n';
    return out.str();
}

std::string phi_profile_csv(const PhiProfile& p) {
    std::ostringstream out;
    out << "t,phi,slope\n";
    for (std::size_t i = 0; i < p.ts.size(); ++i) {
        std::size_t seg = i < p.slopes.size() ? i : p.slopes.size() - 1;
        out << fmt(p.ts[i]) << ',' << fmt(p.values[i]) << ',' << p.slopes[seg]
            << '\n';
    }
    return out.str();
}

std::string lehto_csv(const std::vector<LehtoRow>& rows) {
    std::ostringstream out;
    out << "t,sup,argmax_re,argmax_im\n";
    for (const LehtoRow& r : rows)
        out << fmt(r.t) << ',' << fmt(r.sup) << ',' << fmt(r.argmax.real())
            << ',' << fmt(r.argmax.imag()) << '\n';
    return out.str();
}

}  // namespace holocurve
