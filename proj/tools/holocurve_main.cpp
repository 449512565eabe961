#include <algorithm>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "holocurve/io.hpp"

using namespace holocurve;

namespace {

struct Common {
    double tol = 1e-6;
    std::string out;
    std::string grid;
    unsigned seed = 0;
    bool quiet = false;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--tol", c.tol, "quadrature / iteration tolerance");
    sub->add_option("--out", c.out, "output file (stdout when omitted)");
    sub->add_option("--grid", c.grid, "grid resolution nx,ny");
    sub->add_option("--seed", c.seed, "seed for sampled checks");
    sub->add_flag("--quiet", c.quiet, "suppress warnings");
}

GridSpec grid_spec(const Common& c) {
    GridSpec g;
    if (c.grid.empty()) return g;
    std::vector<double> v = parse_double_list(c.grid);
    if (v.size() != 2)
        throw ValidationError("invalid-grid", "--grid wants nx,ny");
    g.nx = static_cast<int>(v[0]);
    g.ny = static_cast<int>(v[1]);
    if (g.nx < 8 || g.ny < 8)
        throw ValidationError("invalid-grid", "grid counts must be >= 8");
    return g;
}

void check_tol(const Common& c) {
    if (!(c.tol > 0.0))
        throw ValidationError("invalid-tolerance", "tolerances must be > 0");
}

void emit(const Common& c, const std::string& text) {
    if (c.out.empty())
        std::cout << text;
    else
        write_text_file(c.out, text);
}

void emit(const Common& c, const Json& j) {
    if (c.out.empty())
        std::cout << j.dump(2) << '\n';
    else
        save_json_file(c.out, j);
}

void flush_warnings(const Common& c, const Diagnostics& d) {
    if (c.quiet) return;
    for (const std::string& w : d.warnings)
        std::cerr << "warning: " << w << '\n';
}

Rect parse_rect(const std::string& s) {
    std::vector<double> v = parse_double_list(s);
    if (v.size() != 4)
        throw ValidationError("invalid-grid", "--rect wants x0,x1,y0,y1");
    return Rect{v[0], v[1], v[2], v[3]};
}

HomogeneousPoint p1_target(const std::string& tok) {
    if (tok == "inf") return HomogeneousPoint{{0.0, 1.0}};
    return HomogeneousPoint{{1.0, parse_complex(tok)}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerics for holomorphic curves into projective space"};
    app.require_subcommand(1);

    Common c;

    // eval
    std::string curve_path, z_list;
    CLI::App* eval = app.add_subcommand("eval", "evaluate a curve");
    eval->add_option("--curve", curve_path, "curve JSON")->required();
    eval->add_option("--z", z_list, "points a+bi, comma separated")->required();
    add_common(eval, c);

    // sphderiv-grid
    std::string rect_flag;
    CLI::App* sph = app.add_subcommand(
        "sphderiv-grid", "spherical derivative on a rectangle grid");
    sph->add_option("--curve", curve_path, "curve JSON")->required();
    sph->add_option("--rect", rect_flag, "x0,x1,y0,y1")->required();
    add_common(sph, c);

    // char
    std::string r_list;
    CLI::App* chr = app.add_subcommand("char", "characteristic report");
    chr->add_option("--curve", curve_path, "curve JSON")->required();
    chr->add_option("--r", r_list, "radii, comma separated")->required();
    add_common(chr, c);

    // order
    double r0 = 4.0, r1 = 128.0;
    int npts = 12;
    CLI::App* ord = app.add_subcommand("order", "growth order estimate");
    ord->add_option("--curve", curve_path, "curve JSON")->required();
    ord->add_option("--r0", r0, "smallest radius")->required();
    ord->add_option("--r1", r1, "largest radius")->required();
    ord->add_option("--npts", npts, "geometric grid size");
    add_common(ord, c);

    // rescale
    double n_radius = 10.0, check_r = 1.0, slack = 0.05;
    CLI::App* res = app.add_subcommand("rescale", "Brody rescaling step");
    res->add_option("--curve", curve_path, "curve JSON")->required();
    res->add_option("--n", n_radius, "disc radius")->required();
    res->add_option("--check-r", check_r, "verification radius");
    res->add_option("--slack", slack, "verification slack");
    add_common(res, c);

    // ostrowski-check
    std::string data_path;
    CLI::App* ost = app.add_subcommand("ostrowski-check",
                                       "zero/pole distribution conditions");
    ost->add_option("--data", data_path, "data JSON")->required();
    add_common(ost, c);

    // phi
    double t0 = -5.0, t1 = 5.0;
    CLI::App* phi = app.add_subcommand("phi", "circle-mean profile of log|f|");
    phi->add_option("--data", data_path, "data JSON")->required();
    phi->add_option("--t0", t0, "left end in log radius");
    phi->add_option("--t1", t1, "right end in log radius");
    add_common(phi, c);

    // montel
    std::string targets_flag;
    double delta = 0.5, mr0 = 0.5, mr1 = 2.0, prox = 1e-3;
    CLI::App* mon = app.add_subcommand("montel", "three-point disc test on C*");
    mon->add_option("--curve", curve_path, "curve JSON")->required();
    mon->add_option("--targets", targets_flag, "three values (inf allowed)")
        ->required();
    mon->add_option("--delta", delta, "disc diameter");
    mon->add_option("--r0", mr0, "inner radius")->required();
    mon->add_option("--r1", mr1, "outer radius")->required();
    mon->add_option("--proximity-tol", prox, "target proximity");
    add_common(mon, c);

    // lehto
    std::string t_list;
    int k_range = 40;
    CLI::App* leh = app.add_subcommand("lehto", "sup |z| f# per period annulus");
    leh->add_option("--t", t_list, "period ratios, comma separated")->required();
    leh->add_option("--k-range", k_range, "product truncation");
    add_common(leh, c);

    // interp-solve
    std::string problem_path;
    int k_max = 200;
    CLI::App* isv = app.add_subcommand("interp-solve",
                                       "solve a sparse interpolation problem");
    isv->add_option("--problem", problem_path, "problem JSON")->required();
    isv->add_option("--k-max", k_max, "iteration cap");
    add_common(isv, c);

    // interp-check
    std::string solution_path;
    CLI::App* ick = app.add_subcommand("interp-check",
                                       "quality report for a solved problem");
    ick->add_option("--problem", problem_path, "problem JSON")->required();
    ick->add_option("--solution", solution_path, "solution JSON")->required();
    ick->add_option("--rect", rect_flag, "x0,x1,y0,y1 (default: set bbox + K)");
    add_common(ick, c);

    // chpm
    double max_abs = 0.0;
    CLI::App* chp = app.add_subcommand(
        "chpm", "pointwise consequences of the normality bound");
    chp->add_option("--curve", curve_path, "curve JSON")->required();
    chp->add_option("--rect", rect_flag, "x0,x1,y0,y1");
    chp->add_option("--max-abs", max_abs, "skip grid points with |z| above");
    add_common(chp, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n' << app.help() << '\n';
        return 64;
    }

    try {
        check_tol(c);
        Diagnostics diag;

        if (eval->parsed()) {
            Curve cv = curve_from_json(load_json_file(curve_path));
            Json rows = Json::array();
            for (cplx z : parse_complex_list(z_list)) {
                CurveJet jet = eval_curve(cv, z);
                Json vals = Json::array(), ders = Json::array();
                for (cplx w : jet.values) vals.push_back(json_of(w));
                for (cplx w : jet.derivs) ders.push_back(json_of(w));
                rows.push_back(Json{{"z", json_of(z)},
                                    {"values", vals},
                                    {"derivs", ders},
                                    {"sphderiv", spherical_derivative(cv, z)}});
            }
            emit(c, Json{{"results", rows}});
        } else if (sph->parsed()) {
            Curve cv = curve_from_json(load_json_file(curve_path));
            Rect r = parse_rect(rect_flag);
            GridSpec g = grid_spec(c);
            std::vector<double> xs(g.nx), ys(g.ny), vals;
            for (int i = 0; i < g.nx; ++i)
                xs[i] = r.x0 + (r.x1 - r.x0) * i / (g.nx - 1);
            for (int j = 0; j < g.ny; ++j)
                ys[j] = r.y0 + (r.y1 - r.y0) * j / (g.ny - 1);
            for (double y : ys)
                for (double x : xs)
                    vals.push_back(intrinsic_sphderiv(cv, {x, y}));
            emit(c, grid_csv(xs, ys, vals));
        } else if (chr->parsed()) {
            Curve cv = curve_from_json(load_json_file(curve_path));
            CharReport rep =
                char_report(cv, parse_double_list(r_list), c.tol, &diag);
            emit(c, json_of(rep));
        } else if (ord->parsed()) {
            Curve cv = curve_from_json(load_json_file(curve_path));
            OrderEstimate est = order_estimate(cv, r0, r1, npts, c.tol, &diag);
            emit(c, json_of(est));
        } else if (res->parsed()) {
            Curve cv = curve_from_json(load_json_file(curve_path));
            RescaleResult rr = brody_extract(cv, n_radius, grid_spec(c));
            RescaleCheck rc = verify_rescaled(rr, check_r, slack, grid_spec(c));
            emit(c, Json{{"result", json_of(rr)}, {"check", json_of(rc)}});
        } else if (ost->parsed()) {
            OstrowskiData d = ostrowski_from_json(load_json_file(data_path));
            emit(c, json_of(check_conditions(d)));
        } else if (phi->parsed()) {
            OstrowskiData d = ostrowski_from_json(load_json_file(data_path));
            PhiProfile p = build_phi(d, t0, t1);
            if (!c.quiet)
                std::cerr << json_of(phi_admissible(p)).dump() << '\n';
            emit(c, phi_profile_csv(p));
        } else if (mon->parsed()) {
            Curve cv = curve_from_json(load_json_file(curve_path));
            std::vector<std::string> toks;
            std::size_t start = 0;
            while (start <= targets_flag.size()) {
                std::size_t comma = targets_flag.find(',', start);
                if (comma == std::string::npos) {
                    toks.push_back(targets_flag.substr(start));
                    break;
                }
                toks.push_back(targets_flag.substr(start, comma - start));
                start = comma + 1;
            }
            if (toks.size() != 3)
                throw ValidationError("invalid-point",
                                      "--targets wants exactly three values");
            std::array<HomogeneousPoint, 3> ts{
                p1_target(toks[0]), p1_target(toks[1]), p1_target(toks[2])};
            emit(c, json_of(montel_three_point_test(cv, ts, delta, mr0, mr1,
                                                    prox)));
        } else if (leh->parsed()) {
            std::vector<LehtoRow> rows = lehto_experiment(
                parse_double_list(t_list), k_range, grid_spec(c), &diag);
            emit(c, lehto_csv(rows));
        } else if (isv->parsed()) {
            InterpProblem p = problem_from_json(load_json_file(problem_path));
            InterpState st = solve_interpolation(p, c.tol, k_max, &diag);
            emit(c, json_of(st));
        } else if (ick->parsed()) {
            InterpProblem p = problem_from_json(load_json_file(problem_path));
            std::vector<VPoint> a =
                assignment_from_json(load_json_file(solution_path));
            Rect r;
            if (!rect_flag.empty()) {
                r = parse_rect(rect_flag);
            } else {
                double pad = p.E.K;
                r = Rect{p.E.points[0].real(), p.E.points[0].real(),
                         p.E.points[0].imag(), p.E.points[0].imag()};
                for (cplx m : p.E.points) {
                    r.x0 = std::min(r.x0, m.real());
                    r.x1 = std::max(r.x1, m.real());
                    r.y0 = std::min(r.y0, m.imag());
                    r.y1 = std::max(r.y1, m.imag());
                }
                r.x0 -= pad;
                r.x1 += pad;
                r.y0 -= pad;
                r.y1 += pad;
            }
            emit(c, json_of(solution_quality(p, a, r, grid_spec(c))));
        } else if (chp->parsed()) {
            Curve cv = curve_from_json(load_json_file(curve_path));
            Rect r = rect_flag.empty() ? Rect{-5.0, 5.0, -5.0, 5.0}
                                       : parse_rect(rect_flag);
            GridSpec g = grid_spec(c);
            emit(c, json_of(chpm_checks(cv, r, g.nx, g.ny, max_abs)));
        }

        flush_warnings(c, diag);
        return 0;
    } catch (const Error& e) {
        Json err{{"error",
                  Json{{"category", e.category == ErrorCategory::validation
                                        ? "validation"
                                        : "numeric"},
                       {"kind", e.kind},
                       {"message", e.what()}}}};
        std::cerr << err.dump() << '\n';
        return e.category == ErrorCategory::validation ? 2 : 3;
    } catch (const nlohmann::json::exception& e) {
        Json err{{"error", Json{{"category", "validation"},
                                {"kind", "json-schema"},
                                {"message", e.what()}}}};
        std::cerr << err.dump() << '\n';
        return 2;
    } catch (const std::exception& e) {
        Json err{{"error", Json{{"category", "numeric"},
                                {"kind", "internal"},
                                {"message", e.what()}}}};
        std::cerr << err.dump() << '\n';
        return 3;
    }
}
