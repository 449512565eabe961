#include "holocurve/ostrowski.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>

#include "holocurve/quadrature.hpp"

namespace holocurve {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_out(cplx v) { return std::abs(v) >= 1.0; }

cplx factor_value(cplx z, cplx v) {
    return is_out(v) ? 1.0 - z / v : 1.0 - v / z;
}

}  // namespace

void validate_data(const OstrowskiData& d) {
    if (d.a == 0.0)
        throw ValidationError("invalid-data", "leading coefficient must be nonzero");
    if (!std::isfinite(d.a.real()) || !std::isfinite(d.a.imag()))
        throw ValidationError("invalid-data", "leading coefficient not finite");
    for (cplx v : d.zeros)
        if (v == 0.0 || !std::isfinite(std::abs(v)))
            throw ValidationError("invalid-data", "zeros must be finite and nonzero");
    for (cplx v : d.poles)
        if (v == 0.0 || !std::isfinite(std::abs(v)))
            throw ValidationError("invalid-data", "poles must be finite and nonzero");
}

LogComplex eval_repr_log(const OstrowskiData& d, cplx z) {
    validate_data(d);
    if (z == 0.0)
        throw ValidationError("invalid-point", "the domain excludes 0");
    LogComplex acc = lc_from(d.a);
    acc = lc_mul(acc, lc_pow(lc_from(z), d.m));
    for (cplx v : d.zeros) acc = lc_mul(acc, lc_from(factor_value(z, v)));
    for (cplx v : d.poles) acc = lc_div(acc, lc_from(factor_value(z, v)));
    return acc;
}

cplx eval_repr(const OstrowskiData& d, cplx z) {
    LogComplex lc = eval_repr_log(d, z);
    if (lc.logabs == kInf) {
        int mult = 0;
        for (cplx v : d.poles)
            if (v == z) ++mult;
        throw PoleError(z, std::max(mult, 1), "evaluation at a listed pole");
    }
    return lc.to_complex();
}

ReliableRange repr_reliable_range(const OstrowskiData& d) {
    validate_data(d);
    double vmax = 0.0;    // largest outward modulus
    double vmin = kInf;   // smallest inward modulus
    auto scan = [&](const std::vector<cplx>& vs) {
        for (cplx v : vs) {
            double m = std::abs(v);
            if (m >= 1.0)
                vmax = std::max(vmax, m);
            else
                vmin = std::min(vmin, m);
        }
    };
    scan(d.zeros);
    scan(d.poles);
    ReliableRange r;
    r.lo = vmin == kInf ? 0.0 : 1e6 * vmin;
    r.hi = vmax == 0.0 ? kInf : 1e-6 * vmax;
    return r;
}

namespace {

// breakpoints tau = log|v| with net slope jumps (+ per zero, - per pole)
std::map<double, int> slope_jumps(const OstrowskiData& d) {
    std::map<double, int> jumps;
    for (cplx v : d.zeros) jumps[std::log(std::abs(v))] += 1;
    for (cplx v : d.poles) jumps[std::log(std::abs(v))] -= 1;
    return jumps;
}

double phi_closed_form(const OstrowskiData& d, double t) {
    double s = std::log(std::abs(d.a)) + d.m * t;
    for (cplx v : d.zeros) {
        double tau = std::log(std::abs(v));
        s += is_out(v) ? std::max(t - tau, 0.0) : std::max(tau - t, 0.0);
    }
    for (cplx v : d.poles) {
        double tau = std::log(std::abs(v));
        s -= is_out(v) ? std::max(t - tau, 0.0) : std::max(tau - t, 0.0);
    }
    return s;
}

int phi_slope_at(const OstrowskiData& d, double t) {
    int s = d.m;
    for (cplx v : d.zeros) {
        double tau = std::log(std::abs(v));
        s += is_out(v) ? (t > tau ? 1 : 0) : (t < tau ? -1 : 0);
    }
    for (cplx v : d.poles) {
        double tau = std::log(std::abs(v));
        s -= is_out(v) ? (t > tau ? 1 : 0) : (t < tau ? -1 : 0);
    }
    return s;
}

}  // namespace

PhiProfile build_phi(const OstrowskiData& d, double t0, double t1) {
    validate_data(d);
    if (!(t1 > t0))
        throw ValidationError("invalid-point", "need t0 < t1");
    PhiProfile p;
    p.ts.push_back(t0);
    for (const auto& [tau, jump] : slope_jumps(d)) {
        if (jump != 0 && tau > t0 && tau < t1) p.ts.push_back(tau);
    }
    p.ts.push_back(t1);
    for (double t : p.ts) p.values.push_back(phi_closed_form(d, t));
    for (std::size_t i = 0; i + 1 < p.ts.size(); ++i)
        p.slopes.push_back(phi_slope_at(d, 0.5 * (p.ts[i] + p.ts[i + 1])));
    return p;
}

double phi_eval(const PhiProfile& p, double t) {
    if (p.ts.size() < 2 || p.values.size() != p.ts.size() ||
        p.slopes.size() + 1 != p.ts.size())
        throw ValidationError("invalid-data", "malformed profile");
    if (t <= p.ts.front())
        return p.values.front() + p.slopes.front() * (t - p.ts.front());
    if (t >= p.ts.back())
        return p.values.back() + p.slopes.back() * (t - p.ts.back());
    auto it = std::upper_bound(p.ts.begin(), p.ts.end(), t);
    std::size_t i = static_cast<std::size_t>(it - p.ts.begin()) - 1;
    return p.values[i] + p.slopes[i] * (t - p.ts[i]);
}

double phi_circle_mean(const OstrowskiData& d, double t, double tol) {
    double r = std::exp(t);
    auto f = [&](double th) {
        return eval_repr_log(d, std::polar(r, th)).logabs;
    };
    return circle_mean(f, tol, 128);
}

Admissibility phi_admissible(const PhiProfile& p) {
    if (p.ts.size() < 2 || p.slopes.size() + 1 != p.ts.size())
        throw ValidationError("invalid-data", "malformed profile");
    double need = 0.0;      // strip height forced by misoriented corners
    double extreme = 0.0;   // largest corner height |phi|
    for (std::size_t i = 0; i + 1 < p.slopes.size(); ++i) {
        int jump = p.slopes[i + 1] - p.slopes[i];
        if (jump == 0) continue;
        double v = p.values[i + 1];
        extreme = std::max(extreme, std::abs(v));
        if (jump > 0)
            need = std::max(need, v);   // convex corner must sit below H
        else
            need = std::max(need, -v);  // concave corner must sit above -H
    }
    Admissibility adm;
    adm.H = std::max(need, 0.0);
    adm.admissible = adm.H == 0.0 || adm.H < extreme;
    return adm;
}

namespace {

std::vector<double> sorted_moduli(const std::vector<cplx>& vs) {
    std::vector<double> m;
    m.reserve(vs.size());
    for (cplx v : vs) m.push_back(std::abs(v));
    std::sort(m.begin(), m.end());
    return m;
}

int count_open_ring(const std::vector<double>& ms, double r) {
    // #{m : r < m < 2r}
    auto lo = std::upper_bound(ms.begin(), ms.end(), r);
    auto hi = std::lower_bound(ms.begin(), ms.end(), 2.0 * r);
    return static_cast<int>(hi - lo);
}

}  // namespace

ConditionReport check_conditions(const OstrowskiData& d,
                                 const ConditionThresholds& thr) {
    validate_data(d);
    ConditionReport rep;
    std::vector<double> all = sorted_moduli(d.zeros);
    {
        std::vector<double> pm = sorted_moduli(d.poles);
        all.insert(all.end(), pm.begin(), pm.end());
        std::sort(all.begin(), all.end());
    }

    // c1: sweep ring starts over breakpoints, halved breakpoints, midpoints
    std::vector<double> starts;
    for (std::size_t i = 0; i < all.size(); ++i) {
        double v = all[i];
        starts.push_back(v * (1.0 - 1e-12));
        starts.push_back(v * 0.5 * (1.0 + 1e-12));
        if (i + 1 < all.size())
            starts.push_back(std::sqrt(all[i] * all[i + 1]));
    }
    for (double r : starts)
        if (r > 0.0) rep.c1 = std::max(rep.c1, count_open_ring(all, r));

    // c2: prefix sums of zero-minus-pole counts grouped by modulus
    {
        std::map<double, int> net;
        for (cplx v : d.zeros) net[std::abs(v)] += 1;
        for (cplx v : d.poles) net[std::abs(v)] -= 1;
        int run = 0, lo = 0, hi = 0;
        for (const auto& [m, dn] : net) {
            run += dn;
            lo = std::min(lo, run);
            hi = std::max(hi, run);
        }
        rep.c2 = hi - lo;
    }

    // c3: normal-form partial products between modulus 1 and each point
    {
        auto log_ratio = [&](double tau_p, bool at_zero) {
            double lo = std::min(0.0, tau_p), hi = std::max(0.0, tau_p);
            double s = d.m * tau_p;
            for (cplx v : d.zeros) {
                double tau = std::log(std::abs(v));
                if (tau >= lo && tau <= hi) s += (at_zero ? 1.0 : -1.0) * (tau_p - tau);
            }
            for (cplx v : d.poles) {
                double tau = std::log(std::abs(v));
                if (tau >= lo && tau <= hi) s -= (at_zero ? 1.0 : -1.0) * (tau_p - tau);
            }
            return s;
        };
        for (cplx v : d.zeros)
            rep.c3_log = std::max(rep.c3_log,
                                  std::abs(log_ratio(std::log(std::abs(v)), true)));
        for (cplx v : d.poles)
            rep.c3_log = std::max(rep.c3_log,
                                  std::abs(log_ratio(std::log(std::abs(v)), false)));
    }

    // c4: closest zero-pole pair
    rep.c4 = kInf;
    for (cplx a : d.zeros)
        for (cplx b : d.poles) rep.c4 = std::min(rep.c4, std::abs(a - b));

    rep.c5 = binormal_condition_v(d).C5;

    rep.pass_c1 = rep.c1 <= thr.c1_max;
    rep.pass_c2 = rep.c2 <= thr.c2_max;
    rep.pass_c3 = rep.c3_log <= thr.c3_log_max;
    rep.pass_c4 = rep.c4 >= thr.c4_min;
    rep.pass_c5 = rep.c5 <= thr.c5_max;
    return rep;
}

CondV binormal_condition_v(const OstrowskiData& d) {
    validate_data(d);
    CondV out;
    if (d.zeros.empty() || d.poles.empty()) {
        out.C5 = kInf;
        out.holds = false;
        return out;
    }
    std::vector<double> zm = sorted_moduli(d.zeros);
    std::vector<double> pm = sorted_moduli(d.poles);
    double span_lo = std::min(zm.front(), pm.front());
    double span_hi = std::max(zm.back(), pm.back());
    auto worst_gap = [&](const std::vector<double>& ms) {
        double worst = 1.0;
        double prev = span_lo;
        for (double m : ms) {
            worst = std::max(worst, m / prev);
            prev = m;
        }
        worst = std::max(worst, span_hi / prev);
        return worst;
    };
    out.C5 = std::max(worst_gap(zm), worst_gap(pm));
    out.holds = std::isfinite(out.C5);
    return out;
}

MontelReport montel_three_point_test(
    const Curve& c, const std::array<HomogeneousPoint, 3>& targets,
    double delta, double r0, double r1, double proximity_tol) {
    validate_curve(c);
    for (const HomogeneousPoint& t : targets) {
        validate_point(t);
        if (t.dim() != c.dim())
            throw ValidationError("invalid-point", "target dimension mismatch");
    }
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (fs_distance(targets[i], targets[j]) < 1e-9)
                throw ValidationError("invalid-point",
                                      "targets must be distinct");
    if (!(delta > 0.0) || !(r1 > r0) || !(r0 > 0.0))
        throw ValidationError("invalid-point", "bad annulus or disc size");
    double du = delta / 8.0;
    int nu = std::max(2, static_cast<int>(std::ceil(std::log(r1 / r0) / du)) + 1);
    int nth = std::max(8, static_cast<int>(std::ceil(6.283185307179586 / du)));
    double su = std::log(r1 / r0) / (nu - 1);
    double sth = 6.283185307179586476925286766559 / nth;
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(nu) * nth, 0);
    for (int i = 0; i < nu; ++i) {
        double u = std::log(r0) + i * su;
        for (int j = 0; j < nth; ++j) {
            cplx z = std::polar(std::exp(u), j * sth);
            CurveJet cj = eval_curve(c, z);
            HomogeneousPoint p{cj.values};
            std::uint8_t m = 0;
            for (int k = 0; k < 3; ++k)
                if (fs_sin_distance(p, targets[k]) < proximity_tol)
                    m |= static_cast<std::uint8_t>(1 << k);
            mask[static_cast<std::size_t>(i) * nth + j] = m;
        }
    }
    MontelReport rep;
    for (int k = 0; k < 3; ++k) {
        int hits = 0;
        for (std::uint8_t m : mask)
            if (m & (1 << k)) ++hits;
        rep.per_target_hits[static_cast<std::size_t>(k)] = hits;
    }
    int wu = static_cast<int>(std::ceil(delta / su)) + 1;
    int wth = static_cast<int>(std::ceil(delta / sth)) + 1;
    for (int i = 0; i < nu; ++i)
        for (int j = 0; j < nth; ++j) {
            std::uint8_t m = 0;
            for (int a = std::max(0, i - wu); a < std::min(nu, i + wu + 1); ++a)
                for (int b = j - wth; b <= j + wth; ++b) {
                    double dU = (a - i) * su;
                    double dTh = (b - j) * sth;
                    // Euclidean disc of diameter delta |z0| in log coords
                    cplx dw(dU, dTh);
                    if (std::abs(std::exp(dw) - 1.0) > delta / 2.0) continue;
                    int bb = ((b % nth) + nth) % nth;
                    m |= mask[static_cast<std::size_t>(a) * nth + bb];
                }
            int cnt = std::popcount(static_cast<unsigned>(m));
            if (cnt > rep.max_count) {
                rep.max_count = cnt;
                rep.worst_center = std::polar(std::exp(std::log(r0) + i * su),
                                              j * sth);
            }
        }
    return rep;
}

std::vector<LehtoRow> lehto_experiment(const std::vector<double>& ts,
                                       int k_range, const GridSpec& grid,
                                       Diagnostics* diag) {
    std::vector<LehtoRow> rows;
    for (double t : ts) {
        if (!(t > 1.0))
            throw ValidationError("invalid-point", "need t > 1");
        double trunc = 4.0 * std::pow(t, 1.0 - k_range) * t / (t - 1.0);
        if (trunc > 1e-6)
            warn(diag, "lehto truncation at k_range perturbs annulus values "
                       "by more than 1e-6");
        Curve c = builtin_curve("lehto_product", {t, static_cast<double>(k_range)});
        SupResult sup = sup_sphderiv_grid(c, Annulus{1.0, t}, grid);
        rows.push_back(LehtoRow{t, sup.sup, sup.argmax});
    }
    return rows;
}

namespace {

ExprPtr repr_expr(const OstrowskiData& d, const ExprPtr& vz) {
    std::vector<ExprPtr> kids;
    if (d.a != 1.0) kids.push_back(make_const(d.a));
    if (d.m != 0) kids.push_back(make_pow(vz, d.m));
    for (cplx v : d.zeros) {
        ExprPtr f = is_out(v)
                        ? make_binary(ExprKind::Sub, make_const(1.0),
                                      make_binary(ExprKind::Div, vz, make_const(v)))
                        : make_binary(ExprKind::Sub, make_const(1.0),
                                      make_binary(ExprKind::Div, make_const(v), vz));
        kids.push_back(f);
    }
    for (cplx v : d.poles) {
        ExprPtr f = is_out(v)
                        ? make_binary(ExprKind::Sub, make_const(1.0),
                                      make_binary(ExprKind::Div, vz, make_const(v)))
                        : make_binary(ExprKind::Sub, make_const(1.0),
                                      make_binary(ExprKind::Div, make_const(v), vz));
        kids.push_back(make_pow(f, -1));
    }
    if (kids.empty()) kids.push_back(make_const(1.0));
    return make_product(std::move(kids));
}

}  // namespace

Curve repr_curve(const OstrowskiData& d) {
    validate_data(d);
    Curve c;
    c.coords = {make_const(1.0), repr_expr(d, make_var())};
    c.domain = Domain::punctured;
    return c;
}

Curve repr_exp_curve(const OstrowskiData& d) {
    validate_data(d);
    Curve c;
    c.coords = {make_const(1.0),
                repr_expr(d, make_unary(ExprKind::Exp, make_var()))};
    c.domain = Domain::plane;
    return c;
}

}  // namespace holocurve
