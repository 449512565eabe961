#include "holocurve/curve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

namespace holocurve {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

void validate_curve(const Curve& c) {
    if (c.coords.size() < 2)
        throw ValidationError("invalid-curve",
                              "curve needs at least 2 coordinates");
    for (const ExprPtr& e : c.coords)
        if (!e) throw ValidationError("invalid-curve", "null coordinate");
}

double curve_scale(const Curve& c) {
    if (c.scale_cache >= 0.0) return c.scale_cache;
    validate_curve(c);
    double s = 0.0;
    for (int j = 0; j < 32; ++j) {
        cplx z = std::polar(1.0, kTwoPi * (j + 0.5) / 32.0);
        for (const ExprPtr& e : c.coords) {
            try {
                LaurentJet jet = eval_laurent(*e, z);
                if (!jet.zero && jet.m == 0) {
                    double v = std::abs(jet.c0);
                    if (std::isfinite(v)) s = std::max(s, v);
                }
            } catch (const Error&) {
                // sample landed on a singular point; other samples suffice
            }
        }
    }
    c.scale_cache = s;
    return s;
}

CurveJet eval_curve(const Curve& c, cplx z) {
    validate_curve(c);
    std::size_t n1 = c.coords.size();
    std::vector<LaurentJet> jets(n1);
    int m_min = std::numeric_limits<int>::max();
    bool any = false;
    for (std::size_t i = 0; i < n1; ++i) {
        jets[i] = eval_laurent(*c.coords[i], z);
        if (!jets[i].zero) {
            any = true;
            m_min = std::min(m_min, jets[i].m);
        }
    }
    if (!any)
        throw DegenerateError(z, "all coordinates vanish identically");
    CurveJet out;
    out.values.assign(n1, 0.0);
    out.derivs.assign(n1, 0.0);
    for (std::size_t i = 0; i < n1; ++i) {
        if (jets[i].zero) continue;
        int d = jets[i].m - m_min;
        if (d == 0) {
            out.values[i] = jets[i].c0;
            out.derivs[i] = jets[i].c1;
        } else if (d == 1) {
            out.derivs[i] = jets[i].c0;
        }
    }
    double smax = sup_norm(out.values);
    if (!(smax > 1e-12 * curve_scale(c)))
        throw DegenerateError(
            z, "degenerate representation: all coordinates below the "
               "resolution floor");
    return out;
}

double log_curve_norm(const Curve& c, cplx z) {
    validate_curve(c);
    double lmax = -kInf;
    std::vector<double> ls;
    ls.reserve(c.coords.size());
    for (const ExprPtr& e : c.coords) {
        LogComplex lc = eval_log(*e, z);
        ls.push_back(lc.logabs);
        lmax = std::max(lmax, lc.logabs);
    }
    if (lmax == -kInf || lmax == kInf || std::isnan(lmax)) return lmax;
    double q = 0.0;
    for (double l : ls) q += std::exp(2.0 * (l - lmax));
    return lmax + 0.5 * std::log(q);
}

double spherical_derivative(const Curve& c, cplx z) {
    CurveJet j = eval_curve(c, z);
    std::size_t n1 = j.values.size();
    double s = sup_norm(j.values);
    double num2 = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n1; ++i) {
        j.values[i] /= s;
        j.derivs[i] /= s;
    }
    for (std::size_t i = 0; i < n1; ++i) den += std::norm(j.values[i]);
    for (std::size_t i = 0; i + 1 < n1; ++i)
        for (std::size_t k = i + 1; k < n1; ++k)
            num2 += std::norm(j.values[i] * j.derivs[k] -
                              j.values[k] * j.derivs[i]);
    return std::sqrt(num2) / den;
}

double intrinsic_sphderiv(const Curve& c, cplx z) {
    double f = spherical_derivative(c, z);
    return c.domain == Domain::punctured ? std::abs(z) * f : f;
}

namespace {

struct Best {
    double value = -kInf;
    cplx at{};
    void offer(double v, cplx z) {
        if (v > value) {
            value = v;
            at = z;
        } else if (v == value) {
            double ra = std::abs(z), rb = std::abs(at);
            if (ra < rb) {
                at = z;
            } else if (ra == rb) {
                double aa = std::arg(z), ab = std::arg(at);
                if (aa < 0) aa += kTwoPi;
                if (ab < 0) ab += kTwoPi;
                if (aa < ab) at = z;
            }
        }
    }
};

}  // namespace

SupResult sup_sphderiv_grid(const Curve& c, const Region& region,
                            const GridSpec& grid) {
    validate_curve(c);
    if (grid.nx < 2 || grid.ny < 2)
        throw ValidationError("invalid-region", "grid must be at least 2x2");
    Best best;
    auto offer = [&](cplx z) {
        if (c.domain == Domain::punctured && z == 0.0) return;
        best.offer(intrinsic_sphderiv(c, z), z);
    };
    double step_x = 0.0, step_y = 0.0;
    if (std::holds_alternative<Rect>(region)) {
        const Rect& r = std::get<Rect>(region);
        if (!(r.x1 > r.x0) || !(r.y1 > r.y0))
            throw ValidationError("invalid-region", "empty rectangle");
        step_x = (r.x1 - r.x0) / (grid.nx - 1);
        step_y = (r.y1 - r.y0) / (grid.ny - 1);
        for (int i = 0; i < grid.nx; ++i)
            for (int j = 0; j < grid.ny; ++j)
                offer(cplx(r.x0 + i * step_x, r.y0 + j * step_y));
    } else {
        const Annulus& a = std::get<Annulus>(region);
        if (!(a.r1 > a.r0) || a.r0 < 0.0)
            throw ValidationError("invalid-region", "bad annulus radii");
        if (c.domain == Domain::punctured && a.r0 == 0.0)
            throw ValidationError("invalid-region",
                                  "annulus must avoid 0 on a punctured domain");
        double dr = (a.r1 - a.r0) / grid.nx;
        double dth = kTwoPi / grid.ny;
        if (a.r0 == 0.0) offer(0.0);
        for (int i = 0; i < grid.nx; ++i) {
            double s = a.r0 + (i + 0.5) * dr;
            for (int j = 0; j < grid.ny; ++j)
                offer(std::polar(s, j * dth));
        }
        step_x = dr;
        step_y = std::max(dr, a.r1 * dth);
    }
    // local refinement keeps the scan cheap while pinning the maximizer
    double hx = std::holds_alternative<Rect>(region)
                    ? step_x
                    : std::max(step_x, std::abs(best.at) * (kTwoPi / grid.ny));
    double hy = std::holds_alternative<Rect>(region) ? step_y : hx;
    auto inside = [&](cplx z) {
        if (std::holds_alternative<Rect>(region)) {
            const Rect& r = std::get<Rect>(region);
            return z.real() >= r.x0 && z.real() <= r.x1 && z.imag() >= r.y0 &&
                   z.imag() <= r.y1;
        }
        const Annulus& a = std::get<Annulus>(region);
        double m = std::abs(z);
        return m >= a.r0 && m <= a.r1;
    };
    for (int round = 0; round < grid.refine_rounds; ++round) {
        cplx c0 = best.at;
        double fx = hx / grid.refine_factor, fy = hy / grid.refine_factor;
        for (int i = -grid.refine_factor; i <= grid.refine_factor; ++i)
            for (int j = -grid.refine_factor; j <= grid.refine_factor; ++j) {
                cplx z = c0 + cplx(i * fx, j * fy);
                if (inside(z) && !(c.domain == Domain::punctured && z == 0.0))
                    offer(z);
            }
        hx = fx;
        hy = fy;
    }
    return SupResult{best.value, best.at};
}

Hypersurface hyperplane_through(const HomogeneousPoint& target) {
    validate_point(target);
    if (target.dim() != 1)
        throw ValidationError("invalid-point",
                              "hyperplane_through expects a point of P^1");
    return Hypersurface{{-target.coords[1], target.coords[0]}};
}

double hyperplane_sin_distance(const Curve& c, cplx z, const Hypersurface& h) {
    if (h.coeffs.size() != c.coords.size())
        throw ValidationError("invalid-point", "hypersurface dimension mismatch");
    CurveJet j = eval_curve(c, z);
    cplx form = 0.0;
    for (std::size_t i = 0; i < h.coeffs.size(); ++i)
        form += h.coeffs[i] * j.values[i];
    return std::abs(form) / (euclid_norm(j.values) * euclid_norm(h.coeffs));
}

RatioReport ratios_bound_check(const Curve& c, double bound,
                               const std::vector<cplx>& samples) {
    if (!(bound > 0.0))
        throw ValidationError("invalid-point", "bound must be positive");
    RatioReport rep;
    rep.bound = bound;
    for (cplx z : samples) {
        double v = intrinsic_sphderiv(c, z);
        rep.max_value = std::max(rep.max_value, v);
        if (v > bound) {
            rep.ok = false;
            if (rep.violations.size() < 16) rep.violations.push_back(z);
        }
    }
    return rep;
}

namespace {

// rank of a square complex matrix by elimination with partial pivoting
bool full_rank(std::vector<ComplexVec> m) {
    std::size_t n = m.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (std::abs(m[piv][col]) < 1e-12) return false;
        std::swap(m[col], m[piv]);
        for (std::size_t r = col + 1; r < n; ++r) {
            cplx f = m[r][col] / m[col][col];
            for (std::size_t cc = col; cc < n; ++cc) m[r][cc] -= f * m[col][cc];
        }
    }
    return true;
}

void check_admissible(const std::vector<Hypersurface>& hs, std::size_t n1) {
    for (const Hypersurface& h : hs) {
        if (h.coeffs.size() != n1)
            throw ValidationError("invalid-point",
                                  "hypersurface dimension mismatch");
        if (sup_norm(h.coeffs) == 0.0)
            throw ValidationError("invalid-point", "zero hypersurface");
    }
    if (hs.size() < n1) return;
    std::vector<std::size_t> idx(n1);
    // iterate all (n+1)-subsets
    for (std::size_t i = 0; i < n1; ++i) idx[i] = i;
    while (true) {
        std::vector<ComplexVec> m;
        m.reserve(n1);
        for (std::size_t i : idx) {
            ComplexVec row = hs[i].coeffs;
            double s = sup_norm(row);
            for (cplx& v : row) v /= s;
            m.push_back(std::move(row));
        }
        if (!full_rank(std::move(m)))
            throw ValidationError(
                "non-admissible-hypersurfaces",
                "a set of n+1 hypersurfaces shares a projective zero");
        std::size_t k = n1;
        while (k > 0) {
            --k;
            if (idx[k] != hs.size() - n1 + k) break;
            if (k == 0) return;
        }
        ++idx[k];
        for (std::size_t j = k + 1; j < n1; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

DiscReport disc_intersection_test(const Curve& c,
                                  const std::vector<Hypersurface>& hs,
                                  double delta, const Rect& region,
                                  double proximity_tol) {
    validate_curve(c);
    if (!(delta > 0.0))
        throw ValidationError("invalid-point", "disc diameter must be positive");
    if (hs.empty())
        throw ValidationError("invalid-point", "need at least one hypersurface");
    if (hs.size() > 64)
        throw ValidationError("invalid-point", "at most 64 hypersurfaces");
    check_admissible(hs, c.coords.size());
    double h = delta / 8.0;
    int nx = std::max(2, static_cast<int>(std::ceil((region.x1 - region.x0) / h)) + 1);
    int ny = std::max(2, static_cast<int>(std::ceil((region.y1 - region.y0) / h)) + 1);
    double dx = (region.x1 - region.x0) / (nx - 1);
    double dy = (region.y1 - region.y0) / (ny - 1);
    std::vector<std::uint64_t> mask(static_cast<std::size_t>(nx) * ny, 0);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            cplx z(region.x0 + i * dx, region.y0 + j * dy);
            if (c.domain == Domain::punctured && z == 0.0) continue;
            std::uint64_t m = 0;
            for (std::size_t k = 0; k < hs.size(); ++k)
                if (hyperplane_sin_distance(c, z, hs[k]) < proximity_tol)
                    m |= std::uint64_t(1) << k;
            mask[static_cast<std::size_t>(i) * ny + j] = m;
        }
    DiscReport rep;
    int stride = 4;  // disc centers every half-diameter
    int radius_cells_x = static_cast<int>(std::ceil(delta / 2.0 / dx));
    int radius_cells_y = static_cast<int>(std::ceil(delta / 2.0 / dy));
    for (int i = 0; i < nx; i += stride)
        for (int j = 0; j < ny; j += stride) {
            cplx center(region.x0 + i * dx, region.y0 + j * dy);
            std::uint64_t m = 0;
            for (int a = std::max(0, i - radius_cells_x);
                 a < std::min(nx, i + radius_cells_x + 1); ++a)
                for (int b = std::max(0, j - radius_cells_y);
                     b < std::min(ny, j + radius_cells_y + 1); ++b) {
                    cplx z(region.x0 + a * dx, region.y0 + b * dy);
                    if (std::abs(z - center) <= delta / 2.0)
                        m |= mask[static_cast<std::size_t>(a) * ny + b];
                }
            int cnt = std::popcount(m);
            ++rep.discs_checked;
            if (cnt > rep.max_count) {
                rep.max_count = cnt;
                rep.worst_center = center;
            }
        }
    return rep;
}

Curve builtin_curve(const std::string& name, const std::vector<double>& params) {
    Curve c;
    if (name == "cos_curve") {
        if (params.size() != 1)
            throw ValidationError("invalid-point", "cos_curve needs alpha");
        double alpha = params[0];
        c.coords = {make_unary(ExprKind::Cos, make_var()),
                    make_unary(ExprKind::Cos,
                               make_binary(ExprKind::Mul, make_const(alpha),
                                           make_var())),
                    make_var()};
        c.domain = Domain::plane;
        return c;
    }
    if (name == "fryntov") {
        if (params.size() != 2)
            throw ValidationError("invalid-point", "fryntov needs rho, k_max");
        double rho = params[0];
        int k_max = static_cast<int>(params[1]);
        if (!(rho > 0.0) || rho >= 1.0 || k_max < 1 || k_max > 64)
            throw ValidationError("invalid-point",
                                  "fryntov needs 0 < rho < 1, 1 <= k_max <= 64");
        std::vector<ExprPtr> factors;
        for (int k = 1; k <= k_max; ++k) {
            int nk = static_cast<int>(std::floor(std::pow(2.0, rho * k)));
            if (nk <= 0) continue;
            ExprPtr lin = make_binary(
                ExprKind::Sub, make_const(1.0),
                make_binary(ExprKind::Mul, make_const(std::pow(2.0, -k)),
                            make_var()));
            factors.push_back(nk == 1 ? lin : make_pow(lin, nk));
        }
        c.coords = {make_const(1.0), make_product(std::move(factors))};
        c.domain = Domain::plane;
        return c;
    }
    if (name == "lehto_product") {
        if (params.size() != 2)
            throw ValidationError("invalid-point",
                                  "lehto_product needs t, k_range");
        double t = params[0];
        int kr = static_cast<int>(params[1]);
        if (!(t > 1.0) || kr < 0 || kr > 200)
            throw ValidationError("invalid-point",
                                  "lehto_product needs t > 1, 0 <= k_range <= 200");
        if (kr * std::log10(t) > 280.0)
            throw ValidationError("invalid-point",
                                  "t^k_range overflows double precision");
        std::vector<ExprPtr> factors;
        for (int k = -kr; k <= kr; ++k) {
            double tk = std::pow(t, k);
            factors.push_back(make_binary(
                ExprKind::Div,
                make_binary(ExprKind::Add, make_var(), make_const(tk)),
                make_binary(ExprKind::Sub, make_var(), make_const(tk))));
        }
        c.coords = {make_const(1.0), make_product(std::move(factors))};
        c.domain = Domain::punctured;
        return c;
    }
    throw ValidationError("unknown-name", "unknown builtin curve: " + name);
}

Curve affine_reparam(const Curve& c, cplx alpha, cplx beta) {
    validate_curve(c);
    Curve r;
    r.domain = c.domain;
    r.coords.reserve(c.coords.size());
    for (const ExprPtr& e : c.coords)
        r.coords.push_back(make_affine(e, alpha, beta));
    return r;
}

namespace {

void record(PointCheck& pc, double ratio, cplx z) {
    if (ratio > pc.worst) {
        pc.worst = ratio;
        pc.worst_at = z;
    }
    if (ratio > 1.0) {
        pc.ok = false;
        ++pc.violations;
    }
}

}  // namespace

ChpmReport chpm_checks(const Curve& c, const Rect& region, int nx, int ny,
                       double max_abs, double slack) {
    validate_curve(c);
    bool unit_first = c.dim() == 1;
    if (unit_first)
        for (cplx z : {cplx{0.0, 0.0}, cplx{0.7, 0.3}, cplx{-0.4, 1.1}}) {
            JetValue v = eval_jet(*c.coords[0], z);
            if (std::abs(v.value - 1.0) > 1e-12 ||
                std::abs(v.derivative) > 1e-12)
                unit_first = false;
        }
    if (!unit_first)
        throw ValidationError("invalid-curve",
                              "expected a curve of the form (1 : f)");
    if (c.domain != Domain::plane)
        throw ValidationError("invalid-curve", "expected a plane curve");
    ChpmReport rep;
    double dx = (region.x1 - region.x0) / (nx - 1);
    double dy = (region.y1 - region.y0) / (ny - 1);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            cplx z(region.x0 + i * dx, region.y0 + j * dy);
            if (max_abs > 0.0 && std::abs(z) > max_abs) continue;
            JetValue f = eval_jet(*c.coords[1], z);
            double af = std::abs(f.value), ad = std::abs(f.derivative);
            double sph = ad / (1.0 + af * af);
            record(rep.sph, sph / (1.0 + slack), z);
            if (af <= 1.0) record(rep.low, ad / (2.0 + slack), z);
            if (af > 1.0) record(rep.high, ad / af / (2.0 + slack), z);
            double gbound = std::exp(std::max(2.0 * std::abs(z), 1.0));
            record(rep.growth, af / (gbound * (1.0 + slack)), z);
            record(rep.deriv, ad / (2.0 * std::max(af, 1.0) * (1.0 + slack)), z);
        }
    return rep;
}

}  // namespace holocurve
