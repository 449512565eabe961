#include "holocurve/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "holocurve/quadrature.hpp"

namespace holocurve {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kInf = std::numeric_limits<double>::infinity();

double circle_lognorm_mean(const Curve& c, double rho, double tol,
                           Diagnostics* diag) {
    auto f = [&](double th) { return log_curve_norm(c, std::polar(rho, th)); };
    try {
        return circle_mean(f, tol);
    } catch (const NumericError& e) {
        if (e.kind != "non-finite-sample") throw;
        double rho2 = rho * (1.0 + 1e-9);
        warn(diag, "zero or pole on the integration circle; radius "
                   "perturbed by 1e-9");
        auto f2 = [&](double th) {
            return log_curve_norm(c, std::polar(rho2, th));
        };
        return circle_mean(f2, tol);
    }
}

void require_plane(const Curve& c, const char* who) {
    if (c.domain != Domain::plane)
        throw ValidationError("invalid-domain",
                              std::string(who) + " needs a plane-domain curve");
}

void require_punctured(const Curve& c, const char* who) {
    if (c.domain != Domain::punctured)
        throw ValidationError(
            "invalid-domain",
            std::string(who) + " needs a punctured-plane curve");
}

}  // namespace

double cartan_T(const Curve& c, double r, double tol, Diagnostics* diag) {
    validate_curve(c);
    require_plane(c, "cartan_T");
    if (!(r > 0.0)) throw ValidationError("invalid-point", "radius must be > 0");
    double base;
    bool fallback = false;
    try {
        base = log_curve_norm(c, 0.0);
        if (!std::isfinite(base)) fallback = true;
    } catch (const Error&) {
        fallback = true;
    }
    if (fallback) {
        warn(diag, "coordinate zero or pole at the origin; base term taken "
                   "as the circle mean at r0 = 1e-4");
        base = circle_lognorm_mean(c, 1e-4, tol, diag);
    }
    return circle_lognorm_mean(c, r, tol, diag) - base;
}

double ahlfors_A(const Curve& c, double t, double tol, Diagnostics* diag) {
    validate_curve(c);
    require_plane(c, "ahlfors_A");
    if (!(t > 0.0)) throw ValidationError("invalid-point", "radius must be > 0");
    (void)diag;
    auto g = [&](cplx z) {
        double v = spherical_derivative(c, z);
        return v * v;
    };
    constexpr double kPi = 3.14159265358979323846;
    return annulus_integral(g, 0.0, 0.0, t, tol * kPi) / kPi;
}

double jensen_integral(const Curve& c, double r, double tol,
                       Diagnostics* diag) {
    validate_curve(c);
    require_plane(c, "jensen_integral");
    if (!(r > 0.0)) throw ValidationError("invalid-point", "radius must be > 0");
    double inner = std::max(tol / 20.0, 1e-9);
    double t0 = 1e-3 * r;
    auto f = [&](double u) { return ahlfors_A(c, std::exp(u), inner, diag); };
    double body = segment_integral(f, std::log(t0), std::log(r), tol, 64, 1 << 14);
    // below t0 the counting function is ~ c t^2, so the remaining
    // integral dt/t contributes A(t0)/2
    double tail = ahlfors_A(c, t0, inner, diag) / 2.0;
    return body + tail;
}

std::vector<double> jensen_consistency(const Curve& c,
                                       const std::vector<double>& rs,
                                       double tol, Diagnostics* diag) {
    std::vector<double> out;
    out.reserve(rs.size());
    for (double r : rs)
        out.push_back(cartan_T(c, r, tol, diag) -
                      jensen_integral(c, r, tol, diag));
    return out;
}

double cstar_T(const Curve& c, double r, double tol, Diagnostics* diag) {
    validate_curve(c);
    require_punctured(c, "cstar_T");
    if (!(r > 0.0)) throw ValidationError("invalid-point", "radius must be > 0");
    return circle_lognorm_mean(c, r, tol, diag) -
           circle_lognorm_mean(c, 1.0, tol, diag);
}

double cstar_A(const Curve& c, double r, double tol, Diagnostics* diag) {
    validate_curve(c);
    require_punctured(c, "cstar_A");
    if (!(r > 0.0)) throw ValidationError("invalid-point", "radius must be > 0");
    (void)diag;
    if (r == 1.0) return 0.0;
    double a = std::min(1.0, r), b = std::max(1.0, r);
    auto g = [&](cplx z) {
        double v = spherical_derivative(c, z);
        return v * v;
    };
    constexpr double kPi = 3.14159265358979323846;
    return annulus_integral(g, 0.0, a, b, tol * kPi) / kPi;
}

CstarJensen cstar_jensen_consistency(const Curve& c,
                                     const std::vector<double>& rs,
                                     double tol, Diagnostics* diag) {
    require_punctured(c, "cstar_jensen_consistency");
    if (rs.size() < 3)
        throw ValidationError("invalid-point", "need at least 3 radii");
    double inner = std::max(tol / 20.0, 1e-9);
    std::vector<double> x, y;
    for (double r : rs) {
        if (!(r > 0.0))
            throw ValidationError("invalid-point", "radii must be > 0");
        double J;
        if (r == 1.0) {
            J = 0.0;
        } else {
            auto f = [&](double u) { return cstar_A(c, std::exp(u), inner, diag); };
            J = r > 1.0 ? segment_integral(f, 0.0, std::log(r), tol, 64, 1 << 14)
                        : -segment_integral(f, std::log(r), 0.0, tol, 64, 1 << 14);
        }
        x.push_back(std::log(r));
        y.push_back(cstar_T(c, r, tol, diag) - J);
    }
    double xm = 0.0, ym = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        xm += x[i];
        ym += y[i];
    }
    xm /= x.size();
    ym /= y.size();
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - xm) * (x[i] - xm);
        sxy += (x[i] - xm) * (y[i] - ym);
    }
    CstarJensen out;
    out.c0 = sxy / sxx;
    double b0 = ym - out.c0 * xm;
    for (std::size_t i = 0; i < x.size(); ++i)
        out.max_dev = std::max(out.max_dev,
                               std::abs(y[i] - (out.c0 * x[i] + b0)));
    return out;
}

OrderEstimate order_estimate(const Curve& c, double r0, double r1, int npts,
                             double tol, Diagnostics* diag) {
    validate_curve(c);
    if (!(r1 > r0) || !(r0 > 0.0))
        throw ValidationError("invalid-point", "need 0 < r0 < r1");
    if (npts < 4 || npts > 64)
        throw ValidationError("invalid-point", "need 4 <= npts <= 64");
    OrderEstimate est;
    double q = std::log(r1 / r0) / (npts - 1);
    for (int i = 0; i < npts; ++i) {
        double r = r0 * std::exp(q * i);
        double T = c.domain == Domain::plane ? cartan_T(c, r, tol, diag)
                                             : cstar_T(c, r, tol, diag);
        est.radii.push_back(r);
        est.T.push_back(T);
    }
    std::vector<double> x, y;
    for (int i = npts / 2; i < npts; ++i) {
        if (!(est.T[i] > 0.0))
            throw NumericError("undefined-order",
                               "characteristic not positive on the fit range");
        x.push_back(std::log(est.radii[i]));
        y.push_back(std::log(est.T[i]));
    }
    double xm = 0.0, ym = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        xm += x[i];
        ym += y[i];
    }
    xm /= x.size();
    ym /= y.size();
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - xm) * (x[i] - xm);
        sxy += (x[i] - xm) * (y[i] - ym);
        syy += (y[i] - ym) * (y[i] - ym);
    }
    est.order = sxy / sxx;
    double ss_res = 0.0;
    double b0 = ym - est.order * xm;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double e = y[i] - (est.order * x[i] + b0);
        ss_res += e * e;
    }
    est.fit_r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return est;
}

TypeBoundReport normal_type_bound(const Curve& c, double bound,
                                  const std::vector<double>& rs, double tol,
                                  Diagnostics* diag) {
    if (!(bound > 0.0))
        throw ValidationError("invalid-point", "bound must be positive");
    TypeBoundReport rep;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        double T = cartan_T(c, rs[i], tol, diag);
        rep.T.push_back(T);
        double cap = bound * bound * rs[i] * rs[i] / 2.0;
        if (T > cap * (1.0 + 1e-9) + 1e-12) {
            rep.ok = false;
            rep.failures.push_back(i);
        }
    }
    return rep;
}

CountingReport counting_N(const std::vector<cplx>& zeros,
                          const std::vector<double>& rs) {
    for (cplx e : zeros)
        if (e == 0.0)
            throw ValidationError("zero-in-set",
                                  "counting functions need 0 outside the set");
    CountingReport rep;
    for (double r : rs) {
        if (!(r > 0.0))
            throw ValidationError("invalid-point", "radii must be > 0");
        int n = 0;
        double N = 0.0;
        for (cplx e : zeros) {
            double m = std::abs(e);
            if (m <= r) {
                ++n;
                N += std::log(r / m);
            }
        }
        rep.radii.push_back(r);
        rep.n.push_back(n);
        rep.N.push_back(N);
    }
    return rep;
}

namespace {

// winding of a list of angles around the circle; steps must stay < pi/2
bool arg_winding(const std::vector<double>& args, double& total) {
    total = 0.0;
    std::size_t n = args.size();
    for (std::size_t j = 0; j < n; ++j) {
        double d = args[(j + 1) % n] - args[j];
        d = std::remainder(d, kTwoPi);
        if (!(std::abs(d) < kTwoPi / 4.0)) return false;
        total += d;
    }
    return true;
}

}  // namespace

int winding_count(const Curve& c, const HomogeneousPoint& target, double r,
                  int samples0) {
    validate_curve(c);
    validate_point(target);
    if (c.dim() != 1 || target.dim() != 1)
        throw ValidationError("invalid-point",
                              "winding count works on P^1 curves");
    if (!(r > 0.0)) throw ValidationError("invalid-point", "radius must be > 0");
    cplx a0 = target.coords[0], a1 = target.coords[1];
    LogComplex la0 = lc_from(a0), la1 = lc_from(a1);
    double log_anorm = std::log(euclid_norm(target.coords));
    bool finite_target = a0 != 0.0;
    for (int n = samples0; n <= (1 << 20); n *= 2) {
        std::vector<double> num_args, den_args;
        num_args.reserve(n);
        den_args.reserve(n);
        bool safe = true;
        for (int j = 0; j < n && safe; ++j) {
            cplx z = std::polar(r, kTwoPi * (j + 0.5) / n);
            LogComplex f0 = eval_log(*c.coords[0], z);
            LogComplex f1 = eval_log(*c.coords[1], z);
            // renormalize so a coordinate pole stays representable
            double shift = std::max(f0.logabs, f1.logabs);
            if (!std::isfinite(shift)) {
                safe = false;
                break;
            }
            f0.logabs -= shift;
            f1.logabs -= shift;
            LogComplex num = lc_add(lc_mul(la0, f1), lc_neg(lc_mul(la1, f0)));
            double lognorm =
                0.5 * std::log(std::exp(2.0 * f0.logabs) +
                               std::exp(2.0 * f1.logabs));
            double sind = num.logabs - lognorm - log_anorm;
            if (!(sind > std::log(1e-8)))
                throw ContourError(
                    "contour passes within sin-distance 1e-8 of the target");
            num_args.push_back(num.arg);
            den_args.push_back(finite_target ? f0.arg : f1.arg);
        }
        if (!safe) continue;
        double tn, td;
        if (!arg_winding(num_args, tn) || !arg_winding(den_args, td)) continue;
        double w = (tn - td) / kTwoPi;
        double rounded = std::round(w);
        if (std::abs(w - rounded) > 0.25)
            throw ContourError("argument increments do not close to an "
                               "integer winding");
        return static_cast<int>(rounded);
    }
    throw ContourError("argument steps stayed too large even at the maximal "
                       "sampling density");
}

MassReport binormal_mass(const Curve& c, double delta,
                         const std::vector<cplx>& centers, double tol,
                         Diagnostics* diag) {
    validate_curve(c);
    (void)diag;
    if (!(delta > 0.0))
        throw ValidationError("invalid-point", "disc radius must be positive");
    if (centers.empty())
        throw ValidationError("invalid-point", "need at least one center");
    MassReport rep;
    rep.min_mass = kInf;
    rep.max_mass = -kInf;
    for (cplx ctr : centers) {
        auto g = [&](cplx z) {
            double v = spherical_derivative(c, z);
            return v * v;
        };
        double m = annulus_integral(g, ctr, 0.0, delta, tol);
        rep.masses.push_back(m);
        rep.min_mass = std::min(rep.min_mass, m);
        rep.max_mass = std::max(rep.max_mass, m);
    }
    return rep;
}

CharReport char_report(const Curve& c, const std::vector<double>& rs,
                       double tol, Diagnostics* diag) {
    validate_curve(c);
    if (rs.empty())
        throw ValidationError("invalid-point", "need at least one radius");
    CharReport rep;
    bool plane = c.domain == Domain::plane;
    for (double r : rs) {
        rep.radii.push_back(r);
        if (plane) {
            rep.T.push_back(cartan_T(c, r, tol, diag));
            rep.A.push_back(ahlfors_A(c, r, tol, diag));
            rep.jensen_residual.push_back(rep.T.back() -
                                          jensen_integral(c, r, tol, diag));
        } else {
            rep.T.push_back(cstar_T(c, r, tol, diag));
            rep.A.push_back(cstar_A(c, r, tol, diag));
            rep.jensen_residual.push_back(0.0);
        }
    }
    if (rs.size() >= 4) {
        std::vector<double> x, y;
        for (std::size_t i = rs.size() / 2; i < rs.size(); ++i) {
            if (rep.T[i] > 0.0) {
                x.push_back(std::log(rs[i]));
                y.push_back(std::log(rep.T[i]));
            }
        }
        if (x.size() >= 2) {
            double xm = 0.0, ym = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                xm += x[i];
                ym += y[i];
            }
            xm /= x.size();
            ym /= y.size();
            double sxx = 0.0, sxy = 0.0, syy = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                sxx += (x[i] - xm) * (x[i] - xm);
                sxy += (x[i] - xm) * (y[i] - ym);
                syy += (y[i] - ym) * (y[i] - ym);
            }
            if (sxx > 0.0) {
                rep.order = sxy / sxx;
                double b0 = ym - rep.order * xm;
                double ss = 0.0;
                for (std::size_t i = 0; i < x.size(); ++i) {
                    double e = y[i] - (rep.order * x[i] + b0);
                    ss += e * e;
                }
                rep.fit_r2 = syy > 0.0 ? 1.0 - ss / syy : 1.0;
            }
        }
    }
    return rep;
}

}  // namespace holocurve
