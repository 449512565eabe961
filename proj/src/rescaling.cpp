#include "holocurve/rescaling.hpp"

#include <cmath>
#include <limits>

namespace holocurve {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct Best {
    double value = -std::numeric_limits<double>::infinity();
    cplx at{};
    void offer(double v, cplx z) {
        if (v > value) {
            value = v;
            at = z;
            return;
        }
        if (v != value) return;
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
};

}  // namespace

RescaleResult brody_extract(const Curve& c, double n_radius,
                            const GridSpec& grid) {
    validate_curve(c);
    if (c.domain != Domain::plane)
        throw ValidationError("invalid-domain",
                              "rescaling needs a plane-domain curve");
    if (!(n_radius > 0.0))
        throw ValidationError("invalid-point", "disc radius must be positive");
    Best best;
    auto offer = [&](cplx z) {
        double w = n_radius - std::abs(z);
        if (w <= 0.0) return;
        best.offer(w * spherical_derivative(c, z), z);
    };
    offer(0.0);
    double dr = n_radius / grid.nx;
    double dth = kTwoPi / grid.ny;
    for (int i = 0; i < grid.nx; ++i) {
        double s = (i + 0.5) * dr;
        for (int j = 0; j < grid.ny; ++j) offer(std::polar(s, j * dth));
    }
    double h = std::max(dr, std::abs(best.at) * dth);
    for (int round = 0; round < grid.refine_rounds; ++round) {
        cplx c0 = best.at;
        double f = h / grid.refine_factor;
        for (int i = -grid.refine_factor; i <= grid.refine_factor; ++i)
            for (int j = -grid.refine_factor; j <= grid.refine_factor; ++j)
                offer(c0 + cplx(i * f, j * f));
        h = f;
    }
    if (!(best.value > 1e-9))
        throw ValidationError("constant-curve",
                              "curve is numerically constant on the disc");
    RescaleResult res;
    res.n_radius = n_radius;
    res.z_n = best.at;
    res.M_n = best.value;
    double fs = spherical_derivative(c, best.at);
    res.rho_n = 1.0 / fs;
    res.rescaled = affine_reparam(c, res.rho_n, res.z_n);
    return res;
}

RescaleCheck verify_rescaled(const RescaleResult& res, double r, double slack,
                             const GridSpec& grid) {
    if (!(r > 0.0)) throw ValidationError("invalid-point", "radius must be > 0");
    RescaleCheck chk;
    chk.g_sharp_0 = spherical_derivative(res.rescaled, 0.0);
    SupResult sup = sup_sphderiv_grid(res.rescaled, Annulus{0.0, r}, grid);
    chk.max_g_sharp = sup.sup;
    chk.argmax = sup.argmax;
    double margin = res.n_radius - std::abs(res.z_n) - res.rho_n * r;
    chk.bound = margin > 0.0
                    ? (res.n_radius - std::abs(res.z_n)) / margin
                    : std::numeric_limits<double>::infinity();
    chk.ok = std::abs(chk.g_sharp_0 - 1.0) <= 1e-6 &&
             chk.max_g_sharp <= chk.bound + slack;
    return chk;
}

}  // namespace holocurve
