#pragma once

#include "holocurve/curve.hpp"
#include "holocurve/types.hpp"

namespace holocurve {

/// One step of the rescaling construction on |z| < n_radius: maximize
/// h(z) = (n - |z|) f#(z), then recentre and stretch so the new curve g has
/// unit spherical derivative at the origin.
struct RescaleResult {
    double n_radius = 0.0;
    cplx z_n{};        // maximizer of h
    double M_n = 0.0;  // h(z_n)
    double rho_n = 0.0;  // 1 / f#(z_n)
    Curve rescaled;    // g(w) = f(z_n + rho_n w)
};

RescaleResult brody_extract(const Curve& c, double n_radius,
                            const GridSpec& grid = {});

/// Checks g#(0) = 1 and the pre-limit bound
///   max_{|w| <= r} g#(w) <= (n - |z_n|) / (n - |z_n| - rho_n r) + slack.
struct RescaleCheck {
    bool ok = false;
    double g_sharp_0 = 0.0;
    double max_g_sharp = 0.0;
    cplx argmax{};
    double bound = 0.0;
};

RescaleCheck verify_rescaled(const RescaleResult& res, double r,
                             double slack = 0.05, const GridSpec& grid = {});

}  // namespace holocurve
