#pragma once

#include <vector>

#include "holocurve/curve.hpp"
#include "holocurve/types.hpp"

namespace holocurve {

/// Cartan characteristic of a plane curve:
///   T(r) = mean_theta log ||f~(r e^{i theta})|| - log ||f~(0)||.
/// When 0 is a zero or pole of some coordinate the base term falls back to
/// the circle mean at r0 = 1e-4 (warned). A pole on the integration circle
/// is dodged once by growing r by a factor 1 + 1e-9 (warned).
double cartan_T(const Curve& c, double r, double tol = 1e-6,
                Diagnostics* diag = nullptr);

/// Ahlfors counting function A(t) = (1/pi) * integral of (f#)^2 over |z|<=t.
double ahlfors_A(const Curve& c, double t, double tol = 1e-6,
                 Diagnostics* diag = nullptr);

/// integral_0^r A(t) dt/t, computed in u = log t over [log(1e-3 r), log r]
/// with the sub-cutoff tail estimated from A ~ c t^2 as A(t0)/2.
double jensen_integral(const Curve& c, double r, double tol = 1e-6,
                       Diagnostics* diag = nullptr);

/// T(r) - integral_0^r A dt/t per radius; ~0 for holomorphic curves.
std::vector<double> jensen_consistency(const Curve& c,
                                       const std::vector<double>& rs,
                                       double tol = 1e-6,
                                       Diagnostics* diag = nullptr);

/// Characteristic of a punctured-plane curve relative to the unit circle:
/// circle mean of log ||f~|| at r minus the same mean at 1.
double cstar_T(const Curve& c, double r, double tol = 1e-6,
               Diagnostics* diag = nullptr);

/// (1/pi) * integral of (f#)^2 over the annulus between 1 and r.
double cstar_A(const Curve& c, double r, double tol = 1e-6,
               Diagnostics* diag = nullptr);

/// On C* the Jensen identity holds up to a flux constant:
///   T(r) = c0 log r + integral_1^r A(t) dlog t.
/// Fits F(r) = T(r) - integral over log r by a line; c0 is the slope and
/// max_dev the largest absolute residual (0 for a true curve).
struct CstarJensen {
    double c0 = 0.0;
    double max_dev = 0.0;
};

CstarJensen cstar_jensen_consistency(const Curve& c,
                                     const std::vector<double>& rs,
                                     double tol = 1e-6,
                                     Diagnostics* diag = nullptr);

/// Least-squares slope of log T against log r over the upper half of a
/// geometric radius grid, with the fit quality.
struct OrderEstimate {
    double order = 0.0;
    double fit_r2 = 0.0;
    std::vector<double> radii;
    std::vector<double> T;
};

OrderEstimate order_estimate(const Curve& c, double r0, double r1, int npts,
                             double tol = 1e-6, Diagnostics* diag = nullptr);

/// Checks T(r) <= K^2 r^2 / 2 on the given radii.
struct TypeBoundReport {
    bool ok = true;
    std::vector<std::size_t> failures;
    std::vector<double> T;
};

TypeBoundReport normal_type_bound(const Curve& c, double bound,
                                  const std::vector<double>& rs,
                                  double tol = 1e-6,
                                  Diagnostics* diag = nullptr);

/// Unintegrated and integrated counting functions of an explicit zero set:
/// n(r) = #{|e| <= r}, N(r) = sum_{|e| <= r} log(r/|e|). Zero may not be a
/// member.
struct CountingReport {
    std::vector<double> radii;
    std::vector<int> n;
    std::vector<double> N;
};

CountingReport counting_N(const std::vector<cplx>& zeros,
                          const std::vector<double>& rs);

/// Number of solutions of f = a inside |z| < r (counted with multiplicity)
/// minus poles for meromorphic representations, by the argument principle on
/// the circle. The contour must stay sin-distance > 1e-8 from the target.
int winding_count(const Curve& c, const HomogeneousPoint& target, double r,
                  int samples0 = 512);

/// Mass of (f#)^2 over discs of radius delta centered at the given points.
struct MassReport {
    std::vector<double> masses;
    double min_mass = 0.0;
    double max_mass = 0.0;
};

MassReport binormal_mass(const Curve& c, double delta,
                         const std::vector<cplx>& centers, double tol = 1e-4,
                         Diagnostics* diag = nullptr);

/// Row-per-radius summary used by the CLI.
struct CharReport {
    std::vector<double> radii;
    std::vector<double> T;
    std::vector<double> A;
    std::vector<double> jensen_residual;
    double order = 0.0;
    double fit_r2 = 0.0;
};

CharReport char_report(const Curve& c, const std::vector<double>& rs,
                       double tol = 1e-6, Diagnostics* diag = nullptr);

}  // namespace holocurve
