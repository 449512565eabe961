#pragma once

#include <functional>
#include <vector>

#include "holocurve/types.hpp"

namespace holocurve {

/// Mean of f over theta in [0, 2pi), trapezoid with node doubling starting
/// at n0 nodes, stopping when two successive levels agree to tol. Periodic
/// smooth integrands converge spectrally. Non-finite samples raise a
/// NumericError with kind "non-finite-sample".
double circle_mean(const std::function<double(double)>& f, double tol,
                   int n0 = 64, int nmax = 1 << 16);

/// Integral of f over [a, b]: doubling trapezoid with one Richardson
/// extrapolation level, stopping when successive extrapolants agree to tol.
/// Samples are reused across levels, so f is called once per node.
double segment_integral(const std::function<double(double)>& f, double a,
                        double b, double tol, int n0 = 64, int nmax = 1 << 20);

/// Gauss-Legendre nodes and weights on [-1, 1], cached per order.
const std::vector<std::pair<double, double>>& gauss_legendre(int n);

/// Area integral of g over the annulus r0 <= |z - center| <= r1 in the
/// plane: Gauss-Legendre radially, trapezoid in angle, both doubled until
/// two successive refinements agree to tol.
double annulus_integral(const std::function<double(cplx)>& g, cplx center,
                        double r0, double r1, double tol, int nr0 = 32,
                        int na0 = 64, int nrmax = 2048, int namax = 8192);

}  // namespace holocurve
