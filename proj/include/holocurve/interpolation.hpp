#pragma once

#include <utility>
#include <vector>

#include "holocurve/curve.hpp"
#include "holocurve/projective.hpp"
#include "holocurve/types.hpp"

namespace holocurve {

/// Finite point set with verified minimal pairwise distance K.
struct SparseSet {
    std::vector<cplx> points;
    double K = 0.0;
};

/// Computes the exact minimal pairwise distance (bucket grid sized by the
/// sorted-x consecutive bound, then a 3x3 neighborhood scan). A singleton
/// gets K = infinity; duplicate points are rejected.
SparseSet validate_sparse(const std::vector<cplx>& points);

/// Two-point interpolating curve
///   g(z, (zeta; 0)) = (z^4 + 1 : z^4 + 4z + zeta_1 : z^4 + zeta_2 : ...),
/// sheet j composed with the 0<->j coordinate swap. Holomorphic in z with
/// uniformly bounded spherical derivative, g(0, a) = Psi(a), and
/// g(z, a) -> (1 : 1 : ... : 1) like |z|^-3.
HomogeneousPoint two_point_g(cplx z, const VPoint& a, int n);

/// Deviations from the two-point curve's guarantees over a sample set, as
/// ratios observed/bound (every ratio should be <= 1):
///   c:     dist(g(z,a), (1:...:1))        <= (25/4) |z|^-3
///   d:     dist(g(z,a'), g(z,a''))        <= (5/4) ||a'-a''|| |z|^-4
///   chart: ||psi^-1(U g(z,a))||           <= 7 |z|^-3
///   lip:   chart difference across a pair <= 2 ||a'-a''|| |z|^-4
struct GPropertyReport {
    int samples = 0;
    double worst_c = 0.0, worst_d = 0.0, worst_chart = 0.0, worst_lip = 0.0;
    int violations = 0;
    bool all_hold() const { return violations == 0; }
};

GPropertyReport g_properties_check(
    int n, const std::vector<cplx>& zs,
    const std::vector<std::pair<VPoint, VPoint>>& pairs);

/// Sums sum_{m != s} |z-m|^-3 and ^-4 over a sparse set, s the nearest point
/// to z (ties broken lexicographically by (Re, Im)), against the bounds
/// 200 K^-3 and 800 K^-4.
struct LatticeSums {
    double sum3 = 0.0, sum4 = 0.0;
    double bound3 = 0.0, bound4 = 0.0;
    cplx s{};
    bool ok() const { return sum3 <= bound3 && sum4 <= bound4; }
};

LatticeSums lattice_bounds_check(const SparseSet& e, cplx z);

/// Same sums over the full square lattice K(Z + iZ) truncated at radius
/// cells*K, streamed without materializing points, plus closed-form tail
/// bounds for everything beyond the truncation radius.
LatticeSums lattice_lemma_sums(double K, cplx z, int cells = 2000);

struct InterpProblem {
    SparseSet E;
    std::vector<HomogeneousPoint> targets;  // one per point, dim n each
    int n = 1;
};

void validate_problem(const InterpProblem& p);

/// The assembled interpolating curve
///   f(z, a) = P(U g(s - z, a_s), phi^s(z, a)),
///   phi^s(z, a) = sum_{m != s} psi^-1(U g(m - z, a_m)),
/// with s the nearest set point to z and U the Householder map sending the
/// all-ones direction to e_0. phi_norm (if given) receives ||phi^s||; the
/// call fails with a sparse-precondition error when that reaches 1/11.
HomogeneousPoint assemble_f(cplx z, const SparseSet& e,
                            const std::vector<VPoint>& a, const UnitaryMap& u,
                            double* phi_norm = nullptr,
                            Diagnostics* diag = nullptr);

struct InterpState {
    std::vector<VPoint> assignment;
    int iterations = 0;
    bool converged = false;
    std::vector<double> step_norms;   // ||a^k - a^{k-1}||_inf per iteration
    std::vector<double> residuals;    // fs_distance(f(m), b_m) per point
    double max_residual = 0.0;
    double max_displacement = 0.0;    // max_m ||a_m - a^0_m||
    double max_phi_norm = 0.0;        // largest ||phi_m|| seen while solving
};

/// Fixed-point solver for f(., a)|E = targets: starts from the exact
/// single-term solution a^0_m = Psi^-1(U^-1 b_m) and sweeps
///   a^k_m = local Psi^-1 of U^-1 P(b_m, -phi_m(a^{k-1}))
/// until the step norm drops below tol. Requires K > 25. Raises a numeric
/// error when measured step ratios exceed the 5/11 contraction rate
/// persistently, and re-labels branch errors with the offending point.
InterpState solve_interpolation(const InterpProblem& p, double tol = 1e-12,
                                int k_max = 200, Diagnostics* diag = nullptr);

struct QualityReport {
    double max_residual = 0.0;
    double sup_sphderiv = 0.0;
    cplx argmax{};
    double empirical_C = 0.0;  // K * sup f#
};

/// Residuals of a solved assignment plus a grid estimate of sup f# of the
/// assembled curve over the region (central differences).
QualityReport solution_quality(const InterpProblem& p,
                               const std::vector<VPoint>& assignment,
                               const Rect& region, const GridSpec& grid = {});

}  // namespace holocurve
