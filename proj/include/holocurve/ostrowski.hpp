#pragma once

#include <array>
#include <string>
#include <vector>

#include "holocurve/curve.hpp"
#include "holocurve/eval.hpp"
#include "holocurve/types.hpp"

namespace holocurve {

/// Zero/pole data of a meromorphic function on C* in normal form
///   f(z) = a z^m prod_zeros E(z, a_k) / prod_poles E(z, b_k),
/// where E(z, v) = 1 - z/v when |v| >= 1 and 1 - v/z when |v| < 1 (bounded
/// factors on both ends of the modulus range).
struct OstrowskiData {
    cplx a = 1.0;
    int m = 0;
    std::vector<cplx> zeros;
    std::vector<cplx> poles;
};

void validate_data(const OstrowskiData& d);

/// Value in log form; logabs is +inf exactly at a listed pole, -inf at a
/// listed zero.
LogComplex eval_repr_log(const OstrowskiData& d, cplx z);

/// Complex value; raises PoleError (with multiplicity) exactly at a pole.
/// Values beyond double range come back as infinities; use eval_repr_log
/// when the magnitude matters.
cplx eval_repr(const OstrowskiData& d, cplx z);

/// Modulus annulus on which dropped continuation factors would perturb the
/// value by a relative error < 1e-6 (each omitted factor contributes about
/// |z|/|a_k| or |a_k|/|z|). lo may be 0 and hi infinity when the data is
/// complete on that side.
struct ReliableRange {
    double lo = 0.0;
    double hi = 0.0;
};

ReliableRange repr_reliable_range(const OstrowskiData& d);

/// Circle means of log|f| as a piecewise-linear function of t = log r:
/// knots at the breakpoint moduli inside [t0, t1] plus both endpoints.
struct PhiProfile {
    std::vector<double> ts;      // increasing, size k
    std::vector<double> values;  // phi at ts, size k
    std::vector<int> slopes;     // per segment, size k-1
};

PhiProfile build_phi(const OstrowskiData& d, double t0, double t1);

double phi_eval(const PhiProfile& p, double t);

/// Direct quadrature of the circle mean of log|f| at radius e^t.
double phi_circle_mean(const OstrowskiData& d, double t, double tol = 1e-8);

/// Minimal strip height H >= 0 such that every convex corner (slope
/// increase) sits at height <= H and every concave corner at height >= -H.
/// The profile is admissible when H = 0 or when some corner lies strictly
/// outside the strip (otherwise the strip swallows the whole profile and
/// certifies nothing).
struct Admissibility {
    bool admissible = false;
    double H = 0.0;
};

Admissibility phi_admissible(const PhiProfile& p);

struct ConditionThresholds {
    int c1_max = 50;
    int c2_max = 20;
    double c3_log_max = 500.0;
    double c4_min = 1e-6;
    double c5_max = 16.0;
};

/// Quantitative versions of the zero/pole distribution conditions:
///   c1: max zeros+poles in an open ring {r < |z| < 2r}
///   c2: max |#zeros - #poles| over modulus windows
///   c3: log of the largest normal-form partial product ratio
///   c4: min distance between a zero and a pole
///   c5: max modulus ratio of consecutive same-type points (span-padded)
struct ConditionReport {
    int c1 = 0;
    int c2 = 0;
    double c3_log = 0.0;
    double c4 = 0.0;
    double c5 = 0.0;
    bool pass_c1 = true, pass_c2 = true, pass_c3 = true, pass_c4 = true,
         pass_c5 = true;
    bool all_pass() const {
        return pass_c1 && pass_c2 && pass_c3 && pass_c4 && pass_c5;
    }
};

ConditionReport check_conditions(const OstrowskiData& d,
                                 const ConditionThresholds& thr = {});

/// Smallest c5 > 1 such that every annulus {r < |z| < c5 r} inside the data
/// span contains at least one zero and one pole. holds is false (C5
/// infinite) when either list is empty.
struct CondV {
    bool holds = false;
    double C5 = 0.0;
};

CondV binormal_condition_v(const OstrowskiData& d);

struct MontelReport {
    int max_count = 0;
    cplx worst_center{};
    std::array<int, 3> per_target_hits{0, 0, 0};
};

/// Tiles the annulus r0 <= |z| <= r1 with intrinsic discs of diameter delta
/// (Euclidean diameter ~ delta |z|) and counts how many of the three target
/// proximity sets {z : sin-dist(f(z), a_j) < proximity_tol} meet one disc.
MontelReport montel_three_point_test(const Curve& c,
                                     const std::array<HomogeneousPoint, 3>& targets,
                                     double delta, double r0, double r1,
                                     double proximity_tol = 1e-3);

struct LehtoRow {
    double t = 0.0;
    double sup = 0.0;
    cplx argmax{};
};

/// For each t builds the lehto_product curve and measures sup |z| f# over
/// one multiplicative period [1, t]. Warns when the truncation at k_range
/// perturbs values on the annulus by more than 1e-6.
std::vector<LehtoRow> lehto_experiment(const std::vector<double>& ts,
                                       int k_range, const GridSpec& grid = {},
                                       Diagnostics* diag = nullptr);

/// Curve (1 : f(z)) on C*.
Curve repr_curve(const OstrowskiData& d);

/// Plane curve (1 : f(exp z)).
Curve repr_exp_curve(const OstrowskiData& d);

}  // namespace holocurve
