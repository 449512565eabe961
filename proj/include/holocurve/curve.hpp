#pragma once

#include <string>
#include <variant>
#include <vector>

#include "holocurve/eval.hpp"
#include "holocurve/expr.hpp"
#include "holocurve/projective.hpp"
#include "holocurve/types.hpp"

namespace holocurve {

enum class Domain { plane, punctured };

/// Holomorphic curve into P^n given by n+1 coordinate expressions. The
/// coordinates may share zeros or have poles; evaluation renormalizes by the
/// minimal local vanishing order so the reduced map is returned.
struct Curve {
    std::vector<ExprPtr> coords;
    Domain domain = Domain::plane;
    int dim() const { return static_cast<int>(coords.size()) - 1; }
    mutable double scale_cache = -1.0;  // lazy degeneracy reference scale
};

void validate_curve(const Curve& c);

/// Reduced value and coordinate-wise derivative at z (both vectors of length
/// n+1, common scale arbitrary). Raises DegenerateError when every
/// coordinate vanishes deeper than the local minimum allows resolving, or
/// when the values fall below 1e-12 times the curve's reference scale.
struct CurveJet {
    ComplexVec values;
    ComplexVec derivs;
};

CurveJet eval_curve(const Curve& c, cplx z);

/// Reference scale: the largest coordinate modulus over 32 offset samples of
/// the unit circle (cached on the curve).
double curve_scale(const Curve& c);

/// log of the Euclidean norm of the homogeneous vector at z, computed in
/// log space so growth like exp(10^4) is representable. May be +-infinity.
double log_curve_norm(const Curve& c, cplx z);

/// Fubini-Study spherical derivative at z.
double spherical_derivative(const Curve& c, cplx z);

struct Rect {
    double x0, x1, y0, y1;
};

struct Annulus {
    double r0, r1;  // r0 may be 0 for a disc
};

using Region = std::variant<Rect, Annulus>;

struct GridSpec {
    int nx = 256;          // radial or x resolution
    int ny = 512;          // angular or y resolution
    int refine_rounds = 2;
    int refine_factor = 10;
};

struct SupResult {
    double sup = 0.0;
    cplx argmax{};
};

/// sup of the spherical derivative (plane domain) or of |z| times it
/// (punctured domain) over the region, by scan plus local grid refinement.
SupResult sup_sphderiv_grid(const Curve& c, const Region& region,
                            const GridSpec& grid = {});

/// Weighted derivative at one point: f# on the plane, |z| f# on C*.
double intrinsic_sphderiv(const Curve& c, cplx z);

/// Projective hypersurface (here: hyperplane) sum_j coeffs_j w_j = 0.
struct Hypersurface {
    ComplexVec coeffs;
};

/// Hyperplane through a given point of P^1.
Hypersurface hyperplane_through(const HomogeneousPoint& target);

/// sin of the Fubini-Study distance from the curve value at z to the
/// hyperplane.
double hyperplane_sin_distance(const Curve& c, cplx z, const Hypersurface& h);

struct RatioReport {
    bool ok = true;
    double max_value = 0.0;       // largest weighted derivative seen
    double bound = 0.0;           // K
    std::vector<cplx> violations;
};

/// Checks the normality bound sup f# <= K (plane) or sup |z| f# <= K
/// (punctured) on the given samples.
RatioReport ratios_bound_check(const Curve& c, double bound,
                               const std::vector<cplx>& samples);

struct DiscReport {
    int max_count = 0;
    cplx worst_center{};
    int discs_checked = 0;
};

/// Tiles the rectangle with discs of diameter delta and reports the largest
/// number of distinct hypersurfaces approached (sin distance < proximity_tol)
/// within a single disc. Every n+1 of the hypersurfaces must be linearly
/// independent.
DiscReport disc_intersection_test(const Curve& c,
                                  const std::vector<Hypersurface>& hs,
                                  double delta, const Rect& region,
                                  double proximity_tol = 1e-3);

/// Named example curves:
///   cos_curve(alpha):            (cos z : cos alpha z : z) in P^2
///   fryntov(rho, k_max):         (1 : prod_k (1 - z 2^-k)^{n_k}),
///                                n_k = floor(2^{rho k}), k = 1..k_max
///   lehto_product(t, k_range):   (1 : prod_{|k|<=K} (z + t^k)/(z - t^k))
///                                on C*, written with bounded factors
Curve builtin_curve(const std::string& name, const std::vector<double>& params);

/// Curve z -> f(alpha z + beta) with the same target space.
Curve affine_reparam(const Curve& c, cplx alpha, cplx beta);

struct PointCheck {
    bool ok = true;
    double worst = 0.0;   // largest ratio of quantity to its bound
    cplx worst_at{};
    int violations = 0;
};

struct ChpmReport {
    PointCheck sph;        // f# <= 1
    PointCheck low;        // |f| <= 1  =>  |f'| <= 2
    PointCheck high;       // |f| > 1   =>  |f'/f| <= 2
    PointCheck growth;     // |f| <= exp max(2|z|, 1)
    PointCheck deriv;      // |f'| <= 2 max(|f|, 1)
    bool all_ok() const {
        return sph.ok && low.ok && high.ok && growth.ok && deriv.ok;
    }
};

/// Pointwise consequences of the normality bound f# <= 1 for a plane curve
/// (1 : f) normalized so that |f(0)| <= 1, checked on a grid over the
/// rectangle (points with |z| > max_abs skipped when max_abs > 0).
ChpmReport chpm_checks(const Curve& c, const Rect& region, int nx, int ny,
                       double max_abs = 0.0, double slack = 1e-9);

}  // namespace holocurve
