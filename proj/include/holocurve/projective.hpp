#pragma once

#include <vector>

#include "holocurve/types.hpp"

namespace holocurve {

/// Point of complex projective n-space given by n+1 homogeneous coordinates,
/// not all zero. No normalization is imposed; operations are scale invariant.
struct HomogeneousPoint {
    ComplexVec coords;
    int dim() const { return static_cast<int>(coords.size()) - 1; }
};

/// Affine chart point: n coordinates zeta with ||zeta|| < 2.
struct ChartPoint {
    ComplexVec zeta;
};

/// Point of the disjoint union of n+1 chart copies: coordinates plus a sheet
/// index in {0, ..., n}.
struct VPoint {
    ComplexVec zeta;
    int sheet = 0;
};

double euclid_norm(const ComplexVec& v);
double sup_norm(const ComplexVec& v);

void validate_point(const HomogeneousPoint& p);

/// Fubini-Study distance, values in [0, pi/2]. Exactly symmetric; accurate
/// for nearby points (computed from both the inner product and the wedge).
double fs_distance(const HomogeneousPoint& a, const HomogeneousPoint& b);

/// sin of the Fubini-Study distance: ||u ^ v|| / (||u|| ||v||).
double fs_sin_distance(const HomogeneousPoint& a, const HomogeneousPoint& b);

/// psi(zeta) = (1 : zeta_1 : ... : zeta_n).
HomogeneousPoint chart_psi(const ChartPoint& c);

/// Inverse of psi on its image; requires coords[0] != 0 and resulting
/// ||zeta|| < 2, else a chart-domain validation error.
ChartPoint chart_psi_inv(const HomogeneousPoint& p);

/// Swap homogeneous coordinates 0 and j (j in [0, n]; j = 0 is the identity).
HomogeneousPoint coord_swap(const HomogeneousPoint& p, int j);

/// Psi(zeta, j) = coord_swap(psi(zeta), j): the sheet-j chart into P^n.
HomogeneousPoint big_psi(const VPoint& v);

/// Global right inverse of Psi: sheet = index of a maximal-modulus
/// coordinate (smallest such index on ties); result has sup-norm <= 1.
VPoint big_psi_inv(const HomogeneousPoint& p);

/// Branch of Psi^{-1} staying on the anchor's sheet. Errors if the swapped
/// first coordinate vanishes or the result leaves ||zeta|| < 2.
VPoint big_psi_local_inv(const HomogeneousPoint& p, const VPoint& anchor);

/// Chart-shift P(w, zeta) = psi(psi^{-1}(w) + zeta), extended across the
/// hyperplane w_0 = 0: when |w_0|/||w|| < 1e-9 the point is returned
/// unchanged, with a warning in the surrounding ambiguity band.
HomogeneousPoint p_add(const HomogeneousPoint& w, const ComplexVec& zeta,
                       Diagnostics* diag = nullptr);

/// Dense unitary matrix on C^{n+1}, stored row major.
struct UnitaryMap {
    std::vector<ComplexVec> rows;
    int dim() const { return static_cast<int>(rows.size()) - 1; }
};

/// Max deviation of U* U from the identity.
double unitarity_defect(const UnitaryMap& u);

/// Multiplies; validates unitarity to 1e-12 first.
HomogeneousPoint apply_unitary(const UnitaryMap& u, const HomogeneousPoint& p);

/// Conjugate transpose.
UnitaryMap unitary_adjoint(const UnitaryMap& u);

/// Real symmetric Householder reflection taking (1,...,1)/sqrt(n+1) to e_0.
UnitaryMap householder_q(int n);

}  // namespace holocurve
