#include "holocurve/projective.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace holocurve {

double euclid_norm(const ComplexVec& v) {
    // rescale by the largest modulus so huge/tiny entries do not overflow
    double s = sup_norm(v);
    if (s == 0.0 || !std::isfinite(s)) return s;
    double q = 0.0;
    for (const cplx& c : v) {
        double re = c.real() / s, im = c.imag() / s;
        q += re * re + im * im;
    }
    return s * std::sqrt(q);
}

double sup_norm(const ComplexVec& v) {
    double s = 0.0;
    for (const cplx& c : v) s = std::max(s, std::abs(c));
    return s;
}

void validate_point(const HomogeneousPoint& p) {
    if (p.coords.size() < 2)
        throw ValidationError("invalid-point",
                              "homogeneous point needs at least 2 coordinates");
    // check coordinates one by one: max() would mask a NaN entry
    double s = 0.0;
    for (const cplx& c : p.coords) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw ValidationError("invalid-point",
                                  "non-finite homogeneous coordinate");
        s = std::max(s, std::abs(c));
    }
    if (s == 0.0)
        throw ValidationError("invalid-point",
                              "all homogeneous coordinates are zero");
}

namespace {

// |<u,v>| and ||u ^ v|| with both vectors prescaled by their sup norms.
void normalized_products(const ComplexVec& a, const ComplexVec& b,
                         double& cosv, double& sinv) {
    double sa = sup_norm(a), sb = sup_norm(b);
    std::size_t n1 = a.size();
    ComplexVec u(n1), v(n1);
    for (std::size_t i = 0; i < n1; ++i) {
        u[i] = a[i] / sa;
        v[i] = b[i] / sb;
    }
    double nu = 0.0, nv = 0.0;
    for (std::size_t i = 0; i < n1; ++i) {
        nu += std::norm(u[i]);
        nv += std::norm(v[i]);
    }
    cplx inner = 0.0;
    for (std::size_t i = 0; i < n1; ++i) inner += u[i] * std::conj(v[i]);
    double wedge2 = 0.0;
    for (std::size_t i = 0; i + 1 < n1; ++i)
        for (std::size_t j = i + 1; j < n1; ++j)
            wedge2 += std::norm(u[i] * v[j] - u[j] * v[i]);
    double den = std::sqrt(nu * nv);
    cosv = std::abs(inner) / den;
    sinv = std::sqrt(wedge2) / den;
}

}  // namespace

double fs_distance(const HomogeneousPoint& a, const HomogeneousPoint& b) {
    validate_point(a);
    validate_point(b);
    if (a.dim() != b.dim())
        throw ValidationError("invalid-point", "dimension mismatch");
    double c, s;
    normalized_products(a.coords, b.coords, c, s);
    // atan2 keeps full accuracy at both ends of [0, pi/2]
    return std::atan2(std::min(s, 1.0), std::clamp(c, 0.0, 1.0));
}

double fs_sin_distance(const HomogeneousPoint& a, const HomogeneousPoint& b) {
    validate_point(a);
    validate_point(b);
    if (a.dim() != b.dim())
        throw ValidationError("invalid-point", "dimension mismatch");
    double c, s;
    normalized_products(a.coords, b.coords, c, s);
    return std::min(s, 1.0);
}

HomogeneousPoint chart_psi(const ChartPoint& c) {
    if (c.zeta.empty())
        throw ValidationError("invalid-point", "chart point needs n >= 1");
    if (!(euclid_norm(c.zeta) < 2.0))
        throw ValidationError("chart-domain", "chart point has norm >= 2");
    HomogeneousPoint p;
    p.coords.reserve(c.zeta.size() + 1);
    p.coords.push_back(1.0);
    p.coords.insert(p.coords.end(), c.zeta.begin(), c.zeta.end());
    return p;
}

ChartPoint chart_psi_inv(const HomogeneousPoint& p) {
    validate_point(p);
    if (p.coords[0] == 0.0)
        throw ValidationError("chart-domain",
                              "point lies on the hyperplane at infinity");
    ChartPoint c;
    c.zeta.reserve(p.coords.size() - 1);
    for (std::size_t i = 1; i < p.coords.size(); ++i)
        c.zeta.push_back(p.coords[i] / p.coords[0]);
    if (!(euclid_norm(c.zeta) < 2.0))
        throw ValidationError("chart-domain",
                              "point is outside the chart ball of radius 2");
    return c;
}

HomogeneousPoint coord_swap(const HomogeneousPoint& p, int j) {
    validate_point(p);
    if (j < 0 || j > p.dim())
        throw ValidationError("invalid-point", "swap index out of range");
    HomogeneousPoint q = p;
    std::swap(q.coords[0], q.coords[static_cast<std::size_t>(j)]);
    return q;
}

HomogeneousPoint big_psi(const VPoint& v) {
    if (v.sheet < 0 || v.sheet > static_cast<int>(v.zeta.size()))
        throw ValidationError("invalid-point", "sheet index out of range");
    return coord_swap(chart_psi(ChartPoint{v.zeta}), v.sheet);
}

VPoint big_psi_inv(const HomogeneousPoint& p) {
    validate_point(p);
    std::size_t best = 0;
    double bestv = std::abs(p.coords[0]);
    for (std::size_t i = 1; i < p.coords.size(); ++i) {
        double m = std::abs(p.coords[i]);
        if (m > bestv) {
            bestv = m;
            best = i;
        }
    }
    HomogeneousPoint q = coord_swap(p, static_cast<int>(best));
    VPoint v;
    v.sheet = static_cast<int>(best);
    v.zeta.reserve(q.coords.size() - 1);
    for (std::size_t i = 1; i < q.coords.size(); ++i)
        v.zeta.push_back(q.coords[i] / q.coords[0]);
    return v;
}

VPoint big_psi_local_inv(const HomogeneousPoint& p, const VPoint& anchor) {
    validate_point(p);
    HomogeneousPoint q = coord_swap(p, anchor.sheet);
    if (q.coords[0] == 0.0)
        throw BranchError("local inverse undefined: pivot coordinate is zero");
    VPoint v;
    v.sheet = anchor.sheet;
    v.zeta.reserve(q.coords.size() - 1);
    for (std::size_t i = 1; i < q.coords.size(); ++i)
        v.zeta.push_back(q.coords[i] / q.coords[0]);
    if (!(euclid_norm(v.zeta) < 2.0))
        throw BranchError("local inverse left the chart ball of radius 2");
    return v;
}

HomogeneousPoint p_add(const HomogeneousPoint& w, const ComplexVec& zeta,
                       Diagnostics* diag) {
    validate_point(w);
    if (zeta.size() != w.coords.size() - 1)
        throw ValidationError("invalid-point", "shift dimension mismatch");
    if (!(euclid_norm(zeta) < 1.0 / 11.0))
        throw ValidationError("invalid-point", "shift norm must be < 1/11");
    constexpr double kBranchTol = 1e-9;
    double ratio = std::abs(w.coords[0]) / euclid_norm(w.coords);
    if (ratio > kBranchTol / 2 && ratio < 2 * kBranchTol)
        warn(diag, "chart shift applied near the branch hyperplane; result "
                   "may be discontinuous in w");
    if (ratio < kBranchTol) return w;
    HomogeneousPoint r;
    r.coords.reserve(w.coords.size());
    r.coords.push_back(1.0);
    for (std::size_t i = 1; i < w.coords.size(); ++i)
        r.coords.push_back(w.coords[i] / w.coords[0] + zeta[i - 1]);
    return r;
}

double unitarity_defect(const UnitaryMap& u) {
    std::size_t n1 = u.rows.size();
    for (const ComplexVec& row : u.rows)
        if (row.size() != n1)
            throw ValidationError("invalid-point", "unitary matrix not square");
    double worst = 0.0;
    for (std::size_t i = 0; i < n1; ++i) {
        for (std::size_t j = 0; j < n1; ++j) {
            cplx dot = 0.0;
            for (std::size_t k = 0; k < n1; ++k)
                dot += u.rows[k][i] * std::conj(u.rows[k][j]);
            dot -= (i == j) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(dot));
        }
    }
    return worst;
}

HomogeneousPoint apply_unitary(const UnitaryMap& u, const HomogeneousPoint& p) {
    validate_point(p);
    if (u.dim() != p.dim())
        throw ValidationError("invalid-point", "unitary dimension mismatch");
    if (unitarity_defect(u) > 1e-12)
        throw ValidationError("non-unitary", "matrix fails U*U = I to 1e-12");
    HomogeneousPoint q;
    q.coords.assign(p.coords.size(), 0.0);
    for (std::size_t i = 0; i < u.rows.size(); ++i)
        for (std::size_t j = 0; j < u.rows.size(); ++j)
            q.coords[i] += u.rows[i][j] * p.coords[j];
    return q;
}

UnitaryMap unitary_adjoint(const UnitaryMap& u) {
    std::size_t n1 = u.rows.size();
    UnitaryMap a;
    a.rows.assign(n1, ComplexVec(n1));
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n1; ++j)
            a.rows[i][j] = std::conj(u.rows[j][i]);
    return a;
}

UnitaryMap householder_q(int n) {
    if (n < 1) throw ValidationError("invalid-point", "dimension must be >= 1");
    std::size_t n1 = static_cast<std::size_t>(n) + 1;
    double inv = 1.0 / std::sqrt(static_cast<double>(n1));
    std::vector<double> u(n1, inv);
    u[0] -= 1.0;  // u = v - e0 with v the normalized all-ones vector
    double uu = 0.0;
    for (double x : u) uu += x * x;
    UnitaryMap q;
    q.rows.assign(n1, ComplexVec(n1, 0.0));
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n1; ++j)
            q.rows[i][j] = ((i == j) ? 1.0 : 0.0) - 2.0 * u[i] * u[j] / uu;
    return q;
}

}  // namespace holocurve
