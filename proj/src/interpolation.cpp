#include "holocurve/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>

namespace holocurve {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDelta = 1.0 / 11.0;

// lexicographic (Re, Im) used for every nearest-point tie
bool lex_less(cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

std::size_t nearest_index(const std::vector<cplx>& pts, cplx z) {
    std::size_t best = 0;
    double bd = std::abs(z - pts[0]);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        double d = std::abs(z - pts[i]);
        if (d < bd || (d == bd && lex_less(pts[i], pts[best]))) {
            bd = d;
            best = i;
        }
    }
    return best;
}

ComplexVec mat_apply(const UnitaryMap& u, const ComplexVec& v) {
    ComplexVec out(u.rows.size(), 0.0);
    for (std::size_t i = 0; i < u.rows.size(); ++i) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < v.size(); ++j) s += u.rows[i][j] * v[j];
        out[i] = s;
    }
    return out;
}

ComplexVec vec_sub(const ComplexVec& a, const ComplexVec& b) {
    ComplexVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

}  // namespace

SparseSet validate_sparse(const std::vector<cplx>& points) {
    if (points.empty())
        throw ValidationError("empty-set", "need at least one point");
    SparseSet s;
    s.points = points;
    if (points.size() == 1) {
        s.K = kInf;
        return s;
    }
    std::vector<cplx> sorted = points;
    std::sort(sorted.begin(), sorted.end(), lex_less);
    double d1 = kInf;
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
        d1 = std::min(d1, std::abs(sorted[i + 1] - sorted[i]));
    if (d1 == 0.0)
        throw ValidationError("duplicate-points", "set contains a repeated point");

    // the closest pair is at distance <= d1, so its two members land in
    // adjacent cells of a d1-sized bucket grid
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> grid;
    auto key = [&](std::int64_t ix, std::int64_t iy) {
        return (static_cast<std::uint64_t>(ix) << 32) ^
               static_cast<std::uint64_t>(static_cast<std::uint32_t>(iy));
    };
    auto cell = [&](cplx p) {
        return std::pair<std::int64_t, std::int64_t>(
            static_cast<std::int64_t>(std::floor(p.real() / d1)),
            static_cast<std::int64_t>(std::floor(p.imag() / d1)));
    };
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        auto [ix, iy] = cell(sorted[i]);
        grid[key(ix, iy)].push_back(i);
    }
    double best = d1;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        auto [ix, iy] = cell(sorted[i]);
        for (std::int64_t dx = -1; dx <= 1; ++dx)
            for (std::int64_t dy = -1; dy <= 1; ++dy) {
                auto it = grid.find(key(ix + dx, iy + dy));
                if (it == grid.end()) continue;
                for (std::size_t j : it->second) {
                    if (j <= i) continue;
                    best = std::min(best, std::abs(sorted[i] - sorted[j]));
                }
            }
    }
    if (best == 0.0)
        throw ValidationError("duplicate-points", "set contains a repeated point");
    s.K = best;
    return s;
}

HomogeneousPoint two_point_g(cplx z, const VPoint& a, int n) {
    if (n < 1) throw ValidationError("invalid-dimension", "need n >= 1");
    if (static_cast<int>(a.zeta.size()) != n)
        throw ValidationError("invalid-point", "chart coordinate count != n");
    if (a.sheet < 0 || a.sheet > n)
        throw ValidationError("invalid-point", "sheet index out of range");
    if (!(euclid_norm(a.zeta) < 2.0))
        throw ValidationError("invalid-point", "chart point outside B(2)");
    cplx z2 = z * z;
    cplx z4 = z2 * z2;
    HomogeneousPoint g;
    g.coords.resize(static_cast<std::size_t>(n) + 1);
    g.coords[0] = z4 + 1.0;
    g.coords[1] = z4 + 4.0 * z + a.zeta[0];
    for (int j = 2; j <= n; ++j)
        g.coords[static_cast<std::size_t>(j)] = z4 + a.zeta[static_cast<std::size_t>(j - 1)];
    return coord_swap(g, a.sheet);
}

GPropertyReport g_properties_check(
    int n, const std::vector<cplx>& zs,
    const std::vector<std::pair<VPoint, VPoint>>& pairs) {
    UnitaryMap u = householder_q(n);
    HomogeneousPoint ones;
    ones.coords.assign(static_cast<std::size_t>(n) + 1, 1.0);
    GPropertyReport rep;
    auto ratio = [](double value, double bound) {
        if (bound > 0.0) return value / bound;
        return value > 0.0 ? kInf : 0.0;
    };
    auto chart_of = [&](cplx z, const VPoint& a) {
        HomogeneousPoint g = two_point_g(z, a, n);
        return chart_psi_inv(HomogeneousPoint{mat_apply(u, g.coords)}).zeta;
    };
    for (cplx z : zs) {
        if (std::abs(z) < 3.0)
            throw ValidationError("invalid-point", "samples need |z| >= 3");
        double iz3 = 1.0 / std::pow(std::abs(z), 3);
        double iz4 = iz3 / std::abs(z);
        for (const auto& [a1, a2] : pairs) {
            if (a1.sheet != a2.sheet)
                throw ValidationError("invalid-point",
                                      "pair members must share a sheet");
            HomogeneousPoint g1 = two_point_g(z, a1, n);
            HomogeneousPoint g2 = two_point_g(z, a2, n);
            double da = euclid_norm(vec_sub(a1.zeta, a2.zeta));
            double rc = std::max(ratio(fs_distance(g1, ones), 6.25 * iz3),
                                 ratio(fs_distance(g2, ones), 6.25 * iz3));
            double rd = ratio(fs_distance(g1, g2), 1.25 * da * iz4);
            ComplexVec c1 = chart_of(z, a1);
            ComplexVec c2 = chart_of(z, a2);
            double rch = std::max(ratio(euclid_norm(c1), 7.0 * iz3),
                                  ratio(euclid_norm(c2), 7.0 * iz3));
            double rlip = ratio(euclid_norm(vec_sub(c1, c2)), 2.0 * da * iz4);
            rep.worst_c = std::max(rep.worst_c, rc);
            rep.worst_d = std::max(rep.worst_d, rd);
            rep.worst_chart = std::max(rep.worst_chart, rch);
            rep.worst_lip = std::max(rep.worst_lip, rlip);
            if (rc > 1.0 || rd > 1.0 || rch > 1.0 || rlip > 1.0)
                ++rep.violations;
            ++rep.samples;
        }
    }
    return rep;
}

LatticeSums lattice_bounds_check(const SparseSet& e, cplx z) {
    if (e.points.empty())
        throw ValidationError("empty-set", "need at least one point");
    LatticeSums out;
    std::size_t s = nearest_index(e.points, z);
    out.s = e.points[s];
    for (std::size_t i = 0; i < e.points.size(); ++i) {
        if (i == s) continue;
        double d = std::abs(z - e.points[i]);
        double d3 = d * d * d;
        out.sum3 += 1.0 / d3;
        out.sum4 += 1.0 / (d3 * d);
    }
    out.bound3 = 200.0 / (e.K * e.K * e.K);
    out.bound4 = 800.0 / (e.K * e.K * e.K * e.K);
    return out;
}

LatticeSums lattice_lemma_sums(double K, cplx z, int cells) {
    if (!(K > 0.0)) throw ValidationError("invalid-point", "need K > 0");
    if (cells < 4) throw ValidationError("invalid-point", "need cells >= 4");
    double half = K / std::sqrt(2.0);
    double big_r = cells * K;
    if (!(big_r > std::abs(z) + 2.0 * half + K))
        throw ValidationError("invalid-point",
                              "truncation radius too small for this z");
    // nearest lattice point, lex tie-break over the four adjacent candidates
    double fx = std::floor(z.real() / K), fy = std::floor(z.imag() / K);
    cplx s{0.0, 0.0};
    double sd = kInf;
    for (int dx = 0; dx <= 1; ++dx)
        for (int dy = 0; dy <= 1; ++dy) {
            cplx m{K * (fx + dx), K * (fy + dy)};
            double d = std::abs(z - m);
            if (d < sd || (d == sd && lex_less(m, s))) {
                sd = d;
                s = m;
            }
        }
    LatticeSums out;
    out.s = s;
    std::int64_t c2 = static_cast<std::int64_t>(cells) * cells;
    for (std::int64_t i = -cells; i <= cells; ++i) {
        double mx = K * static_cast<double>(i);
        double ex = z.real() - mx;
        std::int64_t i2 = i * i;
        for (std::int64_t j = -cells; j <= cells; ++j) {
            if (i2 + j * j > c2) continue;
            double my = K * static_cast<double>(j);
            if (mx == s.real() && my == s.imag()) continue;
            double ey = z.imag() - my;
            double d2 = ex * ex + ey * ey;
            double d4 = d2 * d2;
            out.sum3 += 1.0 / (d2 * std::sqrt(d2));
            out.sum4 += 1.0 / d4;
        }
    }
    // everything at |m| > cells*K, bounded through the disjoint-cell packing:
    // |z - m| >= |w| - |z| - sqrt(2) K/2 for w in the cell of m
    double a0 = big_r - std::abs(z) - 2.0 * half;
    double zc = std::abs(z) + half;
    double pref = 2.0 * 3.14159265358979323846 / (K * K);
    out.sum3 += pref * (1.0 / a0 + zc / (2.0 * a0 * a0));
    out.sum4 += pref * (1.0 / (2.0 * a0 * a0) + zc / (3.0 * a0 * a0 * a0));
    out.bound3 = 200.0 / (K * K * K);
    out.bound4 = 800.0 / (K * K * K * K);
    return out;
}

void validate_problem(const InterpProblem& p) {
    if (p.E.points.empty())
        throw ValidationError("empty-set", "no interpolation points");
    if (p.targets.size() != p.E.points.size())
        throw ValidationError("invalid-data", "one target per point required");
    if (p.n < 1) throw ValidationError("invalid-dimension", "need n >= 1");
    for (const HomogeneousPoint& t : p.targets) {
        validate_point(t);
        if (t.dim() != p.n)
            throw ValidationError("invalid-point", "target dimension mismatch");
    }
    if (!(p.E.K > 0.0))
        throw ValidationError("invalid-data", "sparse set lacks its gap K");
}

HomogeneousPoint assemble_f(cplx z, const SparseSet& e,
                            const std::vector<VPoint>& a, const UnitaryMap& u,
                            double* phi_norm, Diagnostics* diag) {
    if (a.size() != e.points.size())
        throw ValidationError("invalid-data", "one chart point per set point");
    int n = u.dim();
    std::size_t s = nearest_index(e.points, z);
    ComplexVec phi(static_cast<std::size_t>(n), 0.0);
    for (std::size_t m = 0; m < e.points.size(); ++m) {
        if (m == s) continue;
        HomogeneousPoint g = two_point_g(e.points[m] - z, a[m], n);
        ChartPoint c = chart_psi_inv(HomogeneousPoint{mat_apply(u, g.coords)});
        for (int j = 0; j < n; ++j)
            phi[static_cast<std::size_t>(j)] += c.zeta[static_cast<std::size_t>(j)];
    }
    double np = euclid_norm(phi);
    if (phi_norm) *phi_norm = np;
    if (np >= kDelta)
        throw ValidationError("sparse-precondition",
                              "tail sum reached 1/11; the set is too dense");
    HomogeneousPoint lead = two_point_g(e.points[s] - z, a[s], n);
    return p_add(HomogeneousPoint{mat_apply(u, lead.coords)}, phi, diag);
}

InterpState solve_interpolation(const InterpProblem& p, double tol, int k_max,
                                Diagnostics* diag) {
    validate_problem(p);
    if (!(p.E.K > 25.0))
        throw ValidationError("sparse-precondition",
                              "solving requires a gap K > 25");
    if (!(tol > 0.0) || k_max < 1)
        throw ValidationError("invalid-data", "bad tolerance or iteration cap");
    const std::size_t count = p.E.points.size();
    UnitaryMap u = householder_q(p.n);

    std::vector<VPoint> base(count);
    for (std::size_t m = 0; m < count; ++m)
        base[m] = big_psi_inv(HomogeneousPoint{mat_apply(u, p.targets[m].coords)});

    InterpState st;
    st.assignment = base;
    double max_phi = 0.0;
    auto phi_at = [&](std::size_t m, const std::vector<VPoint>& a) {
        ComplexVec phi(static_cast<std::size_t>(p.n), 0.0);
        for (std::size_t k = 0; k < count; ++k) {
            if (k == m) continue;
            HomogeneousPoint g =
                two_point_g(p.E.points[k] - p.E.points[m], a[k], p.n);
            ChartPoint c =
                chart_psi_inv(HomogeneousPoint{mat_apply(u, g.coords)});
            for (int j = 0; j < p.n; ++j)
                phi[static_cast<std::size_t>(j)] +=
                    c.zeta[static_cast<std::size_t>(j)];
        }
        double np = euclid_norm(phi);
        max_phi = std::max(max_phi, np);
        if (np >= kDelta)
            throw ValidationError("sparse-precondition",
                                  "tail sum reached 1/11; the set is too dense");
        return phi;
    };

    int bad_ratio_run = 0;
    const double ratio_cap = 5.0 / 11.0 + 0.05;
    const double noise_floor = std::max(10.0 * tol, 1e-11);
    for (int k = 1; k <= k_max; ++k) {
        std::vector<VPoint> next(count);
        for (std::size_t m = 0; m < count; ++m) {
            ComplexVec phi = phi_at(m, st.assignment);
            for (cplx& v : phi) v = -v;
            HomogeneousPoint w = p_add(p.targets[m], phi, diag);
            try {
                next[m] = big_psi_local_inv(
                    HomogeneousPoint{mat_apply(u, w.coords)}, base[m]);
            } catch (const BranchError& e) {
                throw BranchError("update left the chart at point index " +
                                  std::to_string(m) + ": " + e.what());
            }
        }
        double step = 0.0;
        for (std::size_t m = 0; m < count; ++m)
            step = std::max(step,
                            euclid_norm(vec_sub(next[m].zeta,
                                                st.assignment[m].zeta)));
        st.assignment = std::move(next);
        st.iterations = k;
        if (!st.step_norms.empty() && step > noise_floor) {
            double prev = st.step_norms.back();
            if (prev > noise_floor && step > ratio_cap * prev) {
                if (++bad_ratio_run >= 3)
                    throw NumericError(
                        "contraction",
                        "step ratios exceeded 5/11 + 0.05 three times in a row");
            } else {
                bad_ratio_run = 0;
            }
        }
        st.step_norms.push_back(step);
        for (std::size_t m = 0; m < count; ++m)
            st.max_displacement =
                std::max(st.max_displacement,
                         euclid_norm(vec_sub(st.assignment[m].zeta,
                                             base[m].zeta)));
        if (step < tol) {
            st.converged = true;
            break;
        }
    }
    if (!st.converged)
        warn(diag, "iteration cap reached before the step norm fell under tol");

    st.residuals.resize(count);
    for (std::size_t m = 0; m < count; ++m) {
        double np = 0.0;
        HomogeneousPoint fm =
            assemble_f(p.E.points[m], p.E, st.assignment, u, &np, diag);
        max_phi = std::max(max_phi, np);
        st.residuals[m] = fs_distance(fm, p.targets[m]);
        st.max_residual = std::max(st.max_residual, st.residuals[m]);
    }
    st.max_phi_norm = max_phi;
    return st;
}

QualityReport solution_quality(const InterpProblem& p,
                               const std::vector<VPoint>& assignment,
                               const Rect& region, const GridSpec& grid) {
    validate_problem(p);
    if (grid.nx < 2 || grid.ny < 2)
        throw ValidationError("invalid-grid", "need at least a 2x2 grid");
    UnitaryMap u = householder_q(p.n);
    QualityReport rep;
    for (std::size_t m = 0; m < p.E.points.size(); ++m) {
        HomogeneousPoint fm =
            assemble_f(p.E.points[m], p.E, assignment, u, nullptr, nullptr);
        rep.max_residual =
            std::max(rep.max_residual, fs_distance(fm, p.targets[m]));
    }
    for (int i = 0; i < grid.nx; ++i) {
        double x = region.x0 + (region.x1 - region.x0) * i / (grid.nx - 1);
        for (int j = 0; j < grid.ny; ++j) {
            double y = region.y0 + (region.y1 - region.y0) * j / (grid.ny - 1);
            cplx z{x, y};
            double h = 1e-5 * std::max(1.0, std::abs(z));
            HomogeneousPoint fp =
                assemble_f(z + h, p.E, assignment, u, nullptr, nullptr);
            HomogeneousPoint fm =
                assemble_f(z - h, p.E, assignment, u, nullptr, nullptr);
            double sd = fs_distance(fp, fm) / (2.0 * h);
            if (sd > rep.sup_sphderiv) {
                rep.sup_sphderiv = sd;
                rep.argmax = z;
            }
        }
    }
    rep.empirical_C = p.E.K * rep.sup_sphderiv;
    return rep;
}

}  // namespace holocurve
