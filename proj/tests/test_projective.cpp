#include "doctest.h"

#include <cmath>
#include <random>

#include "holocurve/projective.hpp"
#include "holocurve/types.hpp"

using namespace holocurve;

namespace {

HomogeneousPoint hp(std::initializer_list<cplx> cs) {
    return HomogeneousPoint{ComplexVec(cs)};
}

std::mt19937_64 rng_for(const char* tag) {
    std::seed_seq seq(tag, tag + std::string(tag).size());
    return std::mt19937_64(seq);
}

cplx rand_cplx(std::mt19937_64& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    return {u(rng), u(rng)};
}

HomogeneousPoint rand_point(std::mt19937_64& rng, int n) {
    ComplexVec v(n + 1);
    for (auto& c : v) c = rand_cplx(rng, 2.0);
    if (euclid_norm(v) < 1e-3) v[0] = 1.0;
    return {v};
}

}  // namespace

TEST_CASE("fs_distance basic values") {
    CHECK(fs_distance(hp({1.0, 0.0}), hp({0.0, 1.0})) ==
          doctest::Approx(std::acos(-1.0) / 2).epsilon(1e-15));
    CHECK(fs_distance(hp({1.0, 1.0}), hp({2.0, 2.0})) == 0.0);
    CHECK(fs_distance(hp({1.0, cplx(0, 1)}), hp({cplx(0, 1), -1.0})) ==
          doctest::Approx(0.0).epsilon(1e-12));
    // scale invariance with a complex factor
    CHECK(fs_distance(hp({1.0, 2.0}), hp({cplx(0, 3), cplx(0, 6)})) <
          1e-12);
}

TEST_CASE("fs_distance is a metric on random samples") {
    auto rng = rng_for("fs-metric");
    for (int n : {1, 2, 5}) {
        for (int i = 0; i < 200; ++i) {
            auto a = rand_point(rng, n);
            auto b = rand_point(rng, n);
            auto c = rand_point(rng, n);
            double ab = fs_distance(a, b);
            double ba = fs_distance(b, a);
            CHECK(ab == ba);  // exactly symmetric
            CHECK(ab >= 0.0);
            CHECK(ab <= std::acos(-1.0) / 2 + 1e-15);
            CHECK(fs_distance(a, c) <= ab + fs_distance(b, c) + 1e-12);
        }
    }
}

TEST_CASE("fs_distance resolves nearby points") {
    // d((1:1),(1:1+h)) = |h|/2 + O(h^2); naive acos would lose all digits
    for (double h : {1e-6, 1e-9, 1e-12}) {
        double d = fs_distance(hp({1.0, 1.0}), hp({1.0, 1.0 + h}));
        CHECK(d == doctest::Approx(h / 2).epsilon(1e-4));
    }
}

TEST_CASE("fs_sin_distance matches sin of fs_distance") {
    auto rng = rng_for("fs-sin");
    for (int i = 0; i < 100; ++i) {
        auto a = rand_point(rng, 2);
        auto b = rand_point(rng, 2);
        CHECK(fs_sin_distance(a, b) ==
              doctest::Approx(std::sin(fs_distance(a, b))).epsilon(1e-12));
    }
}

TEST_CASE("validate_point rejects junk") {
    CHECK_THROWS_AS(validate_point(hp({})), ValidationError);
    CHECK_THROWS_AS(validate_point(hp({0.0, 0.0})), ValidationError);
    CHECK_THROWS_AS(
        validate_point(hp({1.0, cplx(std::nan(""), 0)})), ValidationError);
    CHECK_NOTHROW(validate_point(hp({0.0, 1.0})));
}

TEST_CASE("chart_psi round trip") {
    auto rng = rng_for("chart");
    for (int i = 0; i < 100; ++i) {
        ComplexVec zeta = {rand_cplx(rng, 0.9), rand_cplx(rng, 0.9)};
        auto p = chart_psi(ChartPoint{zeta});
        REQUIRE(p.coords.size() == 3);
        CHECK(p.coords[0] == cplx(1.0));
        auto back = chart_psi_inv(p);
        CHECK(euclid_norm({back.zeta[0] - zeta[0], back.zeta[1] - zeta[1]}) <
              1e-15);
    }
    // scale is divided out
    auto q = chart_psi_inv(hp({2.0, 1.0, cplx(0, 2)}));
    CHECK(std::abs(q.zeta[0] - 0.5) < 1e-15);
    CHECK(std::abs(q.zeta[1] - cplx(0, 1)) < 1e-15);
}

TEST_CASE("chart_psi_inv enforces the chart radius") {
    CHECK_THROWS_AS(chart_psi_inv(hp({1.0, 3.0})), ValidationError);
    CHECK_THROWS_AS(chart_psi_inv(hp({0.0, 1.0})), ValidationError);
    CHECK_NOTHROW(chart_psi_inv(hp({1.0, 1.9})));
}

TEST_CASE("coord_swap is an involution fixing the diagonal") {
    auto p = hp({1.0, 2.0, 3.0});
    for (int j = 0; j < 3; ++j) {
        auto q = coord_swap(coord_swap(p, j), j);
        CHECK(fs_distance(p, q) == 0.0);
    }
    auto ones = hp({1.0, 1.0, 1.0});
    CHECK(fs_distance(coord_swap(ones, 2), ones) == 0.0);
    CHECK(coord_swap(p, 1).coords[0] == cplx(2.0));
    CHECK(coord_swap(p, 1).coords[1] == cplx(1.0));
    CHECK_THROWS_AS(coord_swap(p, 3), ValidationError);
}

TEST_CASE("big_psi and big_psi_inv invert each other") {
    auto rng = rng_for("big-psi");
    for (int n : {1, 2, 4}) {
        for (int i = 0; i < 120; ++i) {
            ComplexVec zeta(n);
            for (auto& c : zeta) c = rand_cplx(rng, 0.6);
            std::uniform_int_distribution<int> sheets(0, n);
            VPoint a{zeta, sheets(rng)};
            auto p = big_psi(a);
            auto b = big_psi_inv(p);
            auto q = big_psi(b);
            CHECK(fs_distance(p, q) < 1e-13);
            CHECK(sup_norm(b.zeta) <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("big_psi_inv picks the bounded sheet") {
    // (1 : 4) is outside sheet 0's closed unit polydisc; sheet 1 sees (1/4)
    auto v = big_psi_inv(hp({1.0, 4.0}));
    CHECK(v.sheet == 1);
    CHECK(std::abs(v.zeta[0] - 0.25) < 1e-15);
    auto w = big_psi_inv(hp({1.0, 0.5}));
    CHECK(w.sheet == 0);
}

TEST_CASE("big_psi_local_inv stays on the anchor sheet") {
    VPoint anchor{{cplx(0.9, 0.0)}, 1};
    auto p = big_psi(anchor);
    auto back = big_psi_local_inv(p, anchor);
    CHECK(back.sheet == 1);
    CHECK(std::abs(back.zeta[0] - anchor.zeta[0]) < 1e-14);

    // global inverse would switch sheets here, local inverse must not
    VPoint near{{cplx(1.2, 0.1)}, 1};
    auto q = big_psi(near);
    auto b2 = big_psi_local_inv(q, anchor);
    CHECK(b2.sheet == 1);
    CHECK(std::abs(b2.zeta[0] - near.zeta[0]) < 1e-13);

    // leaving the chart of the anchor sheet is a branch failure
    CHECK_THROWS_AS(big_psi_local_inv(hp({1.0, 0.0}), anchor), BranchError);
}

TEST_CASE("big_psi_local_inv is 5-Lipschitz near the anchor") {
    auto rng = rng_for("local-lip");
    for (int i = 0; i < 200; ++i) {
        ComplexVec zeta = {rand_cplx(rng, 0.8)};
        VPoint anchor{zeta, i % 2};
        auto p0 = big_psi(anchor);
        ComplexVec z1 = {zeta[0] + rand_cplx(rng, 0.03)};
        ComplexVec z2 = {zeta[0] + rand_cplx(rng, 0.03)};
        auto p1 = big_psi(VPoint{z1, anchor.sheet});
        auto p2 = big_psi(VPoint{z2, anchor.sheet});
        auto b1 = big_psi_local_inv(p1, anchor);
        auto b2 = big_psi_local_inv(p2, anchor);
        double dz = euclid_norm({b1.zeta[0] - b2.zeta[0]});
        CHECK(dz <= 5.0 * fs_distance(p1, p2) + 1e-12);
    }
}

TEST_CASE("p_add perturbs charts and undoes itself") {
    auto rng = rng_for("p-add");
    for (int i = 0; i < 150; ++i) {
        auto w = rand_point(rng, 2);
        ComplexVec zeta = {rand_cplx(rng, 0.04), rand_cplx(rng, 0.04)};
        auto moved = p_add(w, zeta);
        ComplexVec neg = {-zeta[0], -zeta[1]};
        auto back = p_add(moved, neg);
        CHECK(fs_distance(w, back) < 1e-12);
        // displacement no larger than the chart step
        CHECK(fs_distance(w, moved) <= euclid_norm(zeta) + 1e-12);
    }
}

TEST_CASE("p_add handles the vanishing first coordinate") {
    auto w = hp({0.0, 1.0, 0.0});
    ComplexVec zeta = {cplx(0.05, 0.0), cplx(0.0, 0.02)};
    auto moved = p_add(w, zeta);
    CHECK(fs_distance(w, moved) <= euclid_norm(zeta) + 1e-12);
    ComplexVec neg = {-zeta[0], -zeta[1]};
    CHECK(fs_distance(p_add(moved, neg), w) < 1e-12);
}

TEST_CASE("p_add rejects steps outside its contract") {
    auto w = hp({1.0, 0.0});
    CHECK_THROWS_AS(p_add(w, ComplexVec{cplx(0.2, 0.0)}), ValidationError);
    CHECK_THROWS_AS(p_add(w, ComplexVec{cplx(1.0 / 11, 0.0)}),
                    ValidationError);
    CHECK_NOTHROW(p_add(w, ComplexVec{cplx(0.09, 0.0)}));
    CHECK_THROWS_AS(p_add(w, ComplexVec{cplx(0.01, 0.0), cplx(0, 0)}),
                    ValidationError);  // dimension mismatch
}

TEST_CASE("householder_q exchanges e0 with the diagonal direction") {
    for (int n : {1, 2, 5}) {
        auto u = householder_q(n);
        CHECK(unitarity_defect(u) < 1e-14);

        HomogeneousPoint ones{ComplexVec(n + 1, 1.0)};
        auto img = apply_unitary(u, ones);
        ComplexVec e0(n + 1, 0.0);
        e0[0] = 1.0;
        CHECK(fs_distance(img, HomogeneousPoint{e0}) < 1e-14);

        // involution: U U = I
        auto rng = rng_for("householder");
        auto p = rand_point(rng, n);
        CHECK(fs_distance(apply_unitary(u, apply_unitary(u, p)), p) < 1e-13);

        // unitaries preserve the metric
        auto q = rand_point(rng, n);
        CHECK(fs_distance(apply_unitary(u, p), apply_unitary(u, q)) ==
              doctest::Approx(fs_distance(p, q)).epsilon(1e-12));
    }
}

TEST_CASE("unitary_adjoint inverts and defects are detected") {
    auto u = householder_q(2);
    auto adj = unitary_adjoint(u);
    auto rng = rng_for("adjoint");
    auto p = rand_point(rng, 2);
    CHECK(fs_distance(apply_unitary(adj, apply_unitary(u, p)), p) < 1e-13);

    UnitaryMap bad{{{cplx(1, 0), cplx(0.5, 0)}, {cplx(0, 0), cplx(1, 0)}}};
    CHECK(unitarity_defect(bad) > 0.1);
    CHECK_THROWS_AS(apply_unitary(bad, hp({1.0, 0.0})), ValidationError);
}

TEST_CASE("norms") {
    ComplexVec v = {cplx(3, 4), cplx(0, 1)};
    CHECK(euclid_norm(v) == doctest::Approx(std::sqrt(26.0)).epsilon(1e-15));
    CHECK(sup_norm(v) == 5.0);
    CHECK(euclid_norm({}) == 0.0);
}
