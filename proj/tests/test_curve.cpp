#include "doctest.h"

#include <cmath>
#include <complex>

#include "holocurve/curve.hpp"
#include "holocurve/projective.hpp"
#include "holocurve/types.hpp"

using namespace holocurve;

namespace {

Curve curve_of(std::initializer_list<const char*> exprs,
               Domain d = Domain::plane) {
    Curve c;
    for (auto* s : exprs) c.coords.push_back(parse_expr(s));
    c.domain = d;
    validate_curve(c);
    return c;
}

}  // namespace

TEST_CASE("validate_curve") {
    Curve empty;
    CHECK_THROWS_AS(validate_curve(empty), ValidationError);
    Curve one;
    one.coords.push_back(parse_expr("z"));
    CHECK_THROWS_AS(validate_curve(one), ValidationError);
    Curve null2;
    null2.coords = {parse_expr("1"), nullptr};
    CHECK_THROWS_AS(validate_curve(null2), ValidationError);
    CHECK_NOTHROW(validate_curve(curve_of({"1", "z"})));
}

TEST_CASE("eval_curve reduces common zeros") {
    auto c = curve_of({"z^2", "z^3"});
    auto j = eval_curve(c, 0.0);
    // reduced map is (1 : z) near 0
    CHECK(std::abs(j.values[1] / j.values[0]) < 1e-15);
    auto j2 = eval_curve(c, 2.0);
    CHECK(std::abs(j2.values[1] / j2.values[0] - 2.0) < 1e-14);

    auto lin = curve_of({"1", "z"});
    auto j3 = eval_curve(lin, cplx(1, 1));
    CHECK(std::abs(j3.values[1] / j3.values[0] - cplx(1, 1)) < 1e-15);
    CHECK(std::abs(j3.derivs[1] / j3.values[0] - 1.0) < 1e-15);
    CHECK(std::abs(j3.derivs[0]) < 1e-15);
}

TEST_CASE("eval_curve handles poles by clearing them") {
    auto c = curve_of({"1", "1/(z-1)"});
    auto j = eval_curve(c, 1.0);  // value is (0 : 1)
    CHECK(std::abs(j.values[0] / j.values[1]) < 1e-15);
    auto away = eval_curve(c, 3.0);
    CHECK(std::abs(away.values[1] / away.values[0] - 0.5) < 1e-14);
}

TEST_CASE("degenerate points are reported") {
    auto c = curve_of({"z", "z^2"});
    CHECK_THROWS_AS(eval_curve(c, cplx(1e-20, 0.0)), DegenerateError);
    CHECK(curve_scale(c) > 0.1);
}

TEST_CASE("spherical derivative closed forms") {
    auto lin = curve_of({"1", "z"});
    for (cplx z : {cplx(0, 0), cplx(1, 0), cplx(0.3, -0.8), cplx(-2, 5)}) {
        double expect = 1.0 / (1.0 + std::norm(z));
        CHECK(spherical_derivative(lin, z) ==
              doctest::Approx(expect).epsilon(1e-10));
    }
    auto ex = curve_of({"1", "exp(z)"});
    for (double x : {-2.0, 0.0, 1.5}) {
        double m = std::exp(x);
        CHECK(spherical_derivative(ex, cplx(x, 0.7)) ==
              doctest::Approx(m / (1.0 + m * m)).epsilon(1e-10));
    }
}

TEST_CASE("log_curve_norm tracks growth in log space") {
    auto ex = curve_of({"1", "exp(z)"});
    CHECK(log_curve_norm(ex, 1e4) == doctest::Approx(1e4).epsilon(1e-10));
    auto lin = curve_of({"1", "z"});
    CHECK(log_curve_norm(lin, 3.0) ==
          doctest::Approx(0.5 * std::log(10.0)).epsilon(1e-12));
}

TEST_CASE("sup of the spherical derivative over regions") {
    auto lin = curve_of({"1", "z"});
    auto r = sup_sphderiv_grid(lin, Rect{-1, 1, -1, 1});
    CHECK(r.sup == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(r.argmax) < 1e-3);

    // punctured weight |z| f# peaks at |z| = 1 with value 1/2
    auto pl = curve_of({"1", "z"}, Domain::punctured);
    auto a = sup_sphderiv_grid(pl, Annulus{0.5, 2.0});
    CHECK(a.sup == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(std::abs(std::abs(a.argmax) - 1.0) < 1e-4);

    CHECK(intrinsic_sphderiv(pl, cplx(0, 1)) ==
          doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("cos ratio curve has large spherical derivative spikes") {
    auto c = builtin_curve("cos_curve", {0.7});
    REQUIRE(c.dim() == 2);
    Curve ratio;
    ratio.coords = {c.coords[1], c.coords[0]};  // (cos 0.7z : cos z)
    double spike = spherical_derivative(ratio, cplx(20.31, 0.0));
    CHECK(spike == doctest::Approx(8.44).epsilon(0.01));
    // the full curve keeps the derivative moderate at the same point
    CHECK(spherical_derivative(c, cplx(20.31, 0.0)) < 2.0);
}

TEST_CASE("fryntov curve structure") {
    auto c = builtin_curve("fryntov", {0.7, 6});
    auto j0 = eval_curve(c, 0.0);
    CHECK(std::abs(j0.values[1] / j0.values[0] - 1.0) < 1e-12);
    // zero of multiplicity n_1 = floor(2^0.7) = 1 at z = 2
    auto j2 = eval_curve(c, 2.0);
    CHECK(std::abs(j2.values[1] / j2.values[0]) < 1e-14);
    CHECK(std::abs(j2.derivs[1] / j2.values[0]) > 1e-6);
    CHECK_THROWS_AS(builtin_curve("fryntov", {0.7}), ValidationError);
    CHECK_THROWS_AS(builtin_curve("nonsense", {}), ValidationError);
}

TEST_CASE("lehto product matches its factors") {
    double t = std::exp(2.0);
    auto c = builtin_curve("lehto_product", {t, 12});
    REQUIRE(c.domain == Domain::punctured);
    cplx z(1.7, 0.4);
    cplx manual = 1.0;
    for (int k = -12; k <= 12; ++k) {
        double tk = std::pow(t, k);
        if (tk >= 1.0)
            manual *= (1.0 + tk / z) / (1.0 - tk / z);
        else
            manual *= (z + tk) / (z - tk);
    }
    auto j = eval_curve(c, z);
    CHECK(std::abs(j.values[1] / j.values[0] - manual) <=
          1e-9 * std::abs(manual));
}

TEST_CASE("hyperplane distances") {
    auto lin = curve_of({"1", "z"});
    auto h0 = hyperplane_through(HomogeneousPoint{{1.0, 0.0}});
    CHECK(hyperplane_sin_distance(lin, 0.0, h0) < 1e-15);
    CHECK(hyperplane_sin_distance(lin, 1.0, h0) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    auto hinf = hyperplane_through(HomogeneousPoint{{0.0, 1.0}});
    CHECK(hyperplane_sin_distance(lin, 1e9, hinf) < 1e-8);
}

TEST_CASE("ratio bound checks collect violations") {
    auto lin = curve_of({"1", "z"});
    std::vector<cplx> samples = {0.0, cplx(1, 0), cplx(0, 2)};
    auto ok = ratios_bound_check(lin, 1.0, samples);
    CHECK(ok.ok);
    CHECK(ok.max_value == doctest::Approx(1.0));
    auto bad = ratios_bound_check(lin, 0.5, samples);
    CHECK(!bad.ok);
    CHECK(bad.violations.size() == 1);
    CHECK(std::abs(bad.violations[0]) < 1e-15);
}

TEST_CASE("disc intersections count nearby hyperplanes") {
    auto lin = curve_of({"1", "z"});
    std::vector<Hypersurface> hs = {
        hyperplane_through(HomogeneousPoint{{1.0, 0.1}}),
        hyperplane_through(HomogeneousPoint{{1.0, 0.2}}),
        hyperplane_through(HomogeneousPoint{{1.0, cplx(0, 5)}}),
    };
    // z = 0.1 and z = 0.2 fall in one disc of diameter 0.5; (1 : 5i) is far
    auto rep = disc_intersection_test(lin, hs, 0.5, Rect{-1, 1, -1, 1}, 0.05);
    CHECK(rep.max_count == 2);
    CHECK(rep.discs_checked > 0);
}

TEST_CASE("affine_reparam shifts the variable") {
    auto c = curve_of({"1", "z^2+1"});
    auto g = affine_reparam(c, 2.0, cplx(1.0, 0.0));
    for (cplx w : {cplx(0, 0), cplx(0.5, -1), cplx(2, 3)}) {
        auto jw = eval_curve(g, w);
        auto jz = eval_curve(c, 2.0 * w + 1.0);
        CHECK(std::abs(jw.values[1] / jw.values[0] -
                       jz.values[1] / jz.values[0]) < 1e-12);
    }
}

TEST_CASE("pointwise normality consequences") {
    auto ex = curve_of({"1", "exp(z)"});
    auto rep = chpm_checks(ex, Rect{-3, 3, -3, 3}, 41, 41);
    CHECK(rep.all_ok());
    CHECK(rep.sph.worst <= 1.0 + 1e-12);

    auto fast = curve_of({"1", "exp(3*z)"});
    auto bad = chpm_checks(fast, Rect{-3, 3, -3, 3}, 41, 41);
    CHECK(!bad.all_ok());
    CHECK(!bad.sph.ok);
    CHECK(bad.sph.worst == doctest::Approx(1.5).epsilon(0.01));
    CHECK(!bad.growth.ok);

    // the leading coordinate must be the constant 1
    CHECK_THROWS_AS(chpm_checks(curve_of({"z", "exp(z)"}),
                                Rect{-1, 1, -1, 1}, 9, 9),
                    ValidationError);
}
