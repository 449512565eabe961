#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "holocurve/eval.hpp"
#include "holocurve/expr.hpp"
#include "holocurve/types.hpp"

using namespace holocurve;

namespace {

cplx ev(const std::string& s, cplx z) { return eval_jet(*parse_expr(s), z).value; }
cplx dv(const std::string& s, cplx z) {
    return eval_jet(*parse_expr(s), z).derivative;
}

}  // namespace

TEST_CASE("parse and evaluate basics") {
    CHECK(std::abs(ev("z^2+1", 2.0) - 5.0) < 1e-15);
    CHECK(std::abs(ev("exp(z)", 0.0) - 1.0) < 1e-15);
    CHECK(std::abs(ev("2*i", 0.0) - cplx(0, 2)) < 1e-15);
    CHECK(std::abs(ev("cos(z)*cos(z)+sin(z)*sin(z)", cplx(0.3, 0.7)) - 1.0) <
          1e-14);
    CHECK(std::abs(ev("2.5e-2", 1.0) - 0.025) < 1e-18);
    CHECK(std::abs(ev(".5", 1.0) - 0.5) < 1e-18);
    CHECK(std::abs(ev("z^-2", 2.0) - 0.25) < 1e-15);
    CHECK(std::abs(ev("-z^2", 3.0) + 9.0) < 1e-15);    // -(z^2)
    CHECK(std::abs(ev("(1+2*i)/(1-2*i)", 0.0) -
                   cplx(-0.6, 0.8)) < 1e-15);
    CHECK(std::abs(ev(" z + 1 ", 1.0) - 2.0) < 1e-15);
}

TEST_CASE("parse errors carry offsets and expectations") {
    auto offset_of = [](const std::string& s) {
        try {
            parse_expr(s);
        } catch (const ParseError& e) {
            return e.offset;
        }
        return std::size_t(-1);
    };
    CHECK(offset_of("z+") == 2);
    CHECK(offset_of("2**3") == 2);
    CHECK(offset_of("z 2") == 2);
    CHECK(offset_of("foo") == 0);
    CHECK(offset_of("z^1.5") == 3);
    CHECK(offset_of("(z+1") == 4);
    CHECK(offset_of("") == 0);
    CHECK(offset_of(".") == 1);

    try {
        parse_expr("z^10000000");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.expected == "exponent of magnitude <= 1000000");
    }
    try {
        parse_expr("cos z");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.expected == "'(' after function name");
    }
}

TEST_CASE("derivatives") {
    CHECK(std::abs(dv("z^3", 2.0) - 12.0) < 1e-14);
    CHECK(std::abs(dv("exp(2*z)", 0.5) - 2.0 * std::exp(1.0)) < 1e-13);
    CHECK(std::abs(dv("sin(z)", 0.0) - 1.0) < 1e-15);
    CHECK(std::abs(dv("1/z", 2.0) + 0.25) < 1e-15);
    // derivative vanishes at a double zero
    CHECK(dv("(z-1)^2", 1.0) == cplx(0.0));
    CHECK(std::abs(dv("z*z-2*z+1", 1.0)) < 1e-15);
}

TEST_CASE("to_string round trips through the parser") {
    auto rng = std::mt19937_64(20260814);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<ExprPtr> zoo = {
        parse_expr("z^2-3*z+1"),
        parse_expr("exp(cos(z)/(1+z^2))"),
        parse_expr("-(z-1)/(z+1)"),
        parse_expr("1/z^3"),
        make_pow(make_binary(ExprKind::Sub, make_var(), make_const(2.0)), -2),
        make_product({make_const(cplx(0.5, -1.5)), make_var(),
                      make_binary(ExprKind::Add, make_var(),
                                  make_const(cplx(0, 1)))}),
        make_affine(parse_expr("z^2+exp(z)"), cplx(2.0, 1.0), cplx(-0.5, 0.25)),
        make_product({}),
        make_unary(ExprKind::Neg, make_const(cplx(-1.0, -2.0))),
    };
    for (const auto& e : zoo) {
        auto s = to_string(e);
        auto back = parse_expr(s);
        // after one parse-print cycle the text is a fixed point
        auto s2 = to_string(back);
        CHECK(to_string(parse_expr(s2)) == s2);
        for (int i = 0; i < 25; ++i) {
            cplx z(u(rng), u(rng));
            auto j1 = eval_jet(*e, z);
            auto j2 = eval_jet(*back, z);
            CHECK(std::abs(j1.value - j2.value) <=
                  1e-12 * (1.0 + std::abs(j1.value)));
            CHECK(std::abs(j1.derivative - j2.derivative) <=
                  1e-12 * (1.0 + std::abs(j1.derivative)));
        }
    }
}

TEST_CASE("printed constants keep all digits") {
    double v = 0.1 + 0.2;  // not representable as a short decimal
    auto e = make_const(v);
    auto back = parse_expr(to_string(e));
    CHECK(eval_jet(*back, 0.0).value == cplx(v));
}

TEST_CASE("laurent expansion identifies zeros and poles") {
    auto j = eval_laurent(*parse_expr("(z-1)^2"), 1.0);
    CHECK(j.m == 2);
    CHECK(std::abs(j.c0 - 1.0) < 1e-14);

    j = eval_laurent(*parse_expr("1/z"), 0.0);
    CHECK(j.m == -1);
    CHECK(std::abs(j.c0 - 1.0) < 1e-14);

    j = eval_laurent(*parse_expr("z/z"), 0.5);
    CHECK(j.m == 0);
    CHECK(std::abs(j.c0 - 1.0) < 1e-14);

    j = eval_laurent(*parse_expr("sin(z)/z"), 0.0);
    CHECK(j.m == 0);
    CHECK(std::abs(j.c0 - 1.0) < 1e-12);

    j = eval_laurent(*parse_expr("(z-2)^3/(z-2)"), 2.0);
    CHECK(j.m == 2);
}

TEST_CASE("poles raise with their order") {
    try {
        eval_jet(*parse_expr("1/(z-1)^3"), 1.0);
        CHECK(false);
    } catch (const PoleError& e) {
        CHECK(e.order == 3);
        CHECK(std::abs(e.at - cplx(1.0)) < 1e-15);
    }
    CHECK_THROWS_AS(eval_jet(*parse_expr("exp(1/z)"), 0.0), NumericError);
    // dividing by an identically zero germ
    CHECK_THROWS_AS(eval_laurent(*parse_expr("1/(z-z)"), 0.0), NumericError);
}

TEST_CASE("log-space evaluation survives huge magnitudes") {
    auto e = parse_expr("exp(z)");
    auto lc = eval_log(*e, 1e4);
    CHECK(lc.logabs == doctest::Approx(1e4).epsilon(1e-12));
    CHECK(std::abs(lc.arg) < 1e-9);

    auto big = eval_log(*parse_expr("exp(z)*exp(z)/exp(2*z)"), 5e3);
    CHECK(big.logabs == doctest::Approx(0.0).epsilon(1e-9));

    // moderate values agree with plain evaluation
    auto f = parse_expr("(z^2+1)/(z-3)");
    for (cplx z : {cplx(0.5, 0.5), cplx(-2, 1), cplx(4, -1)}) {
        auto direct = eval_jet(*f, z).value;
        auto viaLog = eval_log(*f, z).to_complex();
        CHECK(std::abs(direct - viaLog) <= 1e-12 * std::abs(direct));
    }

    // a root hit through log-space subtraction bottoms out near the
    // cancellation floor instead of reaching -infinity
    CHECK(eval_log(*parse_expr("z-2"), 2.0).logabs < -30.0);
    CHECK(eval_log(*parse_expr("1/(z-2)"), 2.0).logabs > 30.0);
    // an exact zero leaf does carry -infinity
    CHECK(eval_log(*parse_expr("0*z"), 2.0).logabs ==
          -std::numeric_limits<double>::infinity());
}

TEST_CASE("log-complex arithmetic") {
    auto a = lc_from(cplx(3, 4));
    auto b = lc_from(cplx(-1, 2));
    CHECK(std::abs(lc_mul(a, b).to_complex() - cplx(3, 4) * cplx(-1, 2)) <
          1e-12);
    CHECK(std::abs(lc_div(a, b).to_complex() - cplx(3, 4) / cplx(-1, 2)) <
          1e-12);
    CHECK(std::abs(lc_pow(a, 3).to_complex() - std::pow(cplx(3, 4), 3)) <
          1e-10);
    CHECK(std::abs(lc_add(a, b).to_complex() - cplx(2, 6)) < 1e-12);
    CHECK(std::abs(lc_neg(a).to_complex() + cplx(3, 4)) < 1e-12);
    // adding opposite numbers yields the zero element
    CHECK(lc_add(a, lc_neg(a)).logabs < -30.0);
}
