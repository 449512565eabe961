#include "holocurve/eval.hpp"

#include <cmath>
#include <limits>

namespace holocurve {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

cplx ipow(cplx b, int k) {
    if (k < 0) return 1.0 / ipow(b, -k);
    cplx r = 1.0;
    cplx p = b;
    for (int e = k; e > 0; e >>= 1) {
        if (e & 1) r *= p;
        p *= p;
    }
    return r;
}

LaurentJet jet_zero() { return LaurentJet{true, 0, 0.0, 0.0, true}; }

LaurentJet jet_of(int m, cplx c0, cplx c1, bool ok) {
    return LaurentJet{false, m, c0, c1, ok};
}

LaurentJet jet_add(const LaurentJet& a, const LaurentJet& b) {
    if (a.zero) return b;
    if (b.zero) return a;
    const LaurentJet& lo = a.m <= b.m ? a : b;
    const LaurentJet& hi = a.m <= b.m ? b : a;
    if (lo.m == hi.m) {
        cplx s0 = lo.c0 + hi.c0;
        bool ok = lo.c1_ok && hi.c1_ok;
        cplx s1 = lo.c1 + hi.c1;
        if (s0 == 0.0) {
            if (!ok)
                throw NumericError("cancellation",
                                   "repeated exact cancellation; expansion "
                                   "order cannot be tracked");
            if (s1 == 0.0) return jet_zero();
            return jet_of(lo.m + 1, s1, 0.0, false);
        }
        return jet_of(lo.m, s0, s1, ok);
    }
    if (hi.m == lo.m + 1)
        return jet_of(lo.m, lo.c0, lo.c1 + hi.c0, lo.c1_ok);
    return jet_of(lo.m, lo.c0, lo.c1, lo.c1_ok);
}

LaurentJet jet_mul(const LaurentJet& a, const LaurentJet& b) {
    if (a.zero || b.zero) return jet_zero();
    return jet_of(a.m + b.m, a.c0 * b.c0, a.c0 * b.c1 + a.c1 * b.c0,
                  a.c1_ok && b.c1_ok);
}

LaurentJet jet_div(const LaurentJet& a, const LaurentJet& b) {
    if (b.zero)
        throw NumericError("division-by-zero",
                           "division by an identically vanishing expression");
    if (a.zero) return jet_zero();
    cplx q0 = a.c0 / b.c0;
    cplx q1 = (a.c1 - q0 * b.c1) / b.c0;
    return jet_of(a.m - b.m, q0, q1, a.c1_ok && b.c1_ok);
}

LaurentJet jet_pow(const LaurentJet& a, int k) {
    if (k == 0) return jet_of(0, 1.0, 0.0, true);
    if (a.zero) {
        if (k < 0)
            throw NumericError("division-by-zero",
                               "negative power of an identically vanishing "
                               "expression");
        return jet_zero();
    }
    cplx p0 = ipow(a.c0, k);
    cplx p1 = static_cast<double>(k) * ipow(a.c0, k - 1) * a.c1;
    return jet_of(a.m * k, p0, p1, a.c1_ok);
}

LaurentJet jet_transcendental(ExprKind kind, const LaurentJet& a) {
    if (!a.zero && a.m < 0)
        throw NumericError("essential-singularity",
                           "transcendental function applied to a pole");
    cplx v = 0.0, d = 0.0;
    bool ok = true;
    if (!a.zero) {
        if (a.m == 0) {
            v = a.c0;
            d = a.c1;
            ok = a.c1_ok;
        } else if (a.m == 1) {
            d = a.c0;
        }
    }
    cplx gv, gd;
    switch (kind) {
        case ExprKind::Exp:
            gv = std::exp(v);
            gd = gv * d;
            break;
        case ExprKind::Cos:
            gv = std::cos(v);
            gd = -std::sin(v) * d;
            break;
        default:
            gv = std::sin(v);
            gd = std::cos(v) * d;
            break;
    }
    if (gv == 0.0) {
        // e.g. cos at pi/2: leading term is the derivative
        if (gd == 0.0) return jet_zero();
        return jet_of(1, gd, 0.0, false);
    }
    return jet_of(0, gv, gd, ok);
}

}  // namespace

LaurentJet eval_laurent(const Expr& e, cplx z0) {
    switch (e.kind) {
        case ExprKind::Const:
            return e.value == 0.0 ? jet_zero() : jet_of(0, e.value, 0.0, true);
        case ExprKind::Var:
            return z0 == 0.0 ? jet_of(1, 1.0, 0.0, true)
                             : jet_of(0, z0, 1.0, true);
        case ExprKind::Neg: {
            LaurentJet a = eval_laurent(*e.kids[0], z0);
            if (a.zero) return a;
            return jet_of(a.m, -a.c0, -a.c1, a.c1_ok);
        }
        case ExprKind::Add:
            return jet_add(eval_laurent(*e.kids[0], z0),
                           eval_laurent(*e.kids[1], z0));
        case ExprKind::Sub: {
            LaurentJet b = eval_laurent(*e.kids[1], z0);
            if (!b.zero) {
                b.c0 = -b.c0;
                b.c1 = -b.c1;
            }
            return jet_add(eval_laurent(*e.kids[0], z0), b);
        }
        case ExprKind::Mul:
            return jet_mul(eval_laurent(*e.kids[0], z0),
                           eval_laurent(*e.kids[1], z0));
        case ExprKind::Div:
            return jet_div(eval_laurent(*e.kids[0], z0),
                           eval_laurent(*e.kids[1], z0));
        case ExprKind::Pow:
            return jet_pow(eval_laurent(*e.kids[0], z0), e.exponent);
        case ExprKind::Exp:
        case ExprKind::Cos:
        case ExprKind::Sin:
            return jet_transcendental(e.kind, eval_laurent(*e.kids[0], z0));
        case ExprKind::Product: {
            LaurentJet r = jet_of(0, 1.0, 0.0, true);
            for (const ExprPtr& k : e.kids) {
                r = jet_mul(r, eval_laurent(*k, z0));
                if (r.zero) return r;
            }
            return r;
        }
        case ExprKind::Affine: {
            if (e.alpha == 0.0) {
                LaurentJet inner = eval_laurent(*e.kids[0], e.beta);
                if (inner.zero || inner.m > 0) return jet_zero();
                if (inner.m < 0)
                    throw PoleError(e.beta, -inner.m,
                                    "constant substitution lands on a pole");
                return jet_of(0, inner.c0, 0.0, true);
            }
            LaurentJet inner = eval_laurent(*e.kids[0], e.alpha * z0 + e.beta);
            if (inner.zero) return inner;
            return jet_of(inner.m, inner.c0 * ipow(e.alpha, inner.m),
                          inner.c1 * ipow(e.alpha, inner.m + 1), inner.c1_ok);
        }
    }
    throw NumericError("internal", "unhandled expression node");
}

JetValue eval_jet(const Expr& e, cplx z0) {
    LaurentJet j = eval_laurent(e, z0);
    if (j.zero) return JetValue{0.0, 0.0};
    if (j.m < 0)
        throw PoleError(z0, -j.m, "evaluation at a pole of order " +
                                      std::to_string(-j.m));
    if (j.m == 0) return JetValue{j.c0, j.c1};
    if (j.m == 1) return JetValue{0.0, j.c0};
    return JetValue{0.0, 0.0};
}

cplx LogComplex::to_complex() const {
    if (logabs == -kInf) return 0.0;
    return std::polar(std::exp(logabs), arg);
}

LogComplex lc_from(cplx v) {
    if (v == 0.0) return LogComplex{-kInf, 0.0};
    return LogComplex{std::log(std::abs(v)), std::arg(v)};
}

LogComplex lc_mul(const LogComplex& a, const LogComplex& b) {
    return LogComplex{a.logabs + b.logabs, a.arg + b.arg};
}

LogComplex lc_div(const LogComplex& a, const LogComplex& b) {
    if (b.logabs == -kInf) return LogComplex{kInf, 0.0};
    return LogComplex{a.logabs - b.logabs, a.arg - b.arg};
}

LogComplex lc_pow(const LogComplex& a, int k) {
    if (k == 0) return LogComplex{0.0, 0.0};
    return LogComplex{a.logabs * k, a.arg * k};
}

LogComplex lc_neg(const LogComplex& a) {
    return LogComplex{a.logabs, a.arg + 3.14159265358979323846};
}

LogComplex lc_add(const LogComplex& a, const LogComplex& b) {
    if (a.logabs == -kInf) return b;
    if (b.logabs == -kInf) return a;
    const LogComplex& big = a.logabs >= b.logabs ? a : b;
    const LogComplex& sml = a.logabs >= b.logabs ? b : a;
    double d = sml.logabs - big.logabs;
    if (d < -45.0) return big;  // below double precision of the sum
    cplx w = cplx(1.0, 0.0) + std::polar(std::exp(d), sml.arg - big.arg);
    if (w == 0.0) return LogComplex{-kInf, 0.0};
    return LogComplex{big.logabs + std::log(std::abs(w)), big.arg + std::arg(w)};
}

namespace {

LogComplex lc_cos_sin(bool is_cos, const LogComplex& g) {
    if (g.logabs > 700.0)
        throw NumericError("overflow",
                           "transcendental argument too large to represent");
    cplx v = g.to_complex();
    double x = v.real(), y = v.imag();
    if (std::abs(y) <= 30.0)
        return lc_from(is_cos ? std::cos(v) : std::sin(v));
    double sy = y > 0 ? 1.0 : -1.0;
    // cos v ~ e^{|y|}/2 (cos x -+ i sin x), sin v ~ e^{|y|}/2 (sin x +- i cos x)
    cplx w = is_cos ? cplx(std::cos(x), -sy * std::sin(x))
                    : cplx(std::sin(x), sy * std::cos(x));
    return LogComplex{std::abs(y) - std::log(2.0) + std::log(std::abs(w)),
                      std::arg(w)};
}

}  // namespace

LogComplex eval_log(const Expr& e, cplx z) {
    switch (e.kind) {
        case ExprKind::Const:
            return lc_from(e.value);
        case ExprKind::Var:
            return lc_from(z);
        case ExprKind::Neg:
            return lc_neg(eval_log(*e.kids[0], z));
        case ExprKind::Add:
            return lc_add(eval_log(*e.kids[0], z), eval_log(*e.kids[1], z));
        case ExprKind::Sub:
            return lc_add(eval_log(*e.kids[0], z),
                          lc_neg(eval_log(*e.kids[1], z)));
        case ExprKind::Mul:
            return lc_mul(eval_log(*e.kids[0], z), eval_log(*e.kids[1], z));
        case ExprKind::Div:
            return lc_div(eval_log(*e.kids[0], z), eval_log(*e.kids[1], z));
        case ExprKind::Pow:
            return lc_pow(eval_log(*e.kids[0], z), e.exponent);
        case ExprKind::Exp: {
            LogComplex g = eval_log(*e.kids[0], z);
            if (g.logabs > 700.0)
                throw NumericError("overflow",
                                   "exponential argument too large to "
                                   "represent");
            cplx v = g.to_complex();
            return LogComplex{v.real(), v.imag()};
        }
        case ExprKind::Cos:
            return lc_cos_sin(true, eval_log(*e.kids[0], z));
        case ExprKind::Sin:
            return lc_cos_sin(false, eval_log(*e.kids[0], z));
        case ExprKind::Product: {
            LogComplex r{0.0, 0.0};
            for (const ExprPtr& k : e.kids) r = lc_mul(r, eval_log(*k, z));
            return r;
        }
        case ExprKind::Affine:
            return eval_log(*e.kids[0], e.alpha * z + e.beta);
    }
    throw NumericError("internal", "unhandled expression node");
}

}  // namespace holocurve
