#pragma once

#include "holocurve/expr.hpp"
#include "holocurve/types.hpp"

namespace holocurve {

/// Value and first derivative of an expression at a point.
struct JetValue {
    cplx value;
    cplx derivative;
};

/// Leading behaviour of a meromorphic expression in the local coordinate
/// w = z - z0: the expansion c0 * w^m + c1 * w^{m+1} + O(w^{m+2}).
/// zero marks the identically-zero germ. c1_ok is cleared when cancellation
/// made the subleading coefficient unknowable (c1 is then 0).
struct LaurentJet {
    bool zero = false;
    int m = 0;
    cplx c0{};
    cplx c1{};
    bool c1_ok = true;
};

/// Laurent jet of e at z0. Errors: a transcendental applied to a pole, or
/// division by an identically vanishing germ.
LaurentJet eval_laurent(const Expr& e, cplx z0);

/// Value and derivative at z0; raises PoleError (with the order) at poles.
/// At a zero of exact multiplicity >= 2 the derivative is reported as 0.
JetValue eval_jet(const Expr& e, cplx z0);

/// A nonzero complex number stored as (log modulus, argument). logabs may be
/// -infinity (the number 0) or +infinity (a pole encountered mid-formula);
/// infinities propagate through arithmetic so callers can detect them.
struct LogComplex {
    double logabs = 0.0;
    double arg = 0.0;
    cplx to_complex() const;
};

LogComplex lc_from(cplx v);
LogComplex lc_mul(const LogComplex& a, const LogComplex& b);
LogComplex lc_div(const LogComplex& a, const LogComplex& b);
LogComplex lc_pow(const LogComplex& a, int k);
LogComplex lc_neg(const LogComplex& a);
LogComplex lc_add(const LogComplex& a, const LogComplex& b);

/// Overflow-free evaluation of e at z: every intermediate is carried in
/// log-modulus/argument form, so values like exp(1e4) are representable.
LogComplex eval_log(const Expr& e, cplx z);

}  // namespace holocurve
