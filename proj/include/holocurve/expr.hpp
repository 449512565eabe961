#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "holocurve/types.hpp"

namespace holocurve {

enum class ExprKind {
    Const,
    Var,
    Neg,
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Exp,
    Cos,
    Sin,
    Product,
    Affine,
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable expression tree in one variable z.
///  - Pow raises to an integer exponent (may be negative or zero).
///  - Product is an n-ary product, used for long factorizations.
///  - Affine evaluates its child at alpha*z + beta.
struct Expr {
    ExprKind kind;
    cplx value{};              // Const
    int exponent = 0;          // Pow
    cplx alpha{1.0}, beta{};   // Affine
    std::vector<ExprPtr> kids;
};

ExprPtr make_const(cplx v);
ExprPtr make_var();
ExprPtr make_unary(ExprKind k, ExprPtr e);
ExprPtr make_binary(ExprKind k, ExprPtr a, ExprPtr b);
ExprPtr make_pow(ExprPtr base, int exponent);
ExprPtr make_product(std::vector<ExprPtr> factors);
ExprPtr make_affine(ExprPtr e, cplx alpha, cplx beta);

/// Grammar accepted (whitespace insensitive):
///   expr    := term (('+'|'-') term)*
///   term    := factor (('*'|'/') factor)*
///   factor  := '-' factor | power
///   power   := primary ('^' ['-'] digits)?
///   primary := number | 'i' | 'z' | ('exp'|'cos'|'sin') '(' expr ')'
///            | '(' expr ')'
/// Numbers allow a decimal point and scientific notation. There is no
/// implicit multiplication. The whole input must be consumed. Failures raise
/// ParseError with the byte offset and the set of acceptable tokens.
ExprPtr parse_expr(std::string_view src);

/// Serializes so that parse_expr(to_string(e)) evaluates identically.
/// Affine nodes are inlined by substituting (alpha*z+beta) for the variable.
std::string to_string(const ExprPtr& e);

}  // namespace holocurve
