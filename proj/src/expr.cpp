#include "holocurve/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace holocurve {

ExprPtr make_const(cplx v) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Const;
    e->value = v;
    return e;
}

ExprPtr make_var() {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Var;
    return e;
}

ExprPtr make_unary(ExprKind k, ExprPtr c) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->kids = {std::move(c)};
    return e;
}

ExprPtr make_binary(ExprKind k, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->kids = {std::move(a), std::move(b)};
    return e;
}

ExprPtr make_pow(ExprPtr base, int exponent) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Pow;
    e->exponent = exponent;
    e->kids = {std::move(base)};
    return e;
}

ExprPtr make_product(std::vector<ExprPtr> factors) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Product;
    e->kids = std::move(factors);
    return e;
}

ExprPtr make_affine(ExprPtr c, cplx alpha, cplx beta) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Affine;
    e->alpha = alpha;
    e->beta = beta;
    e->kids = {std::move(c)};
    return e;
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : src(s) {}

    ExprPtr run() {
        ExprPtr e = expr();
        skip_ws();
        if (pos != src.size()) fail("operator or end of input");
        return e;
    }

private:
    std::string_view src;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& expected) {
        throw ParseError(pos, expected,
                         "parse error at offset " + std::to_string(pos) +
                             ": expected " + expected);
    }

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
            ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }

    ExprPtr expr() {
        ExprPtr e = term();
        while (true) {
            if (eat('+'))
                e = make_binary(ExprKind::Add, e, term());
            else if (eat('-'))
                e = make_binary(ExprKind::Sub, e, term());
            else
                return e;
        }
    }

    ExprPtr term() {
        ExprPtr e = factor();
        while (true) {
            if (eat('*'))
                e = make_binary(ExprKind::Mul, e, factor());
            else if (eat('/'))
                e = make_binary(ExprKind::Div, e, factor());
            else
                return e;
        }
    }

    ExprPtr factor() {
        if (eat('-')) return make_unary(ExprKind::Neg, factor());
        return power();
    }

    ExprPtr power() {
        ExprPtr base = primary();
        if (!eat('^')) return base;
        skip_ws();
        bool neg = false;
        if (pos < src.size() && (src[pos] == '-' || src[pos] == '+')) {
            neg = src[pos] == '-';
            ++pos;
        }
        if (pos == src.size() || !std::isdigit(static_cast<unsigned char>(src[pos])))
            fail("integer exponent");
        long v = 0;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
            v = v * 10 + (src[pos] - '0');
            if (v > 1000000) fail("exponent of magnitude <= 1000000");
            ++pos;
        }
        return make_pow(base, static_cast<int>(neg ? -v : v));
    }

    ExprPtr primary() {
        char c = peek();
        if (c == '(') {
            ++pos;
            ExprPtr e = expr();
            if (!eat(')')) fail("')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return word();
        fail("number, 'z', 'i', function call, or '('");
    }

    ExprPtr number() {
        std::size_t start = pos;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
            ++pos;
        if (pos < src.size() && src[pos] == '.') {
            ++pos;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
                ++pos;
        }
        if (pos == start || (pos == start + 1 && src[start] == '.'))
            fail("number");
        if (pos < src.size() && (src[pos] == 'e' || src[pos] == 'E')) {
            std::size_t mark = pos;
            ++pos;
            if (pos < src.size() && (src[pos] == '+' || src[pos] == '-')) ++pos;
            if (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
                while (pos < src.size() &&
                       std::isdigit(static_cast<unsigned char>(src[pos])))
                    ++pos;
            } else {
                pos = mark;  // the 'e' was not an exponent; leave it unconsumed
            }
        }
        std::string text(src.substr(start, pos - start));
        return make_const(std::strtod(text.c_str(), nullptr));
    }

    ExprPtr word() {
        std::size_t start = pos;
        while (pos < src.size() && std::isalpha(static_cast<unsigned char>(src[pos])))
            ++pos;
        std::string_view w = src.substr(start, pos - start);
        if (w == "z") return make_var();
        if (w == "i") return make_const(cplx(0.0, 1.0));
        ExprKind k;
        if (w == "exp")
            k = ExprKind::Exp;
        else if (w == "cos")
            k = ExprKind::Cos;
        else if (w == "sin")
            k = ExprKind::Sin;
        else {
            pos = start;
            fail("'z', 'i', 'exp', 'cos', or 'sin'");
        }
        if (!eat('(')) fail("'(' after function name");
        ExprPtr arg = expr();
        if (!eat(')')) fail("')'");
        return make_unary(k, arg);
    }
};

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_const(cplx v) {
    if (v.imag() == 0.0) return fmt_double(v.real());
    // the unit must stay atomic or reprinting grows a layer per round trip
    if (v.real() == 0.0 && v.imag() == 1.0) return "i";
    std::string s = "(" + fmt_double(v.real());
    s += std::signbit(v.imag()) ? "-" : "+";
    s += fmt_double(std::abs(v.imag()));
    s += "*i)";
    return s;
}

// Precedence levels used by the printer: Add/Sub 1, Mul/Div 2, Neg 3,
// Pow 4, atoms 5. A node is parenthesized when its level is below the
// context's minimum.
int node_prec(const Expr& e, const std::string& rendered) {
    switch (e.kind) {
        case ExprKind::Add:
        case ExprKind::Sub:
            return 1;
        case ExprKind::Mul:
        case ExprKind::Div:
        case ExprKind::Product:
            return 2;
        case ExprKind::Neg:
            return 3;
        case ExprKind::Pow:
            return 4;
        case ExprKind::Const:
            // "-3" must reparse as a negation, "(1+2*i)" is atomic
            return rendered.size() && rendered[0] == '-' ? 3 : 5;
        default:
            return 5;
    }
}

std::string print(const Expr& e, int min_prec, const std::string& var);

std::string print_child(const ExprPtr& c, int min_prec, const std::string& var) {
    return print(*c, min_prec, var);
}

std::string print(const Expr& e, int min_prec, const std::string& var) {
    std::string s;
    switch (e.kind) {
        case ExprKind::Const:
            s = fmt_const(e.value);
            break;
        case ExprKind::Var:
            s = var;
            break;
        case ExprKind::Neg:
            s = "-" + print_child(e.kids[0], 3, var);
            break;
        case ExprKind::Add:
            s = print_child(e.kids[0], 1, var) + "+" +
                print_child(e.kids[1], 2, var);
            break;
        case ExprKind::Sub:
            s = print_child(e.kids[0], 1, var) + "-" +
                print_child(e.kids[1], 2, var);
            break;
        case ExprKind::Mul:
            s = print_child(e.kids[0], 2, var) + "*" +
                print_child(e.kids[1], 3, var);
            break;
        case ExprKind::Div:
            s = print_child(e.kids[0], 2, var) + "/" +
                print_child(e.kids[1], 3, var);
            break;
        case ExprKind::Pow:
            s = print_child(e.kids[0], 5, var) + "^" +
                std::to_string(e.exponent);
            break;
        case ExprKind::Exp:
            s = "exp(" + print_child(e.kids[0], 0, var) + ")";
            break;
        case ExprKind::Cos:
            s = "cos(" + print_child(e.kids[0], 0, var) + ")";
            break;
        case ExprKind::Sin:
            s = "sin(" + print_child(e.kids[0], 0, var) + ")";
            break;
        case ExprKind::Product: {
            if (e.kids.empty()) {
                s = "1";
                break;
            }
            s = print_child(e.kids[0], 2, var);
            for (std::size_t i = 1; i < e.kids.size(); ++i)
                s += "*" + print_child(e.kids[i], 3, var);
            break;
        }
        case ExprKind::Affine: {
            std::string sub = "((" + fmt_const(e.alpha) + ")*" + var + "+(" +
                              fmt_const(e.beta) + "))";
            return print(*e.kids[0], min_prec, sub);
        }
    }
    int p = node_prec(e, s);
    if (p < min_prec) s = "(" + s + ")";
    return s;
}

}  // namespace

ExprPtr parse_expr(std::string_view src) { return Parser(src).run(); }

std::string to_string(const ExprPtr& e) {
    if (!e) throw ValidationError("invalid-point", "null expression");
    return print(*e, 0, "z");
}

}  // namespace holocurve
