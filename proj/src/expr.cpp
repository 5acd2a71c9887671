#include "colombeau/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <vector>

namespace colombeau {

namespace {

enum class Kind { Num, Var, Eps, Add, Sub, Mul, Div, Neg, Pow, Call };
enum class Fn { Sin, Cos, Exp, Log, Bump, BumpD1, BumpD2 };

} // namespace

struct Expr {
    Kind kind = Kind::Num;
    double num = 0.0;        // Num
    int var = 0;             // Var (0-based axis)
    int exponent = 0;        // Pow
    Fn fn = Fn::Sin;         // Call
    ExprPtr a, b;            // operands
};

namespace {

ExprPtr make(Kind k, ExprPtr a = nullptr, ExprPtr b = nullptr) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->a = std::move(a);
    e->b = std::move(b);
    return e;
}

ExprPtr num(double v) {
    auto e = std::make_shared<Expr>();
    e->num = v;
    return e;
}

ExprPtr var(int axis) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Var;
    e->var = axis;
    return e;
}

ExprPtr call(Fn fn, ExprPtr arg) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Call;
    e->fn = fn;
    e->a = std::move(arg);
    return e;
}

bool is_zero(const ExprPtr& e) { return e->kind == Kind::Num && e->num == 0.0; }
bool is_one(const ExprPtr& e) { return e->kind == Kind::Num && e->num == 1.0; }

// light simplification keeps derivative trees small
ExprPtr add(ExprPtr a, ExprPtr b) {
    if (is_zero(a)) return b;
    if (is_zero(b)) return a;
    return make(Kind::Add, std::move(a), std::move(b));
}
ExprPtr sub(ExprPtr a, ExprPtr b) {
    if (is_zero(b)) return a;
    if (is_zero(a)) return make(Kind::Neg, std::move(b));
    return make(Kind::Sub, std::move(a), std::move(b));
}
ExprPtr mul(ExprPtr a, ExprPtr b) {
    if (is_zero(a) || is_zero(b)) return num(0.0);
    if (is_one(a)) return b;
    if (is_one(b)) return a;
    return make(Kind::Mul, std::move(a), std::move(b));
}
ExprPtr divide(ExprPtr a, ExprPtr b) {
    if (is_zero(a)) return num(0.0);
    if (is_one(b)) return a;
    return make(Kind::Div, std::move(a), std::move(b));
}
ExprPtr power(ExprPtr a, int n) {
    if (n == 0) return num(1.0);
    if (n == 1) return a;
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Pow;
    e->exponent = n;
    e->a = std::move(a);
    return e;
}

// compactly supported bump(t) = exp(1 - 1/(1 - t^2)) for |t| < 1, else 0;
// the cutoff avoids 0 * inf at the support boundary
constexpr double kBumpCut = 1.3e-3;

double bump_val(double t) {
    double w = 1.0 - t * t;
    if (w < kBumpCut) return 0.0;
    return std::exp(1.0 - 1.0 / w);
}
double bump_d1(double t) {
    double w = 1.0 - t * t;
    if (w < kBumpCut) return 0.0;
    return bump_val(t) * (-2.0 * t / (w * w));
}
double bump_d2(double t) {
    double w = 1.0 - t * t;
    if (w < kBumpCut) return 0.0;
    double q = 1.0 / w;
    double g = -2.0 * t * q * q;  // (log bump)'
    return bump_val(t) * (g * g - 2.0 * q * q - 8.0 * t * t * q * q * q);
}

struct Parser {
    const std::string& text;
    int arity;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos); }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    ExprPtr parse() {
        ExprPtr e = expression();
        skip_ws();
        if (pos != text.size()) fail("unexpected trailing input");
        return e;
    }

    ExprPtr expression() {
        ExprPtr e = term();
        for (;;) {
            if (eat('+'))
                e = add(e, term());
            else if (eat('-'))
                e = sub(e, term());
            else
                return e;
        }
    }

    ExprPtr term() {
        ExprPtr e = unary();
        for (;;) {
            if (eat('*'))
                e = mul(e, unary());
            else if (eat('/'))
                e = divide(e, unary());
            else
                return e;
        }
    }

    ExprPtr unary() {
        if (eat('-')) return sub(num(0.0), unary());
        return powered();
    }

    ExprPtr powered() {
        ExprPtr base = atom();
        if (eat('^')) {
            skip_ws();
            std::size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                ++pos;
            if (pos == start) fail("expected a nonnegative integer exponent after ^");
            int n = std::atoi(text.substr(start, pos - start).c_str());
            return power(base, n);
        }
        return base;
    }

    ExprPtr atom() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of expression");
        char c = text[pos];
        if (c == '(') {
            ++pos;
            ExprPtr e = expression();
            if (!eat(')')) fail("expected )");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        fail(std::string("unexpected character '") + c + "'");
    }

    ExprPtr number() {
        std::size_t start = pos;
        char* end = nullptr;
        double v = std::strtod(text.c_str() + start, &end);
        if (end == text.c_str() + start) fail("malformed number");
        pos = static_cast<std::size_t>(end - text.c_str());
        return num(v);
    }

    ExprPtr identifier() {
        std::size_t start = pos;
        while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                     text[pos] == '_'))
            ++pos;
        std::string name = text.substr(start, pos - start);
        if (name == "eps") return make(Kind::Eps);
        if (name.size() >= 2 && name[0] == 'x') {
            bool digits = true;
            for (std::size_t i = 1; i < name.size(); ++i)
                digits = digits && std::isdigit(static_cast<unsigned char>(name[i]));
            if (digits) {
                int k = std::atoi(name.c_str() + 1);
                if (k < 1 || k > arity) {
                    pos = start;
                    fail("variable " + name + " out of range for arity " +
                         std::to_string(arity));
                }
                return var(k - 1);
            }
        }
        Fn fn;
        if (name == "sin")
            fn = Fn::Sin;
        else if (name == "cos")
            fn = Fn::Cos;
        else if (name == "exp")
            fn = Fn::Exp;
        else if (name == "log")
            fn = Fn::Log;
        else if (name == "bump")
            fn = Fn::Bump;
        else {
            pos = start;
            fail("unknown symbol '" + name + "'");
        }
        if (!eat('(')) fail("expected ( after " + name);
        ExprPtr arg = expression();
        if (!eat(')')) fail("expected )");
        return call(fn, std::move(arg));
    }
};

} // namespace

ExprPtr parse_expression(const std::string& text, int arity) {
    if (arity < 1) throw ConfigError("expression arity must be >= 1");
    Parser p{text, arity};
    return p.parse();
}

ExprPtr differentiate(const ExprPtr& e, int axis) {
    switch (e->kind) {
        case Kind::Num:
        case Kind::Eps: return num(0.0);
        case Kind::Var: return num(e->var == axis ? 1.0 : 0.0);
        case Kind::Add: return add(differentiate(e->a, axis), differentiate(e->b, axis));
        case Kind::Sub: return sub(differentiate(e->a, axis), differentiate(e->b, axis));
        case Kind::Neg: return sub(num(0.0), differentiate(e->a, axis));
        case Kind::Mul:
            return add(mul(differentiate(e->a, axis), e->b),
                       mul(e->a, differentiate(e->b, axis)));
        case Kind::Div:
            return divide(sub(mul(differentiate(e->a, axis), e->b),
                              mul(e->a, differentiate(e->b, axis))),
                          power(e->b, 2));
        case Kind::Pow:
            return mul(mul(num(static_cast<double>(e->exponent)),
                           power(e->a, e->exponent - 1)),
                       differentiate(e->a, axis));
        case Kind::Call: {
            ExprPtr inner = differentiate(e->a, axis);
            switch (e->fn) {
                case Fn::Sin: return mul(call(Fn::Cos, e->a), inner);
                case Fn::Cos: return sub(num(0.0), mul(call(Fn::Sin, e->a), inner));
                case Fn::Exp: return mul(call(Fn::Exp, e->a), inner);
                case Fn::Log: return divide(inner, e->a);
                case Fn::Bump: return mul(call(Fn::BumpD1, e->a), inner);
                case Fn::BumpD1: return mul(call(Fn::BumpD2, e->a), inner);
                case Fn::BumpD2:
                    throw CapabilityError("bump derivatives available to order 2 only");
            }
        }
    }
    throw CapabilityError("unhandled expression node");
}

double eval_expr(const ExprPtr& e, const Point& x, double eps) {
    switch (e->kind) {
        case Kind::Num: return e->num;
        case Kind::Eps: return eps;
        case Kind::Var: return x[static_cast<std::size_t>(e->var)];
        case Kind::Add: return eval_expr(e->a, x, eps) + eval_expr(e->b, x, eps);
        case Kind::Sub: return eval_expr(e->a, x, eps) - eval_expr(e->b, x, eps);
        case Kind::Neg: return -eval_expr(e->a, x, eps);
        case Kind::Mul: return eval_expr(e->a, x, eps) * eval_expr(e->b, x, eps);
        case Kind::Div: return eval_expr(e->a, x, eps) / eval_expr(e->b, x, eps);
        case Kind::Pow: return pow_int(eval_expr(e->a, x, eps), e->exponent);
        case Kind::Call: {
            double t = eval_expr(e->a, x, eps);
            switch (e->fn) {
                case Fn::Sin: return std::sin(t);
                case Fn::Cos: return std::cos(t);
                case Fn::Exp: return std::exp(t);
                case Fn::Log: return std::log(t);
                case Fn::Bump: return bump_val(t);
                case Fn::BumpD1: return bump_d1(t);
                case Fn::BumpD2: return bump_d2(t);
            }
        }
    }
    return 0.0;
}

std::string expr_to_string(const ExprPtr& e) {
    std::ostringstream os;
    switch (e->kind) {
        case Kind::Num: os << e->num; break;
        case Kind::Eps: os << "eps"; break;
        case Kind::Var: os << "x" << (e->var + 1); break;
        case Kind::Add:
            os << "(" << expr_to_string(e->a) << " + " << expr_to_string(e->b) << ")";
            break;
        case Kind::Sub:
            os << "(" << expr_to_string(e->a) << " - " << expr_to_string(e->b) << ")";
            break;
        case Kind::Neg: os << "(-" << expr_to_string(e->a) << ")"; break;
        case Kind::Mul:
            os << "(" << expr_to_string(e->a) << " * " << expr_to_string(e->b) << ")";
            break;
        case Kind::Div:
            os << "(" << expr_to_string(e->a) << " / " << expr_to_string(e->b) << ")";
            break;
        case Kind::Pow: os << expr_to_string(e->a) << "^" << e->exponent; break;
        case Kind::Call: {
            const char* names[] = {"sin", "cos", "exp", "log", "bump", "bump'", "bump''"};
            os << names[static_cast<int>(e->fn)] << "(" << expr_to_string(e->a) << ")";
            break;
        }
    }
    return os.str();
}

namespace {

struct CompiledDerivs {
    std::vector<ExprPtr> grads;
    std::vector<std::vector<ExprPtr>> hess;
};

std::shared_ptr<const CompiledDerivs> derive_all(const ExprPtr& e, int arity) {
    auto d = std::make_shared<CompiledDerivs>();
    for (int i = 0; i < arity; ++i) d->grads.push_back(differentiate(e, i));
    for (int i = 0; i < arity; ++i) {
        std::vector<ExprPtr> row;
        for (int j = 0; j < arity; ++j)
            row.push_back(differentiate(d->grads[static_cast<std::size_t>(i)], j));
        d->hess.push_back(std::move(row));
    }
    return d;
}

SmoothFunctionHandle handle_from(const ExprPtr& e,
                                 std::shared_ptr<const CompiledDerivs> d, int arity,
                                 double eps) {
    SmoothFunctionHandle h;
    h.arity = arity;
    h.max_order = 2;
    h.derivative = [e, d, eps](const MultiIndex& alpha, const Point& x) {
        int ord = order_of(alpha);
        if (ord == 0) return eval_expr(e, x, eps);
        int first = -1, second = -1;
        for (std::size_t i = 0; i < alpha.size(); ++i)
            for (int c = 0; c < alpha[i]; ++c)
                (first < 0 ? first : second) = static_cast<int>(i);
        if (ord == 1) return eval_expr(d->grads[static_cast<std::size_t>(first)], x, eps);
        if (ord == 2)
            return eval_expr(d->hess[static_cast<std::size_t>(first)]
                                    [static_cast<std::size_t>(second)],
                             x, eps);
        throw CapabilityError("expression handles carry two derivative orders");
    };
    return h;
}

} // namespace

SmoothFunctionHandle compile_handle(const ExprPtr& e, int arity, double eps) {
    return handle_from(e, derive_all(e, arity), arity, eps);
}

NetFunction compile_net(const std::string& text, int arity, const EpsilonGrid& grid) {
    ExprPtr e = parse_expression(text, arity);
    auto d = derive_all(e, arity);
    NetFunction u;
    u.grid = grid;
    u.dimension = arity;
    u.max_order = 2;
    u.member = [e, d, arity](double eps) { return handle_from(e, d, arity, eps); };
    return u;
}

} // namespace colombeau
