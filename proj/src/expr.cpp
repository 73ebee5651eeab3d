#include "geonoether/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <sstream>

namespace geonoether {

struct Expr::Node {
    Kind kind = Kind::Number;
    // Number payload
    bool exact = true;
    Rational rat = 0;
    double num = 0.0;
    // Coord payload
    int coord = -1;
    // PowInt payload
    long long ipow = 0;
    // children (null when unused)
    std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

double checked(double v, const char* what) {
    if (!std::isfinite(v)) throw EvalError(std::string("non-finite value in ") + what);
    return v;
}

}  // namespace

struct ExprDetailAccess {
    static Expr wrap(NodePtr n) { return Expr(std::move(n)); }
    static const NodePtr& ptr(const Expr& e) { return e.n_; }
};

namespace {
Expr wrap(NodePtr n) { return ExprDetailAccess::wrap(std::move(n)); }
Expr child_a(const Expr& e) { return wrap(ExprDetailAccess::ptr(e)->a); }
Expr child_b(const Expr& e) { return wrap(ExprDetailAccess::ptr(e)->b); }
}  // namespace

CoordinateChart::CoordinateChart(std::vector<std::string> coordinate_names)
    : names(std::move(coordinate_names)) {
    for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = i + 1; j < names.size(); ++j)
            if (names[i] == names[j])
                throw std::invalid_argument("duplicate coordinate name: " + names[i]);
    if (names.empty()) throw std::invalid_argument("chart needs at least one coordinate");
}

int CoordinateChart::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    return -1;
}

Expr Expr::make(Node&& node) {
    return Expr(std::make_shared<const Node>(std::move(node)));
}

Expr::Expr() {
    static const NodePtr zero = [] {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Number;
        n->exact = true;
        n->rat = 0;
        n->num = 0.0;
        return NodePtr(n);
    }();
    n_ = zero;
}

Expr Expr::number(double v) {
    Node n;
    n.kind = Kind::Number;
    n.exact = false;
    n.num = v;
    return make(std::move(n));
}

Expr Expr::number(const Rational& r) {
    Node n;
    n.kind = Kind::Number;
    n.exact = true;
    n.rat = r;
    n.num = to_double(r);
    return make(std::move(n));
}

Expr Expr::integer(long long v) { return number(Rational(v)); }

Expr Expr::coord(int index) {
    if (index < 0) throw std::invalid_argument("negative coordinate index");
    Node n;
    n.kind = Kind::Coord;
    n.coord = index;
    return make(std::move(n));
}

Expr Expr::time_var() {
    Node n;
    n.kind = Kind::Time;
    return make(std::move(n));
}

Expr::Kind Expr::kind() const { return n_->kind; }
bool Expr::is_number() const { return n_->kind == Kind::Number; }
bool Expr::is_zero() const { return is_number() && (n_->exact ? n_->rat == 0 : n_->num == 0.0); }
bool Expr::is_one() const { return is_number() && (n_->exact ? n_->rat == 1 : n_->num == 1.0); }
bool Expr::exact() const { return is_number() && n_->exact; }
double Expr::number_value() const { return n_->num; }
Rational Expr::rational_value() const { return n_->rat; }
long long Expr::int_exponent() const { return n_->ipow; }

namespace {

bool node_uses_time(const Expr::Node& n) {
    if (n.kind == Expr::Kind::Time) return true;
    if (n.a && node_uses_time(*n.a)) return true;
    return n.b && node_uses_time(*n.b);
}

bool node_depends_on(const Expr::Node& n, int index) {
    if (n.kind == Expr::Kind::Coord) return n.coord == index;
    if (n.a && node_depends_on(*n.a, index)) return true;
    return n.b && node_depends_on(*n.b, index);
}

}  // namespace

bool Expr::uses_time() const { return node_uses_time(*n_); }
bool Expr::depends_on_coord(int index) const { return node_depends_on(*n_, index); }

// ---- construction with folding --------------------------------------------

Expr operator+(const Expr& a, const Expr& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_number() && b.is_number()) {
        if (a.exact() && b.exact()) return Expr::number(a.rational_value() + b.rational_value());
        return Expr::number(a.number_value() + b.number_value());
    }
    Expr::Node n;
    n.kind = Expr::Kind::Add;
    n.a = ExprDetailAccess::ptr(a);
    n.b = ExprDetailAccess::ptr(b);
    return Expr::make(std::move(n));
}

Expr operator-(const Expr& a, const Expr& b) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return -b;
    if (a.is_number() && b.is_number()) {
        if (a.exact() && b.exact()) return Expr::number(a.rational_value() - b.rational_value());
        return Expr::number(a.number_value() - b.number_value());
    }
    Expr::Node n;
    n.kind = Expr::Kind::Sub;
    n.a = ExprDetailAccess::ptr(a);
    n.b = ExprDetailAccess::ptr(b);
    return Expr::make(std::move(n));
}

Expr operator*(const Expr& a, const Expr& b) {
    if (a.is_zero() || b.is_zero()) return Expr();
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    if (a.is_number() && b.is_number()) {
        if (a.exact() && b.exact()) return Expr::number(a.rational_value() * b.rational_value());
        return Expr::number(a.number_value() * b.number_value());
    }
    Expr::Node n;
    n.kind = Expr::Kind::Mul;
    n.a = ExprDetailAccess::ptr(a);
    n.b = ExprDetailAccess::ptr(b);
    return Expr::make(std::move(n));
}

Expr operator/(const Expr& a, const Expr& b) {
    if (b.is_one()) return a;
    if (a.is_number() && b.is_number() && !b.is_zero()) {
        if (a.exact() && b.exact()) return Expr::number(a.rational_value() / b.rational_value());
        return Expr::number(a.number_value() / b.number_value());
    }
    Expr::Node n;
    n.kind = Expr::Kind::Div;
    n.a = ExprDetailAccess::ptr(a);
    n.b = ExprDetailAccess::ptr(b);
    return Expr::make(std::move(n));
}

Expr operator-(const Expr& a) {
    if (a.is_number()) {
        if (a.exact()) return Expr::number(Rational(-a.rational_value()));
        return Expr::number(-a.number_value());
    }
    if (a.kind() == Expr::Kind::Neg) return child_a(a);
    Expr::Node n;
    n.kind = Expr::Kind::Neg;
    n.a = ExprDetailAccess::ptr(a);
    return Expr::make(std::move(n));
}

Expr Expr::pow_int(const Expr& base, long long exponent) {
    if (exponent == 0) return integer(1);
    if (exponent == 1) return base;
    if (base.is_number() && base.exact() && std::llabs(exponent) <= 64 &&
        !(base.is_zero() && exponent < 0)) {
        return number(rational_pow(base.rational_value(), exponent));
    }
    if (base.is_number() && !base.exact())
        return number(std::pow(base.number_value(), static_cast<double>(exponent)));
    Node n;
    n.kind = Kind::PowInt;
    n.ipow = exponent;
    n.a = ExprDetailAccess::ptr(base);
    return make(std::move(n));
}

Expr Expr::pow(const Expr& base, const Expr& exponent) {
    if (exponent.is_number() && exponent.exact()) {
        const Rational r = exponent.rational_value();
        if (denominator(r) == 1) {
            BigInt num = numerator(r);
            if (num >= -64 && num <= 64) return pow_int(base, num.convert_to<long long>());
        }
    }
    if (base.is_number() && exponent.is_number())
        return number(std::pow(base.number_value(), exponent.number_value()));
    Node n;
    n.kind = Kind::Pow;
    n.a = ExprDetailAccess::ptr(base);
    n.b = ExprDetailAccess::ptr(exponent);
    return make(std::move(n));
}

#define GEONOETHER_UNARY(NAME, KIND, FN)                        \
    Expr Expr::NAME(const Expr& a) {                            \
        if (a.is_number()) return number(FN(a.number_value())); \
        Node n;                                                 \
        n.kind = Kind::KIND;                                    \
        n.a = ExprDetailAccess::ptr(a);                         \
        return make(std::move(n));                              \
    }

GEONOETHER_UNARY(sin, Sin, std::sin)
GEONOETHER_UNARY(cos, Cos, std::cos)
GEONOETHER_UNARY(tan, Tan, std::tan)
GEONOETHER_UNARY(sinh, Sinh, std::sinh)
GEONOETHER_UNARY(cosh, Cosh, std::cosh)
GEONOETHER_UNARY(exp, Exp, std::exp)
#undef GEONOETHER_UNARY

Expr Expr::ln(const Expr& a) {
    if (a.is_number()) {
        if (a.number_value() <= 0.0) throw EvalError("ln of non-positive constant");
        return number(std::log(a.number_value()));
    }
    Node n;
    n.kind = Kind::Ln;
    n.a = ExprDetailAccess::ptr(a);
    return make(std::move(n));
}

Expr Expr::sqrt(const Expr& a) {
    if (a.is_number()) {
        if (a.number_value() < 0.0) throw EvalError("sqrt of negative constant");
        return number(std::sqrt(a.number_value()));
    }
    Node n;
    n.kind = Kind::Sqrt;
    n.a = ExprDetailAccess::ptr(a);
    return make(std::move(n));
}

// ---- evaluation ------------------------------------------------------------

namespace {

double eval_node(const Expr::Node& nd, const double* point, int n, const double* t) {
    using K = Expr::Kind;
    switch (nd.kind) {
        case K::Number: return nd.num;
        case K::Coord:
            if (nd.coord >= n) throw EvalError("point has too few coordinates");
            return point[nd.coord];
        case K::Time:
            if (!t) throw EvalError("expression references t but no time was supplied");
            return *t;
        case K::Neg: return -eval_node(*nd.a, point, n, t);
        case K::Add: return checked(eval_node(*nd.a, point, n, t) + eval_node(*nd.b, point, n, t), "+");
        case K::Sub: return checked(eval_node(*nd.a, point, n, t) - eval_node(*nd.b, point, n, t), "-");
        case K::Mul: return checked(eval_node(*nd.a, point, n, t) * eval_node(*nd.b, point, n, t), "*");
        case K::Div: {
            double den = eval_node(*nd.b, point, n, t);
            if (den == 0.0) throw EvalError("division by zero");
            return checked(eval_node(*nd.a, point, n, t) / den, "/");
        }
        case K::PowInt: {
            double base = eval_node(*nd.a, point, n, t);
            if (base == 0.0 && nd.ipow < 0) throw EvalError("negative power of zero");
            return checked(std::pow(base, static_cast<double>(nd.ipow)), "^");
        }
        case K::Pow: {
            double base = eval_node(*nd.a, point, n, t);
            double expo = eval_node(*nd.b, point, n, t);
            if (base < 0.0) throw EvalError("real power of negative base");
            if (base == 0.0 && expo <= 0.0) throw EvalError("zero base with non-positive exponent");
            return checked(std::pow(base, expo), "^");
        }
        case K::Sin: return std::sin(eval_node(*nd.a, point, n, t));
        case K::Cos: return std::cos(eval_node(*nd.a, point, n, t));
        case K::Tan: return checked(std::tan(eval_node(*nd.a, point, n, t)), "tan");
        case K::Sinh: return checked(std::sinh(eval_node(*nd.a, point, n, t)), "sinh");
        case K::Cosh: return checked(std::cosh(eval_node(*nd.a, point, n, t)), "cosh");
        case K::Exp: return checked(std::exp(eval_node(*nd.a, point, n, t)), "exp");
        case K::Ln: {
            double v = eval_node(*nd.a, point, n, t);
            if (v <= 0.0) throw EvalError("ln of non-positive value");
            return std::log(v);
        }
        case K::Sqrt: {
            double v = eval_node(*nd.a, point, n, t);
            if (v < 0.0) throw EvalError("sqrt of negative value");
            return std::sqrt(v);
        }
    }
    throw EvalError("corrupt expression node");
}

}  // namespace

double Expr::eval(const double* point, int n, const double* t) const {
    return eval_node(*n_, point, n, t);
}

double Expr::eval(const std::vector<double>& point, std::optional<double> t) const {
    const double* tp = t ? &*t : nullptr;
    return eval(point.data(), static_cast<int>(point.size()), tp);
}

// ---- differentiation -------------------------------------------------------

namespace {

struct DiffVar {
    bool time;
    int coord;
};

Expr diff(const Expr& e, const DiffVar& v) {
    using K = Expr::Kind;
    switch (e.kind()) {
        case K::Number: return Expr();
        case K::Coord:
            return (!v.time && ExprDetailAccess::ptr(e)->coord == v.coord) ? Expr::integer(1)
                                                                           : Expr();
        case K::Time: return v.time ? Expr::integer(1) : Expr();
        default: break;
    }
    Expr a = child_a(e);
    Expr b = ExprDetailAccess::ptr(e)->b ? child_b(e) : Expr();
    switch (e.kind()) {
        case K::Neg: return -diff(a, v);
        case K::Add: return diff(a, v) + diff(b, v);
        case K::Sub: return diff(a, v) - diff(b, v);
        case K::Mul: return diff(a, v) * b + a * diff(b, v);
        case K::Div: return (diff(a, v) * b - a * diff(b, v)) / (b * b);
        case K::PowInt: {
            long long k = e.int_exponent();
            return Expr::integer(k) * Expr::pow_int(a, k - 1) * diff(a, v);
        }
        case K::Pow:
            return Expr::pow(a, b) * (diff(b, v) * Expr::ln(a) + b * diff(a, v) / a);
        case K::Sin: return Expr::cos(a) * diff(a, v);
        case K::Cos: return -(Expr::sin(a) * diff(a, v));
        case K::Tan: return (Expr::integer(1) + Expr::pow_int(Expr::tan(a), 2)) * diff(a, v);
        case K::Sinh: return Expr::cosh(a) * diff(a, v);
        case K::Cosh: return Expr::sinh(a) * diff(a, v);
        case K::Exp: return Expr::exp(a) * diff(a, v);
        case K::Ln: return diff(a, v) / a;
        case K::Sqrt: return diff(a, v) / (Expr::integer(2) * Expr::sqrt(a));
        default: return Expr();
    }
}

}  // namespace

Expr Expr::diff_coord(int index) const { return diff(*this, DiffVar{false, index}); }
Expr Expr::diff_time() const { return diff(*this, DiffVar{true, -1}); }

// ---- substitution ----------------------------------------------------------

namespace {

Expr subst(const Expr& e, bool time, int index, const Expr& r) {
    using K = Expr::Kind;
    switch (e.kind()) {
        case K::Number: return e;
        case K::Coord: return (!time && ExprDetailAccess::ptr(e)->coord == index) ? r : e;
        case K::Time: return time ? r : e;
        default: break;
    }
    Expr a = subst(child_a(e), time, index, r);
    switch (e.kind()) {
        case K::Neg: return -a;
        case K::Add: return a + subst(child_b(e), time, index, r);
        case K::Sub: return a - subst(child_b(e), time, index, r);
        case K::Mul: return a * subst(child_b(e), time, index, r);
        case K::Div: return a / subst(child_b(e), time, index, r);
        case K::PowInt: return Expr::pow_int(a, e.int_exponent());
        case K::Pow: return Expr::pow(a, subst(child_b(e), time, index, r));
        case K::Sin: return Expr::sin(a);
        case K::Cos: return Expr::cos(a);
        case K::Tan: return Expr::tan(a);
        case K::Sinh: return Expr::sinh(a);
        case K::Cosh: return Expr::cosh(a);
        case K::Exp: return Expr::exp(a);
        case K::Ln: return Expr::ln(a);
        case K::Sqrt: return Expr::sqrt(a);
        default: return e;
    }
}

}  // namespace

Expr Expr::substitute_coord(int index, const Expr& r) const { return subst(*this, false, index, r); }
Expr Expr::substitute_time(const Expr& r) const { return subst(*this, true, -1, r); }

// ---- printing --------------------------------------------------------------

namespace {

int precedence(Expr::Kind k) {
    using K = Expr::Kind;
    switch (k) {
        case K::Add: case K::Sub: return 1;
        case K::Neg: return 2;
        case K::Mul: case K::Div: return 3;
        case K::PowInt: case K::Pow: return 4;
        default: return 5;
    }
}

std::string number_str(const Expr& e) {
    if (e.exact()) {
        const Rational r = e.rational_value();
        if (denominator(r) == 1) return numerator(r).str();
        return numerator(r).str() + "/" + denominator(r).str();
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", e.number_value());
    return buf;
}

void print(std::ostringstream& os, const Expr& e, const std::vector<std::string>* names);

void print_child(std::ostringstream& os, const Expr& e, int need,
                 const std::vector<std::string>* names) {
    bool parens = precedence(e.kind()) < need;
    if (e.is_number()) {
        std::string txt = number_str(e);
        if (need > 1 && (txt.find('/') != std::string::npos || txt[0] == '-')) parens = true;
    }
    if (parens) os << '(';
    print(os, e, names);
    if (parens) os << ')';
}

void print(std::ostringstream& os, const Expr& e, const std::vector<std::string>* names) {
    using K = Expr::Kind;
    switch (e.kind()) {
        case K::Number: os << number_str(e); return;
        case K::Coord: {
            int i = ExprDetailAccess::ptr(e)->coord;
            if (names && i < static_cast<int>(names->size())) os << (*names)[i];
            else os << "x" << i;
            return;
        }
        case K::Time: os << 't'; return;
        default: break;
    }
    Expr a = child_a(e);
    switch (e.kind()) {
        case K::Neg: os << '-'; print_child(os, a, 3, names); return;
        case K::Add: print_child(os, a, 1, names); os << " + "; print_child(os, child_b(e), 2, names); return;
        case K::Sub: print_child(os, a, 1, names); os << " - "; print_child(os, child_b(e), 2, names); return;
        case K::Mul: print_child(os, a, 3, names); os << "*"; print_child(os, child_b(e), 3, names); return;
        case K::Div: print_child(os, a, 3, names); os << "/"; print_child(os, child_b(e), 4, names); return;
        case K::PowInt:
            print_child(os, a, 5, names);
            if (e.int_exponent() < 0) os << "^(" << e.int_exponent() << ")";
            else os << "^" << e.int_exponent();
            return;
        case K::Pow: print_child(os, a, 5, names); os << "^"; print_child(os, child_b(e), 5, names); return;
        case K::Sin: os << "sin("; print(os, a, names); os << ')'; return;
        case K::Cos: os << "cos("; print(os, a, names); os << ')'; return;
        case K::Tan: os << "tan("; print(os, a, names); os << ')'; return;
        case K::Sinh: os << "sinh("; print(os, a, names); os << ')'; return;
        case K::Cosh: os << "cosh("; print(os, a, names); os << ')'; return;
        case K::Exp: os << "exp("; print(os, a, names); os << ')'; return;
        case K::Ln: os << "ln("; print(os, a, names); os << ')'; return;
        case K::Sqrt: os << "sqrt("; print(os, a, names); os << ')'; return;
        default: return;
    }
}

}  // namespace

std::string Expr::str() const {
    std::ostringstream os;
    print(os, *this, nullptr);
    return os.str();
}

std::string Expr::str(const CoordinateChart& chart) const {
    std::ostringstream os;
    print(os, *this, &chart.names);
    return os.str();
}

// ---- parser ----------------------------------------------------------------

namespace {

struct Parser {
    const std::string& s;
    const CoordinateChart& chart;
    std::size_t pos = 0;

    Parser(const std::string& text, const CoordinateChart& c) : s(text), chart(c) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool peek(char c) {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }

    bool accept(char c) {
        if (peek(c)) { ++pos; return true; }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos); }

    Expr parse() {
        Expr e = expr();
        skip_ws();
        if (pos != s.size()) fail("unexpected trailing input");
        return e;
    }

    Expr expr() {
        Expr e = term();
        for (;;) {
            if (accept('+')) e = e + term();
            else if (accept('-')) e = e - term();
            else return e;
        }
    }

    Expr term() {
        Expr e = unary();
        for (;;) {
            if (accept('*')) e = e * unary();
            else if (accept('/')) e = e / unary();
            else return e;
        }
    }

    Expr unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    Expr power() {
        Expr base = primary();
        if (accept('^')) return Expr::pow(base, unary());
        return base;
    }

    Expr primary() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of input");
        char c = s[pos];
        if (c == '(') {
            ++pos;
            Expr e = expr();
            if (!accept(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        fail(std::string("unexpected character '") + c + "'");
    }

    Expr number() {
        std::size_t start = pos;
        std::string mantissa;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            mantissa += s[pos++];
        std::size_t frac_digits = 0;
        if (pos < s.size() && s[pos] == '.') {
            ++pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                mantissa += s[pos++];
                ++frac_digits;
            }
        }
        if (mantissa.empty()) fail("malformed number");
        long long exp10 = 0;
        if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
            std::size_t save = pos;
            ++pos;
            bool neg = false;
            if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) { neg = s[pos] == '-'; ++pos; }
            if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                long long v = 0;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])) && v < 1000)
                    v = v * 10 + (s[pos++] - '0');
                exp10 = neg ? -v : v;
            } else {
                pos = save;  // not an exponent suffix
            }
        }
        long long shift = exp10 - static_cast<long long>(frac_digits);
        if (std::llabs(exp10) <= 30) {
            // finite decimals become exact rationals; strip leading zeros so
            // the bignum constructor does not read an octal prefix
            std::size_t nz = mantissa.find_first_not_of('0');
            std::string digits = (nz == std::string::npos) ? "0" : mantissa.substr(nz);
            Rational r{BigInt(digits)};
            if (shift > 0) r *= rational_pow(Rational(10), shift);
            if (shift < 0) r /= rational_pow(Rational(10), -shift);
            return Expr::number(r);
        }
        return Expr::number(std::strtod(s.c_str() + start, nullptr));
    }

    Expr identifier() {
        std::size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        std::string name = s.substr(start, pos - start);
        if (peek('(')) {
            ++pos;
            Expr arg = expr();
            if (!accept(')')) fail("expected ')' after function argument");
            if (name == "sin") return Expr::sin(arg);
            if (name == "cos") return Expr::cos(arg);
            if (name == "tan") return Expr::tan(arg);
            if (name == "sinh") return Expr::sinh(arg);
            if (name == "cosh") return Expr::cosh(arg);
            if (name == "exp") return Expr::exp(arg);
            if (name == "ln" || name == "log") return Expr::ln(arg);
            if (name == "sqrt") return Expr::sqrt(arg);
            pos = start;
            fail("unknown function '" + name + "'");
        }
        if (name == "t") return Expr::time_var();
        if (name == "pi") return Expr::number(3.14159265358979323846);
        int idx = chart.index_of(name);
        if (idx < 0) {
            pos = start;
            fail("unknown identifier '" + name + "'");
        }
        return Expr::coord(idx);
    }
};

}  // namespace

Expr parse_expression(const std::string& text, const CoordinateChart& chart) {
    Parser p(text, chart);
    return p.parse();
}

}  // namespace geonoether
