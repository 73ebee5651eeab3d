#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "geonoether/rational.hpp"

namespace geonoether {

class Expr;

// Ordered coordinate names plus optional excluded-locus expressions: a point
// is considered off-chart when any excluded expression is smaller in modulus
// than the caller's margin.
struct CoordinateChart {
    std::vector<std::string> names;
    std::vector<Expr> excluded;

    CoordinateChart() = default;
    explicit CoordinateChart(std::vector<std::string> coordinate_names);

    int dim() const { return static_cast<int>(names.size()); }
    int index_of(const std::string& name) const;  // -1 when absent
};

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what), position(pos) {}
};

struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Immutable scalar expression over chart coordinates and the reserved time
// variable `t`. Construction folds numeric subtrees (exact rational
// arithmetic where both operands are exact) and drops additive/multiplicative
// identities; no other rewriting happens.
class Expr {
public:
    enum class Kind : unsigned char {
        Number, Coord, Time,
        Neg, Add, Sub, Mul, Div, PowInt, Pow,
        Sin, Cos, Tan, Sinh, Cosh, Exp, Ln, Sqrt
    };

    Expr();  // the exact zero constant

    static Expr number(double v);
    static Expr number(const Rational& r);
    static Expr integer(long long v);
    static Expr coord(int index);
    static Expr time_var();

    static Expr pow_int(const Expr& base, long long exponent);
    static Expr pow(const Expr& base, const Expr& exponent);
    static Expr sin(const Expr& a);
    static Expr cos(const Expr& a);
    static Expr tan(const Expr& a);
    static Expr sinh(const Expr& a);
    static Expr cosh(const Expr& a);
    static Expr exp(const Expr& a);
    static Expr ln(const Expr& a);
    static Expr sqrt(const Expr& a);

    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator/(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a);

    Kind kind() const;
    bool is_number() const;
    bool is_zero() const;
    bool is_one() const;
    bool exact() const;              // number node carrying an exact rational
    double number_value() const;     // Number nodes only
    Rational rational_value() const; // exact Number nodes only
    long long int_exponent() const;  // PowInt nodes only

    bool uses_time() const;
    bool depends_on_coord(int index) const;

    // point must carry at least as many entries as the largest coordinate
    // index in the tree; t may be null for time-free expressions.
    double eval(const double* point, int n, const double* t) const;
    double eval(const std::vector<double>& point, std::optional<double> t = std::nullopt) const;

    Expr diff_coord(int index) const;
    Expr diff_time() const;
    Expr substitute_coord(int index, const Expr& replacement) const;
    Expr substitute_time(const Expr& replacement) const;

    std::string str() const;                             // coordinates as x0, x1, ...
    std::string str(const CoordinateChart& chart) const; // coordinates by name

    struct Node;  // definition internal to expr.cpp

private:
    std::shared_ptr<const Node> n_;
    explicit Expr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    static Expr make(Node&& node);
    friend struct ExprDetailAccess;
};

// Infix grammar (see README for the EBNF): + - * / ^ with standard
// precedence, f(x) function calls, parentheses, `t` reserved for time,
// `pi` as a built-in constant. Errors carry the offending position.
Expr parse_expression(const std::string& text, const CoordinateChart& chart);

}  // namespace geonoether
