#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "geonoether/expr.hpp"

using namespace geonoether;

namespace {

const double kPi = 3.14159265358979323846;

// bounded random expression trees for the derivative property
struct RandomExprGen {
    std::mt19937 rng;
    CoordinateChart chart{std::vector<std::string>{"x", "y", "z"}};

    explicit RandomExprGen(unsigned seed) : rng(seed) {}

    Expr gen(int depth) {
        std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 11);
        switch (pick(rng)) {
            case 0: {
                std::uniform_real_distribution<double> c(-2.0, 2.0);
                return Expr::number(c(rng));
            }
            case 1:
            case 2: {
                std::uniform_int_distribution<int> v(0, 2);
                return Expr::coord(v(rng));
            }
            case 3: return gen(depth - 1) + gen(depth - 1);
            case 4: return gen(depth - 1) - gen(depth - 1);
            case 5: return gen(depth - 1) * gen(depth - 1);
            case 6: return gen(depth - 1) / (Expr::integer(2) + gen(depth - 1) * gen(depth - 1));
            case 7: return Expr::sin(gen(depth - 1));
            case 8: return Expr::cos(gen(depth - 1));
            case 9: return Expr::exp(Expr::number(0.3) * gen(depth - 1));
            case 10: {
                std::uniform_int_distribution<int> p(2, 3);
                return Expr::pow_int(gen(depth - 1), p(rng));
            }
            default: return Expr::sqrt(Expr::integer(4) + gen(depth - 1) * gen(depth - 1));
        }
    }
};

}  // namespace

TEST_CASE("parsing and evaluation of the worked examples") {
    CoordinateChart tp({"theta", "phi"});
    Expr e = parse_expression("cos(theta)*sin(phi)", tp);
    CHECK(e.eval({0.0, kPi / 2}) == doctest::Approx(1.0).epsilon(1e-15));

    CoordinateChart xy({"x", "y"});
    CHECK(parse_expression("x^2 + y", xy).eval({2.0, 3.0}) == doctest::Approx(7.0));

    CoordinateChart lam({"lambda"});
    CHECK(parse_expression("exp(3*lambda)", lam).eval({0.0}) == doctest::Approx(1.0));

    CHECK(parse_expression("t*x", xy).eval({2.0, 0.0}, 3.0) == doctest::Approx(6.0));
    CHECK(Expr().eval({1.0, 2.0}) == 0.0);
}

TEST_CASE("domain and usage errors") {
    CoordinateChart ph({"phi"});
    CHECK_THROWS_AS(parse_expression("1/sin(phi)", ph).eval({0.0}), EvalError);
    CHECK_THROWS_AS(parse_expression("ln(phi)", ph).eval({-1.0}), EvalError);
    CHECK_THROWS_AS(parse_expression("t + phi", ph).eval({1.0}), EvalError);  // missing time

    try {
        parse_expression("phi + unknown_name", ph);
        FAIL("expected a parse error");
    } catch (const ParseError& pe) {
        CHECK(std::string(pe.what()).find("unknown_name") != std::string::npos);
        CHECK(pe.position == 6);
    }
    CHECK_THROWS_AS(parse_expression("sin(phi", ph), ParseError);
    CHECK_THROWS_AS(parse_expression("phi ** 2", ph), ParseError);
}

TEST_CASE("exact rational literals and folding") {
    CoordinateChart x({"x"});
    Expr e = parse_expression("0.125", x);
    CHECK(e.exact());
    CHECK(e.rational_value() == Rational(1, 8));
    // folding keeps values: (2/3)*3 collapses to the exact 2
    Expr folded = parse_expression("2/3", x) * Expr::integer(3);
    CHECK(folded.exact());
    CHECK(folded.rational_value() == Rational(2));
    // identity elimination
    Expr id = parse_expression("x*1 + 0", x);
    CHECK(id.kind() == Expr::Kind::Coord);
    // division by a syntactic zero stays an eval-time error
    CHECK_THROWS_AS(parse_expression("1/(x - x + 0)", x).eval({2.0}), EvalError);
}

TEST_CASE("derivatives of the worked examples") {
    CoordinateChart ph({"phi"});
    Expr d = parse_expression("sin(phi)", ph).diff_coord(0);
    for (double v : {0.2, 0.9, 1.7})
        CHECK(d.eval({v}) == doctest::Approx(std::cos(v)).epsilon(1e-14));

    CoordinateChart xy({"x", "y"});
    Expr d2 = parse_expression("x^2 + y", xy).diff_coord(0);
    CHECK(d2.eval({3.0, 1.0}) == doctest::Approx(6.0));

    CoordinateChart lam({"lambda"});
    Expr d3 = parse_expression("exp(3*lambda)", lam).diff_coord(0);
    double h = 1e-5, x0 = 0.3;
    Expr f = parse_expression("exp(3*lambda)", lam);
    double fd = (f.eval({x0 + h}) - f.eval({x0 - h})) / (2 * h);
    CHECK(std::fabs(d3.eval({x0}) - fd) < 1e-6);
}

TEST_CASE("derivative matches central differences on 1000 random cases") {
    RandomExprGen gen(20240601);
    std::uniform_real_distribution<double> pt(-1.2, 1.2);
    std::uniform_int_distribution<int> var(0, 2);
    const double h = 1e-5;
    int done = 0;
    while (done < 1000) {
        Expr e = gen.gen(4);
        int v = var(gen.rng);
        std::vector<double> x = {pt(gen.rng), pt(gen.rng), pt(gen.rng)};
        try {
            double val = e.eval(x);
            std::vector<double> xp = x, xm = x;
            xp[v] += h;
            xm[v] -= h;
            double fd = (e.eval(xp) - e.eval(xm)) / (2 * h);
            if (!std::isfinite(fd) || std::fabs(val) > 1e2 || std::fabs(fd) > 1e2) continue;
            double curv = std::fabs(e.eval(xp) - 2 * val + e.eval(xm)) / (h * h);
            if (curv > 1e3) continue;  // keep the generator in the smooth regime
            double sym = e.diff_coord(v).eval(x);
            CHECK(std::fabs(sym - fd) <= 1e-6 * (1.0 + std::fabs(val)));
            ++done;
        } catch (const EvalError&) {
            continue;  // outside the domain; draw another
        }
    }
}

TEST_CASE("print/parse round trip is evaluation-equivalent") {
    RandomExprGen gen(77);
    std::uniform_real_distribution<double> pt(-1.0, 1.0);
    int done = 0;
    while (done < 30) {
        Expr e = gen.gen(4);
        std::string text = e.str(gen.chart);
        Expr back = parse_expression(text, gen.chart);
        int agreed = 0;
        for (int k = 0; k < 100; ++k) {
            std::vector<double> x = {pt(gen.rng), pt(gen.rng), pt(gen.rng)};
            double a, b;
            try {
                a = e.eval(x);
                b = back.eval(x);
            } catch (const EvalError&) {
                continue;
            }
            CHECK(std::fabs(a - b) <= 1e-12 * (1.0 + std::fabs(a)));
            ++agreed;
        }
        if (agreed > 50) ++done;
    }
}

TEST_CASE("differentiation is linear") {
    RandomExprGen gen(99);
    std::uniform_real_distribution<double> pt(-1.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
        Expr e1 = gen.gen(3), e2 = gen.gen(3);
        double a = 1.75;
        Expr combo = Expr::number(a) * e1 + e2;
        Expr d_combo = combo.diff_coord(0);
        Expr d_sep = Expr::number(a) * e1.diff_coord(0) + e2.diff_coord(0);
        for (int k = 0; k < 5; ++k) {
            std::vector<double> x = {pt(gen.rng), pt(gen.rng), pt(gen.rng)};
            try {
                double lhs = d_combo.eval(x);
                double rhs = d_sep.eval(x);
                CHECK(std::fabs(lhs - rhs) <= 1e-10 * (1.0 + std::fabs(lhs)));
            } catch (const EvalError&) {
            }
        }
    }
}

TEST_CASE("substitution composes expressions") {
    CoordinateChart x({"x"});
    // I(t) along x = a + b t: substitute and differentiate in t
    Expr a = Expr::number(0.7), b = Expr::number(0.3);
    Expr sol = a + b * Expr::time_var();
    Expr I = Expr::pow_int(Expr::time_var(), 2) * Expr::number(0.5 * 0.3 * 0.3) -
             Expr::time_var() * Expr::coord(0) * b + Expr::number(Rational(1, 2)) *
             Expr::pow_int(Expr::coord(0), 2);
    Expr along = I.substitute_coord(0, sol);
    Expr dI = along.diff_time();
    for (double t : {0.0, 1.3, 4.0})
        CHECK(std::fabs(dI.eval({0.0}, t)) < 1e-14);
}

TEST_CASE("time derivative and negative integer powers") {
    CoordinateChart x({"x"});
    Expr e = parse_expression("x^(-3)", x);
    CHECK(e.eval({2.0}) == doctest::Approx(0.125));
    CHECK(e.diff_coord(0).eval({2.0}) == doctest::Approx(-3.0 / 16));
    Expr f = parse_expression("exp(2*t)*x", x);
    CHECK(f.diff_time().eval({1.0}, 0.0) == doctest::Approx(2.0));
    CHECK(parse_expression("-x^2", x).eval({2.0}) == doctest::Approx(-4.0));
}

#include <thread>

TEST_CASE("expressions evaluate and differentiate concurrently") {
    CoordinateChart ch({"x", "y"});
    Expr e = parse_expression("sin(x*y) + exp(0.5*x)/(2 + y^2)", ch);
    std::vector<std::thread> workers;
    std::vector<double> results(8, 0.0);
    for (int w = 0; w < 8; ++w)
        workers.emplace_back([&, w] {
            double acc = 0;
            for (int k = 0; k < 2000; ++k) {
                std::vector<double> p = {0.01 * k, 0.5};
                acc += e.eval(p) + e.diff_coord(0).eval(p);
            }
            results[w] = acc;
        });
    for (auto& t : workers) t.join();
    for (int w = 1; w < 8; ++w) CHECK(results[w] == results[0]);
}
