#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "colombeau/expr.hpp"

using namespace colombeau;

TEST_CASE("parsing and evaluation") {
    SUBCASE("polynomials") {
        ExprPtr e = parse_expression("x1^2 + x2^2", 2);
        CHECK(eval_expr(e, {3.0, 4.0}, 0.5) == 25.0);
        CHECK(eval_expr(parse_expression("2*x1 - x2/4", 2), {1.0, 8.0}, 0.5) == 0.0);
    }
    SUBCASE("precedence and unary minus") {
        CHECK(eval_expr(parse_expression("-x1^2", 1), {3.0}, 0.5) == -9.0);
        CHECK(eval_expr(parse_expression("2 + 3 * 4", 1), {0.0}, 0.5) == 14.0);
        CHECK(eval_expr(parse_expression("(2 + 3) * 4", 1), {0.0}, 0.5) == 20.0);
        CHECK(eval_expr(parse_expression("2 - 3 - 4", 1), {0.0}, 0.5) == -5.0);
    }
    SUBCASE("eps is a parameter, not a variable") {
        ExprPtr e = parse_expression("eps^5 * sin(x1)", 1);
        double eps = 0.25;
        CHECK(eval_expr(e, {1.0}, eps) ==
              doctest::Approx(std::pow(eps, 5) * std::sin(1.0)).epsilon(1e-15));
    }
    SUBCASE("function vocabulary") {
        CHECK(eval_expr(parse_expression("exp(log(x1))", 1), {2.5}, 0.5) ==
              doctest::Approx(2.5).epsilon(1e-15));
        CHECK(eval_expr(parse_expression("sin(x1)^2 + cos(x1)^2", 1), {0.7}, 0.5) ==
              doctest::Approx(1.0).epsilon(1e-15));
        // bump(0) = 1 and bump vanishes outside (-1, 1)
        CHECK(eval_expr(parse_expression("bump(x1)", 1), {0.0}, 0.5) == 1.0);
        CHECK(eval_expr(parse_expression("bump(x1)", 1), {1.5}, 0.5) == 0.0);
    }
}

TEST_CASE("parse errors carry positions") {
    SUBCASE("unknown symbols") {
        try {
            parse_expression("x1 + gamma(x1)", 1);
            FAIL("expected a parse error");
        } catch (const ParseError& err) {
            CHECK(err.position == 5);
        }
    }
    SUBCASE("out-of-range variables") {
        CHECK_THROWS_AS(parse_expression("x3 + 1", 2), ParseError);
        CHECK_THROWS_AS(parse_expression("x0", 2), ParseError);
    }
    SUBCASE("malformed syntax") {
        CHECK_THROWS_AS(parse_expression("x1 + ", 1), ParseError);
        CHECK_THROWS_AS(parse_expression("(x1", 1), ParseError);
        CHECK_THROWS_AS(parse_expression("x1 ^ x2", 2), ParseError);  // non-integer power
        CHECK_THROWS_AS(parse_expression("x1 ^ -2", 1), ParseError);
        CHECK_THROWS_AS(parse_expression("", 1), ParseError);
        CHECK_THROWS_AS(parse_expression("sin x1", 1), ParseError);
    }
}

TEST_CASE("symbolic differentiation") {
    SUBCASE("polynomial gradient") {
        ExprPtr e = parse_expression("x1^2 + x2^2", 2);
        ExprPtr d1 = differentiate(e, 0);
        CHECK(eval_expr(d1, {3.0, 4.0}, 0.5) == 6.0);
        CHECK(eval_expr(differentiate(e, 1), {3.0, 4.0}, 0.5) == 8.0);
        CHECK(eval_expr(differentiate(d1, 0), {3.0, 4.0}, 0.5) == 2.0);
    }
    SUBCASE("chain, product, and quotient rules") {
        double x = 0.6, eps = 0.5;
        auto d = [&](const char* s) {
            return eval_expr(differentiate(parse_expression(s, 1), 0), {x}, eps);
        };
        CHECK(d("sin(x1^2)") == doctest::Approx(2.0 * x * std::cos(x * x)).epsilon(1e-14));
        CHECK(d("x1 * exp(x1)") == doctest::Approx((1.0 + x) * std::exp(x)).epsilon(1e-14));
        CHECK(d("sin(x1) / x1") ==
              doctest::Approx((x * std::cos(x) - std::sin(x)) / (x * x)).epsilon(1e-14));
        CHECK(d("log(x1)") == doctest::Approx(1.0 / x).epsilon(1e-14));
    }
    SUBCASE("bump derivatives agree with central differences") {
        ExprPtr e = parse_expression("bump(x1)", 1);
        ExprPtr d1 = differentiate(e, 0);
        ExprPtr d2 = differentiate(d1, 0);
        double h = 1e-6;
        for (double x : {0.0, 0.3, -0.55, 0.8}) {
            double fd1 = (eval_expr(e, {x + h}, 0.5) - eval_expr(e, {x - h}, 0.5)) / (2 * h);
            CHECK(eval_expr(d1, {x}, 0.5) == doctest::Approx(fd1).epsilon(1e-6));
            double fd2 = (eval_expr(d1, {x + h}, 0.5) - eval_expr(d1, {x - h}, 0.5)) / (2 * h);
            CHECK(eval_expr(d2, {x}, 0.5) == doctest::Approx(fd2).epsilon(1e-5));
        }
        CHECK_THROWS_AS(differentiate(d2, 0), CapabilityError);
    }
    SUBCASE("round trip through the printer") {
        ExprPtr e = parse_expression("eps * sin(x1) + x2^3", 2);
        ExprPtr again = parse_expression(expr_to_string(e), 2);
        CHECK(eval_expr(again, {0.4, 1.5}, 0.125) ==
              doctest::Approx(eval_expr(e, {0.4, 1.5}, 0.125)).epsilon(1e-15));
    }
}

TEST_CASE("compiled nets") {
    EpsilonGrid grid = default_grid();
    NetFunction u = compile_net("eps^5 * sin(x1) + x2", 2, grid);
    CHECK(u.dimension == 2);
    double eps = grid.values[2];
    Point p{0.3, 0.8};
    CHECK(eval_net(u, eps, p) ==
          doctest::Approx(pow_int(eps, 5) * std::sin(0.3) + 0.8).epsilon(1e-15));
    CHECK(partial(u, eps, {1, 0}, p) ==
          doctest::Approx(pow_int(eps, 5) * std::cos(0.3)).epsilon(1e-15));
    CHECK(partial(u, eps, {0, 1}, p) == 1.0);
    CHECK(partial(u, eps, {2, 0}, p) ==
          doctest::Approx(-pow_int(eps, 5) * std::sin(0.3)).epsilon(1e-15));
    CHECK_THROWS_AS(eval_net(u, 0.3, p), LookupError);
    CHECK_THROWS_AS(compile_net("x5", 2, grid), ParseError);
}
