#ifndef COLOMBEAU_EXPR_HPP
#define COLOMBEAU_EXPR_HPP

#include <memory>
#include <string>

#include "colombeau/net_core.hpp"

namespace colombeau {

// closed-vocabulary expression tree: literals, x1..xn, eps, + - * / ^ and the
// functions sin, cos, exp, log, bump
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// throws ParseError with the offending position; variables are x1..x{arity}
ExprPtr parse_expression(const std::string& text, int arity);

// exact symbolic partial along `axis` (0-based)
ExprPtr differentiate(const ExprPtr& e, int axis);

double eval_expr(const ExprPtr& e, const Point& x, double eps);

std::string expr_to_string(const ExprPtr& e);

// handle with symbolically derived partials to order 2, eps bound at call time
SmoothFunctionHandle compile_handle(const ExprPtr& e, int arity, double eps);

// eps-parametrized net whose members share one symbolic differentiation pass
NetFunction compile_net(const std::string& text, int arity, const EpsilonGrid& grid);

} // namespace colombeau

#endif
