#ifndef COLOMBEAU_NET_CORE_HPP
#define COLOMBEAU_NET_CORE_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "colombeau/errors.hpp"

namespace colombeau {

using Point = std::vector<double>;
using MultiIndex = std::vector<int>;

inline int order_of(const MultiIndex& alpha) {
    int s = 0;
    for (int a : alpha) s += a;
    return s;
}

MultiIndex unit_index(int arity, int axis);
MultiIndex zero_index(int arity);

// all multi-indices of arity n with |alpha| <= max_total, order 0 first
std::vector<MultiIndex> multi_indices_up_to(int arity, int max_total);

// Euclidean norm with a fixed accumulation order. All radial evaluation in
// the library routes through this so that identities like v(|x|) == u(x)
// for radially structured nets hold bitwise.
double euclid_norm(const Point& x);

// base^e for integer e; exact for powers of two
double pow_int(double base, int e);

// ---------------------------------------------------------------------------

struct EpsilonGrid {
    std::vector<double> values;   // in (0,1], strictly decreasing
    std::size_t tail_start = 0;   // asymptotic fits use values[tail_start..]

    std::size_t size() const { return values.size(); }
    // exact-value lookup; throws LookupError for off-grid eps
    std::size_t index_of(double eps) const;
    bool same_as(const EpsilonGrid& other) const;
};

// values = base^k for k = k_min..k_max, tail_start at the midpoint
EpsilonGrid make_epsilon_grid(int k_min, int k_max, double base);
EpsilonGrid default_grid();  // base 0.5, exponents 4..24

// ---------------------------------------------------------------------------

// One representative u_eps: a smooth function with exact partial derivatives
// up to max_order. `derivative` must be total on R^n; order 0 is the value.
//
// grad_scale, when set, records the factored form  grad f(x) = Q(x) * x  of a
// radially structured function. Consumers (Lie derivatives, polar reduction)
// use it to evaluate contractions like <xi, grad f> with exact floating-point
// cancellation where the analytic result vanishes.
struct SmoothFunctionHandle {
    int arity = 0;
    int max_order = 2;
    bool approximate = false;  // derivatives from finite differences, not closed form
    std::function<double(const MultiIndex&, const Point&)> derivative;
    std::shared_ptr<const SmoothFunctionHandle> grad_scale;

    double value(const Point& x) const { return derivative(zero_index(arity), x); }
    double partial(const MultiIndex& alpha, const Point& x) const;
};

SmoothFunctionHandle make_handle0(int arity, std::function<double(const Point&)> f);
SmoothFunctionHandle make_handle1(int arity,
                                  std::function<double(const Point&)> f,
                                  std::function<double(int, const Point&)> grad);
SmoothFunctionHandle make_handle2(int arity,
                                  std::function<double(const Point&)> f,
                                  std::function<double(int, const Point&)> grad,
                                  std::function<double(int, int, const Point&)> hess);

// central-difference adapter for black-box functions, step
// 1e-5 * max(1, scale_hint); the result is flagged approximate
SmoothFunctionHandle finite_difference_handle(int arity,
                                              std::function<double(const Point&)> f,
                                              double scale_hint = 1.0);

// ---------------------------------------------------------------------------

struct NetFunction {
    EpsilonGrid grid;
    int dimension = 0;
    int max_order = 2;
    std::function<SmoothFunctionHandle(double eps)> member;
};

double eval_net(const NetFunction& u, double eps, const Point& x);
double partial(const NetFunction& u, double eps, const MultiIndex& alpha, const Point& x);

// pointwise combinations (shared grid required)
NetFunction net_add(const NetFunction& u, const NetFunction& w);
NetFunction net_sub(const NetFunction& u, const NetFunction& w);
NetFunction net_scale(const NetFunction& u, double c);
// the net eps -> d^axis u_eps (max_order drops by one)
NetFunction derivative_net(const NetFunction& u, int axis);

struct NetVectorField {
    EpsilonGrid grid;
    int dimension = 0;
    std::vector<NetFunction> components;
};

NetVectorField make_field(EpsilonGrid grid, std::vector<NetFunction> components);

// ---------------------------------------------------------------------------

struct GeneralizedPoint {
    EpsilonGrid grid;
    int dimension = 0;
    std::function<Point(double eps)> position;
    double bound = 0.0;
};

// position(eps) with the uniform bound asserted
Point point_at(const GeneralizedPoint& p, double eps);

GeneralizedPoint constant_point(const EpsilonGrid& grid, Point x, double bound_margin = 1.0);

struct GeneralizedNumber {
    EpsilonGrid grid;
    std::function<double(double eps)> value;
};

GeneralizedNumber constant_number(const EpsilonGrid& grid, double c);

// ---------------------------------------------------------------------------

struct CompactBox {
    std::vector<std::array<double, 2>> intervals;
    std::vector<int> resolution;

    // default per-axis resolution: 41 for n <= 2, 17 for n == 3, 9 for n == 4
    explicit CompactBox(std::vector<std::array<double, 2>> intervals,
                        int per_axis_resolution = 0);
    CompactBox() = default;

    int dimension() const { return static_cast<int>(intervals.size()); }
    bool contains(const Point& x) const;
    double max_abs_corner() const;
};

// full tensor grid of sample points; dimension <= 4
std::vector<Point> sample_box(const CompactBox& K);

} // namespace colombeau

#endif
