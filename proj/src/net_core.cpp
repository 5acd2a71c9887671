#include "colombeau/net_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace colombeau {

MultiIndex unit_index(int arity, int axis) {
    MultiIndex a(static_cast<std::size_t>(arity), 0);
    a[static_cast<std::size_t>(axis)] = 1;
    return a;
}

MultiIndex zero_index(int arity) {
    return MultiIndex(static_cast<std::size_t>(arity), 0);
}

static void enumerate_rec(int arity, int slot, int budget, MultiIndex& cur,
                          std::vector<MultiIndex>& out) {
    if (slot == arity) {
        out.push_back(cur);
        return;
    }
    for (int a = 0; a <= budget; ++a) {
        cur[static_cast<std::size_t>(slot)] = a;
        enumerate_rec(arity, slot + 1, budget - a, cur, out);
    }
    cur[static_cast<std::size_t>(slot)] = 0;
}

std::vector<MultiIndex> multi_indices_up_to(int arity, int max_total) {
    std::vector<MultiIndex> out;
    MultiIndex cur = zero_index(arity);
    enumerate_rec(arity, 0, max_total, cur, out);
    std::sort(out.begin(), out.end(), [](const MultiIndex& a, const MultiIndex& b) {
        int oa = order_of(a), ob = order_of(b);
        if (oa != ob) return oa < ob;
        return a < b;
    });
    return out;
}

double euclid_norm(const Point& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

double pow_int(double base, int e) {
    bool inv = e < 0;
    long long n = inv ? -static_cast<long long>(e) : e;
    double p = 1.0;
    for (long long i = 0; i < n; ++i) p *= base;
    return inv ? 1.0 / p : p;
}

// ---------------------------------------------------------------------------

std::size_t EpsilonGrid::index_of(double eps) const {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] == eps) return i;
        // tolerate re-serialized values
        if (std::abs(values[i] - eps) <= 1e-14 * values[i]) return i;
    }
    std::ostringstream os;
    os << "epsilon " << eps << " is not a grid value";
    throw LookupError(os.str());
}

bool EpsilonGrid::same_as(const EpsilonGrid& other) const {
    return values == other.values && tail_start == other.tail_start;
}

EpsilonGrid make_epsilon_grid(int k_min, int k_max, double base) {
    if (!(base > 0.0 && base < 1.0))
        throw ConfigError("grid base must lie in (0,1)");
    if (k_min >= k_max || k_max - k_min < 7)
        throw ConfigError("grid needs k_min < k_max with k_max - k_min >= 7");
    EpsilonGrid g;
    for (int k = k_min; k <= k_max; ++k) g.values.push_back(pow_int(base, k));
    g.tail_start = g.values.size() / 2;
    if (g.tail_start + 4 > g.values.size())
        throw ConfigError("grid tail too short for regression");
    return g;
}

EpsilonGrid default_grid() { return make_epsilon_grid(4, 24, 0.5); }

// ---------------------------------------------------------------------------

double SmoothFunctionHandle::partial(const MultiIndex& alpha, const Point& x) const {
    if (static_cast<int>(alpha.size()) != arity)
        throw CapabilityError("multi-index arity mismatch");
    if (order_of(alpha) > max_order)
        throw CapabilityError("derivative order exceeds handle max_order");
    return derivative(alpha, x);
}

SmoothFunctionHandle make_handle0(int arity, std::function<double(const Point&)> f) {
    SmoothFunctionHandle h;
    h.arity = arity;
    h.max_order = 0;
    h.derivative = [f = std::move(f)](const MultiIndex&, const Point& x) { return f(x); };
    return h;
}

SmoothFunctionHandle make_handle1(int arity,
                                  std::function<double(const Point&)> f,
                                  std::function<double(int, const Point&)> grad) {
    SmoothFunctionHandle h;
    h.arity = arity;
    h.max_order = 1;
    h.derivative = [f = std::move(f), grad = std::move(grad)](const MultiIndex& a,
                                                             const Point& x) {
        int ord = order_of(a);
        if (ord == 0) return f(x);
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] == 1) return grad(static_cast<int>(i), x);
        return 0.0;
    };
    return h;
}

SmoothFunctionHandle make_handle2(int arity,
                                  std::function<double(const Point&)> f,
                                  std::function<double(int, const Point&)> grad,
                                  std::function<double(int, int, const Point&)> hess) {
    SmoothFunctionHandle h;
    h.arity = arity;
    h.max_order = 2;
    h.derivative = [f = std::move(f), grad = std::move(grad), hess = std::move(hess)](
                       const MultiIndex& a, const Point& x) {
        int ord = order_of(a);
        if (ord == 0) return f(x);
        int first = -1, second = -1;
        for (std::size_t i = 0; i < a.size(); ++i) {
            for (int c = 0; c < a[i]; ++c) {
                if (first < 0)
                    first = static_cast<int>(i);
                else
                    second = static_cast<int>(i);
            }
        }
        if (ord == 1) return grad(first, x);
        return hess(first, second, x);
    };
    return h;
}

SmoothFunctionHandle finite_difference_handle(int arity,
                                              std::function<double(const Point&)> f,
                                              double scale_hint) {
    const double h = 1e-5 * std::max(1.0, scale_hint);
    SmoothFunctionHandle out;
    out.arity = arity;
    out.max_order = 2;
    out.approximate = true;
    out.derivative = [f = std::move(f), h](const MultiIndex& a, const Point& x) {
        int ord = order_of(a);
        if (ord == 0) return f(x);
        int first = -1, second = -1;
        for (std::size_t i = 0; i < a.size(); ++i)
            for (int c = 0; c < a[i]; ++c) (first < 0 ? first : second) = static_cast<int>(i);
        Point p = x;
        if (ord == 1) {
            p[static_cast<std::size_t>(first)] = x[static_cast<std::size_t>(first)] + h;
            double hi = f(p);
            p[static_cast<std::size_t>(first)] = x[static_cast<std::size_t>(first)] - h;
            return (hi - f(p)) / (2.0 * h);
        }
        if (ord > 2) throw CapabilityError("finite differences stop at order 2");
        const std::size_t i = static_cast<std::size_t>(first),
                          j = static_cast<std::size_t>(second);
        if (i == j) {
            double mid = f(x);
            p[i] = x[i] + h;
            double hi = f(p);
            p[i] = x[i] - h;
            return (hi - 2.0 * mid + f(p)) / (h * h);
        }
        p[i] = x[i] + h;
        p[j] = x[j] + h;
        double pp = f(p);
        p[j] = x[j] - h;
        double pm = f(p);
        p[i] = x[i] - h;
        double mm = f(p);
        p[j] = x[j] + h;
        double mp = f(p);
        return (pp - pm - mp + mm) / (4.0 * h * h);
    };
    return out;
}

// ---------------------------------------------------------------------------

double eval_net(const NetFunction& u, double eps, const Point& x) {
    u.grid.index_of(eps);
    return u.member(eps).value(x);
}

double partial(const NetFunction& u, double eps, const MultiIndex& alpha, const Point& x) {
    u.grid.index_of(eps);
    return u.member(eps).partial(alpha, x);
}

static void require_compatible(const NetFunction& u, const NetFunction& w) {
    if (!u.grid.same_as(w.grid)) throw ConfigError("net grids differ");
    if (u.dimension != w.dimension) throw ConfigError("net dimensions differ");
}

NetFunction net_add(const NetFunction& u, const NetFunction& w) {
    require_compatible(u, w);
    NetFunction r;
    r.grid = u.grid;
    r.dimension = u.dimension;
    r.max_order = std::min(u.max_order, w.max_order);
    r.member = [u, w, mo = r.max_order](double eps) {
        auto hu = u.member(eps);
        auto hw = w.member(eps);
        SmoothFunctionHandle h;
        h.arity = hu.arity;
        h.max_order = mo;
        if (hu.grad_scale && hw.grad_scale) {
            auto q = std::make_shared<SmoothFunctionHandle>();
            q->arity = hu.arity;
            q->max_order = std::min(hu.grad_scale->max_order, hw.grad_scale->max_order);
            q->derivative = [qa = hu.grad_scale, qb = hw.grad_scale](const MultiIndex& a,
                                                                    const Point& x) {
                return qa->derivative(a, x) + qb->derivative(a, x);
            };
            h.grad_scale = q;
        }
        h.derivative = [hu, hw](const MultiIndex& a, const Point& x) {
            return hu.derivative(a, x) + hw.derivative(a, x);
        };
        return h;
    };
    return r;
}

NetFunction net_sub(const NetFunction& u, const NetFunction& w) {
    return net_add(u, net_scale(w, -1.0));
}

NetFunction net_scale(const NetFunction& u, double c) {
    NetFunction r = u;
    r.member = [u, c](double eps) {
        auto hu = u.member(eps);
        SmoothFunctionHandle h;
        h.arity = hu.arity;
        h.max_order = hu.max_order;
        if (hu.grad_scale) {
            auto q = std::make_shared<SmoothFunctionHandle>();
            q->arity = hu.arity;
            q->max_order = hu.grad_scale->max_order;
            q->derivative = [qa = hu.grad_scale, c](const MultiIndex& a, const Point& x) {
                return c * qa->derivative(a, x);
            };
            h.grad_scale = q;
        }
        h.derivative = [hu, c](const MultiIndex& a, const Point& x) {
            return c * hu.derivative(a, x);
        };
        return h;
    };
    return r;
}

NetFunction derivative_net(const NetFunction& u, int axis) {
    if (axis < 0 || axis >= u.dimension) throw ConfigError("derivative axis out of range");
    if (u.max_order < 1) throw CapabilityError("net has no derivatives left");
    NetFunction r;
    r.grid = u.grid;
    r.dimension = u.dimension;
    r.max_order = u.max_order - 1;
    r.member = [u, axis, mo = r.max_order](double eps) {
        auto hu = u.member(eps);
        SmoothFunctionHandle h;
        h.arity = hu.arity;
        h.max_order = mo;
        h.derivative = [hu, axis](const MultiIndex& a, const Point& x) {
            MultiIndex b = a;
            b[static_cast<std::size_t>(axis)] += 1;
            return hu.derivative(b, x);
        };
        return h;
    };
    return r;
}

NetVectorField make_field(EpsilonGrid grid, std::vector<NetFunction> components) {
    if (components.empty()) throw ConfigError("vector field needs components");
    int n = static_cast<int>(components.size());
    for (const auto& c : components) {
        if (!c.grid.same_as(grid)) throw ConfigError("component grid mismatch");
        if (c.dimension != n) throw ConfigError("component dimension mismatch");
    }
    NetVectorField f;
    f.grid = std::move(grid);
    f.dimension = n;
    f.components = std::move(components);
    return f;
}

// ---------------------------------------------------------------------------

Point point_at(const GeneralizedPoint& p, double eps) {
    p.grid.index_of(eps);
    Point x = p.position(eps);
    if (euclid_norm(x) > p.bound) {
        std::ostringstream os;
        os << "generalized point exceeds declared bound " << p.bound
           << " at eps = " << eps;
        throw InvariantViolation(os.str());
    }
    return x;
}

GeneralizedPoint constant_point(const EpsilonGrid& grid, Point x, double bound_margin) {
    GeneralizedPoint p;
    p.grid = grid;
    p.dimension = static_cast<int>(x.size());
    p.bound = euclid_norm(x) + bound_margin;
    p.position = [x = std::move(x)](double) { return x; };
    return p;
}

GeneralizedNumber constant_number(const EpsilonGrid& grid, double c) {
    return GeneralizedNumber{grid, [c](double) { return c; }};
}

// ---------------------------------------------------------------------------

CompactBox::CompactBox(std::vector<std::array<double, 2>> ivs, int per_axis_resolution)
    : intervals(std::move(ivs)) {
    if (intervals.empty()) throw ConfigError("box must be nonempty");
    for (const auto& iv : intervals) {
        if (!(iv[0] < iv[1])) throw ConfigError("box interval must have positive length");
        if (!std::isfinite(iv[0]) || !std::isfinite(iv[1]))
            throw ConfigError("box interval must be finite");
    }
    int n = dimension();
    int res = per_axis_resolution;
    if (res == 0) res = (n <= 2) ? 41 : (n == 3 ? 17 : 9);
    if (res < 9) throw ConfigError("box resolution must be at least 9 per axis");
    resolution.assign(static_cast<std::size_t>(n), res);
}

bool CompactBox::contains(const Point& x) const {
    if (x.size() != intervals.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] < intervals[i][0] || x[i] > intervals[i][1]) return false;
    return true;
}

double CompactBox::max_abs_corner() const {
    double m = 0.0;
    for (const auto& iv : intervals)
        m = std::max(m, std::max(std::abs(iv[0]), std::abs(iv[1])));
    return m;
}

std::vector<Point> sample_box(const CompactBox& K) {
    int n = K.dimension();
    if (n > 4) throw CapabilityError("sample_box supports dimension <= 4");
    std::size_t total = 1;
    for (int r : K.resolution) total *= static_cast<std::size_t>(r);
    std::vector<Point> pts;
    pts.reserve(total);
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    for (std::size_t c = 0; c < total; ++c) {
        Point x(static_cast<std::size_t>(n));
        for (int d = 0; d < n; ++d) {
            const auto& iv = K.intervals[static_cast<std::size_t>(d)];
            int r = K.resolution[static_cast<std::size_t>(d)];
            x[static_cast<std::size_t>(d)] =
                iv[0] + (iv[1] - iv[0]) * idx[static_cast<std::size_t>(d)] / (r - 1);
        }
        pts.push_back(std::move(x));
        for (int d = n - 1; d >= 0; --d) {
            if (++idx[static_cast<std::size_t>(d)] < K.resolution[static_cast<std::size_t>(d)])
                break;
            idx[static_cast<std::size_t>(d)] = 0;
        }
    }
    return pts;
}

} // namespace colombeau
