#include "colombeau/embeddings.hpp"

#include <cmath>
#include <numbers>

namespace colombeau {

namespace {

// radial profiles as functions of s = (|x|/r0)^2, smooth on [0,1), zero beyond
struct RadialProfile {
    double (*g)(double);
    double (*dg)(double);
    double (*ddg)(double);
};

// exp(1 - 1/(1-s)); value 1 at the origin
double bump_g(double s) {
    if (s >= 1.0 || 1.0 - s < 1.3e-3) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - s));
}
double bump_dg(double s) {
    if (s >= 1.0 || 1.0 - s < 1.3e-3) return 0.0;
    double q = 1.0 / (1.0 - s);
    return -bump_g(s) * q * q;
}
double bump_ddg(double s) {
    if (s >= 1.0 || 1.0 - s < 1.3e-3) return 0.0;
    double q = 1.0 / (1.0 - s);
    return bump_g(s) * (q * q * q * q - 2.0 * q * q * q);
}

// exp(-4 s / (1-s)); Gaussian-like core exp(-4s) near the origin
double gauss_g(double s) {
    if (s >= 1.0 || 1.0 - s < 5.4e-3) return 0.0;
    return std::exp(4.0 - 4.0 / (1.0 - s));
}
double gauss_dg(double s) {
    if (s >= 1.0 || 1.0 - s < 5.4e-3) return 0.0;
    double q = 1.0 / (1.0 - s);
    return -4.0 * gauss_g(s) * q * q;
}
double gauss_ddg(double s) {
    if (s >= 1.0 || 1.0 - s < 5.4e-3) return 0.0;
    double q = 1.0 / (1.0 - s);
    return gauss_g(s) * (16.0 * q * q * q * q - 8.0 * q * q * q);
}

RadialProfile profile_for(MollifierShape shape) {
    if (shape == MollifierShape::GaussianTruncated)
        return {gauss_g, gauss_dg, gauss_ddg};
    return {bump_g, bump_dg, bump_ddg};
}

// integral of g((|x|/r0)^2) over R^n, via the 1-D radial integral
double radial_mass(const RadialProfile& prof, int n, double r0) {
    const int steps = 200000;  // composite Simpson on [0,1]
    double acc = 0.0;
    auto f = [&](double t) { return prof.g(t * t) * std::pow(t, n - 1); };
    double h = 1.0 / steps;
    for (int i = 0; i < steps; ++i) {
        double a = i * h, b = a + h;
        acc += (f(a) + 4.0 * f(0.5 * (a + b)) + f(b)) * h / 6.0;
    }
    double surface;
    switch (n) {
        case 1: surface = 2.0; break;
        case 2: surface = 2.0 * std::numbers::pi; break;
        case 3: surface = 4.0 * std::numbers::pi; break;
        default: surface = 2.0 * std::numbers::pi * std::numbers::pi; break;  // n == 4
    }
    return surface * acc * pow_int(r0, n);
}

// amp * g((|x - center|/r0)^2) with hand-derived first and second partials.
// Evaluation is norm-first: the value depends on x only through |x - center|,
// computed with euclid_norm, so radial identities hold bitwise.
SmoothFunctionHandle radial_handle(int n, RadialProfile prof, double r0, double amp,
                                   Point center) {
    bool centered = true;
    for (double c : center) centered = centered && c == 0.0;
    const double inv_r0 = 1.0 / r0;
    const double two_over_r0sq = 2.0 / (r0 * r0);

    auto shift = [center](const Point& x) {
        Point y = x;
        for (std::size_t i = 0; i < y.size(); ++i) y[i] -= center[i];
        return y;
    };
    auto s_of = [inv_r0, shift](const Point& x) {
        double w = euclid_norm(shift(x)) * inv_r0;
        return w * w;
    };

    SmoothFunctionHandle h;
    h.arity = n;
    h.max_order = 2;
    h.derivative = [prof, amp, two_over_r0sq, shift, s_of](const MultiIndex& a,
                                                           const Point& x) {
        int ord = order_of(a);
        double s = s_of(x);
        if (ord == 0) return amp * prof.g(s);
        Point y = shift(x);
        int first = -1, second = -1;
        for (std::size_t i = 0; i < a.size(); ++i)
            for (int c = 0; c < a[i]; ++c) (first < 0 ? first : second) = static_cast<int>(i);
        if (ord == 1)
            return amp * prof.dg(s) * two_over_r0sq * y[static_cast<std::size_t>(first)];
        double mixed = amp * prof.ddg(s) * two_over_r0sq * two_over_r0sq *
                       y[static_cast<std::size_t>(first)] * y[static_cast<std::size_t>(second)];
        if (first == second) mixed += amp * prof.dg(s) * two_over_r0sq;
        return mixed;
    };
    if (centered) {
        // grad phi(x) = Q(x) * x with Q = amp * g'(s) * 2/r0^2
        auto q = std::make_shared<SmoothFunctionHandle>();
        q->arity = n;
        q->max_order = 1;
        q->derivative = [prof, amp, two_over_r0sq, s_of](const MultiIndex& a, const Point& x) {
            double s = s_of(x);
            if (order_of(a) == 0) return amp * prof.dg(s) * two_over_r0sq;
            for (std::size_t i = 0; i < a.size(); ++i)
                if (a[i] == 1)
                    return amp * prof.ddg(s) * two_over_r0sq * two_over_r0sq * x[i];
            return 0.0;
        };
        h.grad_scale = q;
    }
    return h;
}

} // namespace

MollifierSpec asymmetric_bump_spec(int dimension) {
    MollifierSpec spec;
    spec.dimension = dimension;
    spec.shape = MollifierShape::AsymmetricBump;
    spec.support_radius = 0.3;
    spec.normalization = Normalization::SupOne;
    spec.center.assign(static_cast<std::size_t>(dimension), 0.0);
    spec.center[0] = 0.5;
    return spec;
}

SmoothFunctionHandle make_mollifier(const MollifierSpec& spec) {
    if (!(spec.support_radius > 0.0)) throw ConfigError("support radius must be positive");
    RadialProfile prof = profile_for(spec.shape);
    Point center(static_cast<std::size_t>(spec.dimension), 0.0);
    if (spec.shape == MollifierShape::AsymmetricBump) {
        center = spec.center;
        if (center.size() != static_cast<std::size_t>(spec.dimension))
            throw ConfigError("asymmetric bump center has wrong dimension");
    }
    double amp = 1.0;
    if (spec.normalization == Normalization::MassOne)
        amp = 1.0 / radial_mass(prof, spec.dimension, spec.support_radius);
    return radial_handle(spec.dimension, prof, spec.support_radius, amp, std::move(center));
}

SmoothFunctionHandle scaled_member(const SmoothFunctionHandle& phi, double eps,
                                   int power_of_eps) {
    SmoothFunctionHandle h;
    h.arity = phi.arity;
    h.max_order = phi.max_order;
    h.derivative = [phi, eps, power_of_eps](const MultiIndex& a, const Point& x) {
        Point y = x;
        for (double& c : y) c /= eps;
        return pow_int(eps, power_of_eps - order_of(a)) * phi.derivative(a, y);
    };
    if (phi.grad_scale) {
        auto q = std::make_shared<SmoothFunctionHandle>();
        q->arity = phi.arity;
        q->max_order = phi.grad_scale->max_order;
        q->derivative = [qp = phi.grad_scale, eps, power_of_eps](const MultiIndex& a,
                                                                 const Point& x) {
            Point y = x;
            for (double& c : y) c /= eps;
            return pow_int(eps, power_of_eps - 2 - order_of(a)) * qp->derivative(a, y);
        };
        h.grad_scale = q;
    }
    return h;
}

NetFunction embed_delta(const MollifierSpec& spec, const EpsilonGrid& grid) {
    if (spec.normalization != Normalization::MassOne)
        throw ConfigError("embed_delta requires mass-one normalization");
    SmoothFunctionHandle phi = make_mollifier(spec);
    NetFunction u;
    u.grid = grid;
    u.dimension = spec.dimension;
    u.max_order = phi.max_order;
    int n = spec.dimension;
    u.member = [phi, n](double eps) { return scaled_member(phi, eps, -n); };
    return u;
}

NetFunction shrinking_bump(const MollifierSpec& spec, const EpsilonGrid& grid) {
    if (spec.shape != MollifierShape::AsymmetricBump)
        throw ConfigError("shrinking_bump requires an asymmetric spec");
    SmoothFunctionHandle phi = make_mollifier(spec);
    NetFunction u;
    u.grid = grid;
    u.dimension = spec.dimension;
    u.max_order = phi.max_order;
    u.member = [phi](double eps) { return scaled_member(phi, eps, 0); };
    return u;
}

// ---------------------------------------------------------------------------

namespace {

SmoothFunctionHandle const_handle(int n, double value) {
    return make_handle2(
        n, [value](const Point&) { return value; },
        [](int, const Point&) { return 0.0; },
        [](int, int, const Point&) { return 0.0; });
}

SmoothFunctionHandle signed_coordinate_handle(int n, int m, double sign) {
    return make_handle2(
        n, [m, sign](const Point& x) { return sign * x[static_cast<std::size_t>(m)]; },
        [m, sign](int i, const Point&) { return i == m ? sign : 0.0; },
        [](int, int, const Point&) { return 0.0; });
}

NetFunction constant_member_net(const EpsilonGrid& grid, int n,
                                std::function<SmoothFunctionHandle(double)> member) {
    NetFunction u;
    u.grid = grid;
    u.dimension = n;
    u.max_order = 2;
    u.member = std::move(member);
    return u;
}

NetFunction squared_norm_net(const EpsilonGrid& grid, int n) {
    auto h = make_handle2(
        n,
        [](const Point& x) {
            double s = 0.0;
            for (double v : x) s += v * v;
            return s;
        },
        [](int i, const Point& x) { return 2.0 * x[static_cast<std::size_t>(i)]; },
        [](int i, int j, const Point&) { return i == j ? 2.0 : 0.0; });
    auto q = std::make_shared<SmoothFunctionHandle>(const_handle(n, 2.0));
    q->max_order = 1;
    h.grad_scale = q;
    return constant_member_net(grid, n, [h](double) { return h; });
}

NetFunction gaussian_net(const EpsilonGrid& grid, int n) {
    auto f = [](const Point& x) {
        double s = 0.0;
        for (double v : x) s += v * v;
        return std::exp(-s);
    };
    auto h = make_handle2(
        n, f,
        [f](int i, const Point& x) { return -2.0 * x[static_cast<std::size_t>(i)] * f(x); },
        [f](int i, int j, const Point& x) {
            double v = 4.0 * x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)] * f(x);
            if (i == j) v -= 2.0 * f(x);
            return v;
        });
    auto q = std::make_shared<SmoothFunctionHandle>();
    q->arity = n;
    q->max_order = 1;
    q->derivative = [f](const MultiIndex& a, const Point& x) {
        if (order_of(a) == 0) return -2.0 * f(x);
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] == 1) return 4.0 * x[i] * f(x);
        return 0.0;
    };
    h.grad_scale = q;
    return constant_member_net(grid, n, [h](double) { return h; });
}

} // namespace

NetVectorField rotation_generator(const EpsilonGrid& grid, int n, int i, int j) {
    if (!(0 <= i && i < j && j < n)) throw ConfigError("rotation plane requires 0 <= i < j < n");
    std::vector<NetFunction> comps;
    for (int k = 0; k < n; ++k) {
        SmoothFunctionHandle h;
        if (k == i)
            h = signed_coordinate_handle(n, j, -1.0);
        else if (k == j)
            h = signed_coordinate_handle(n, i, 1.0);
        else
            h = const_handle(n, 0.0);
        comps.push_back(constant_member_net(grid, n, [h](double) { return h; }));
    }
    return make_field(grid, std::move(comps));
}

NetVectorField coordinate_field(const EpsilonGrid& grid, int n, int axis) {
    return scaled_coordinate_field(grid, n, axis, [](double) { return 1.0; });
}

NetVectorField scaled_coordinate_field(const EpsilonGrid& grid, int n, int axis,
                                       std::function<double(double)> coefficient) {
    std::vector<NetFunction> comps;
    for (int k = 0; k < n; ++k) {
        if (k == axis) {
            comps.push_back(constant_member_net(grid, n, [coefficient, n](double eps) {
                return const_handle(n, coefficient(eps));
            }));
        } else {
            SmoothFunctionHandle h = const_handle(n, 0.0);
            comps.push_back(constant_member_net(grid, n, [h](double) { return h; }));
        }
    }
    return make_field(grid, std::move(comps));
}

const NetFunction& Gallery::function(const std::string& name) const {
    auto it = functions.find(name);
    if (it == functions.end()) throw LookupError("unknown gallery function: " + name);
    return it->second;
}

const NetVectorField& Gallery::field(const std::string& name) const {
    auto it = fields.find(name);
    if (it == fields.end()) throw LookupError("unknown gallery field: " + name);
    return it->second;
}

std::vector<std::string> Gallery::function_names() const {
    std::vector<std::string> names;
    for (const auto& [k, v] : functions) names.push_back(k);
    return names;
}

std::vector<std::string> Gallery::field_names() const {
    std::vector<std::string> names;
    for (const auto& [k, v] : fields) names.push_back(k);
    return names;
}

Gallery gallery(const EpsilonGrid& grid) {
    Gallery g;

    for (int n : {1, 2, 3}) {
        MollifierSpec delta;
        delta.dimension = n;
        delta.shape = MollifierShape::RadialBump;
        delta.support_radius = 1.0;
        delta.normalization = Normalization::MassOne;
        g.functions.emplace("delta_radial_" + std::to_string(n) + "d",
                            embed_delta(delta, grid));
    }
    g.functions.emplace("bump_asym_2d", shrinking_bump(asymmetric_bump_spec(2), grid));

    g.functions.emplace("radial_poly_2d", squared_norm_net(grid, 2));
    g.functions.emplace("radial_poly_3d", squared_norm_net(grid, 3));
    g.functions.emplace("radial_gauss_2d", gaussian_net(grid, 2));

    auto coord = [&](int n, int m) {
        auto h = signed_coordinate_handle(n, m, 1.0);
        return constant_member_net(grid, n, [h](double) { return h; });
    };
    g.functions.emplace("coord_x1_2d", coord(2, 0));
    g.functions.emplace("coord_x1_3d", coord(3, 0));
    g.functions.emplace("trans_inv_2d", coord(2, 1));
    g.functions.emplace("const_one_2d",
                        constant_member_net(grid, 2, [](double) { return const_handle(2, 1.0); }));
    g.functions.emplace("lognet_2d", constant_member_net(grid, 2, [](double eps) {
                            return const_handle(2, std::abs(std::log(eps)));
                        }));

    // x2 + eps^5 sin(x1): translation invariant along x1 up to a negligible tail
    g.functions.emplace("trans_pert_2d", constant_member_net(grid, 2, [](double eps) {
        double c = pow_int(eps, 5);
        return make_handle2(
            2, [c](const Point& x) { return x[1] + c * std::sin(x[0]); },
            [c](int i, const Point& x) { return i == 0 ? c * std::cos(x[0]) : 1.0; },
            [c](int i, int j, const Point& x) {
                return (i == 0 && j == 0) ? -c * std::sin(x[0]) : 0.0;
            });
    }));
    g.functions.emplace("negligible_2d", constant_member_net(grid, 2, [](double eps) {
        double c = pow_int(eps, 5);
        return make_handle2(
            2, [c](const Point& x) { return c * std::sin(x[0]); },
            [c](int i, const Point& x) { return i == 0 ? c * std::cos(x[0]) : 0.0; },
            [c](int i, int j, const Point& x) {
                return (i == 0 && j == 0) ? -c * std::sin(x[0]) : 0.0;
            });
    }));
    g.functions.emplace("eps_x1_2d", constant_member_net(grid, 2, [](double eps) {
        return make_handle2(
            2, [eps](const Point& x) { return eps * x[0]; },
            [eps](int i, const Point&) { return i == 0 ? eps : 0.0; },
            [](int, int, const Point&) { return 0.0; });
    }));

    g.fields.emplace("xi_12_rotation", rotation_generator(grid, 2, 0, 1));
    g.fields.emplace("xi_12_rotation_3d", rotation_generator(grid, 3, 0, 1));
    g.fields.emplace("const_dx", coordinate_field(grid, 2, 0));
    g.fields.emplace("log_dx", scaled_coordinate_field(grid, 2, 0, [](double eps) {
                         return std::abs(std::log(eps));
                     }));
    g.fields.emplace("eps_inv_dx", scaled_coordinate_field(grid, 2, 0, [](double eps) {
                         return 1.0 / eps;
                     }));
    return g;
}

} // namespace colombeau
