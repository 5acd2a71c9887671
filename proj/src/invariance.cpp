#include "colombeau/invariance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace colombeau {

std::string method_name(InvarianceMethod m) {
    switch (m) {
        case InvarianceMethod::Infinitesimal: return "infinitesimal";
        case InvarianceMethod::FlowSampled: return "flow_sampled";
        case InvarianceMethod::StandardRotations: return "standard_rotations";
        case InvarianceMethod::GeneralizedRotations: return "generalized_rotations";
        case InvarianceMethod::TranslationShift: return "translation_i";
        case InvarianceMethod::TranslationPartial: return "translation_ii";
        case InvarianceMethod::TranslationRepresentative: return "translation_iii";
    }
    return "infinitesimal";
}

NetFunction lie_derivative(const NetVectorField& xi, const NetFunction& u) {
    if (!xi.grid.same_as(u.grid)) throw ConfigError("lie_derivative: grid mismatch");
    if (xi.dimension != u.dimension) throw ConfigError("lie_derivative: dimension mismatch");
    if (u.max_order < 1) throw CapabilityError("lie_derivative needs max_order >= 1");
    const int n = u.dimension;

    NetFunction out;
    out.grid = u.grid;
    out.dimension = n;
    out.max_order = std::min(u.max_order - 1, 1);
    out.member = [xi, u, n](double eps) {
        auto hu = std::make_shared<SmoothFunctionHandle>(u.member(eps));
        auto hx = std::make_shared<std::vector<SmoothFunctionHandle>>();
        for (const auto& c : xi.components) hx->push_back(c.member(eps));

        // termwise <xi(x), x>; cancels exactly for linear rotation generators
        auto field_dot_x = [hx, n](const Point& x, const MultiIndex& zero) {
            double s = 0.0;
            for (int i = 0; i < n; ++i)
                s += (*hx)[static_cast<std::size_t>(i)].derivative(zero, x) *
                     x[static_cast<std::size_t>(i)];
            return s;
        };

        SmoothFunctionHandle h;
        h.arity = n;
        h.max_order = std::min(u.max_order - 1, 1);
        h.derivative = [hu, hx, n, field_dot_x](const MultiIndex& alpha, const Point& x) {
            const int ord = order_of(alpha);
            const MultiIndex zero = zero_index(n);
            if (ord == 0) {
                if (hu->grad_scale)
                    return hu->grad_scale->derivative(zero, x) * field_dot_x(x, zero);
                double s = 0.0;
                for (int i = 0; i < n; ++i)
                    s += (*hx)[static_cast<std::size_t>(i)].derivative(zero, x) *
                         hu->derivative(unit_index(n, i), x);
                return s;
            }
            if (ord > 1)
                throw CapabilityError("lie_derivative handles carry one derivative order");
            int j = 0;
            while (alpha[static_cast<std::size_t>(j)] == 0) ++j;
            MultiIndex ej = unit_index(n, j);
            if (hu->grad_scale) {
                // d_j (Q <xi, x>) = (d_j Q) <xi, x> + Q (sum_i d_j xi_i x_i + xi_j)
                double s = field_dot_x(x, zero);
                double ds = 0.0;
                for (int i = 0; i < n; ++i)
                    ds += (*hx)[static_cast<std::size_t>(i)].derivative(ej, x) *
                          x[static_cast<std::size_t>(i)];
                ds += (*hx)[static_cast<std::size_t>(j)].derivative(zero, x);
                return hu->grad_scale->derivative(ej, x) * s +
                       hu->grad_scale->derivative(zero, x) * ds;
            }
            double s = 0.0;
            for (int i = 0; i < n; ++i) {
                MultiIndex ei = unit_index(n, i);
                MultiIndex eij = ei;
                eij[static_cast<std::size_t>(j)] += 1;
                s += (*hx)[static_cast<std::size_t>(i)].derivative(ej, x) *
                         hu->derivative(ei, x) +
                     (*hx)[static_cast<std::size_t>(i)].derivative(zero, x) *
                         hu->derivative(eij, x);
            }
            return s;
        };
        return h;
    };
    return out;
}

InvarianceVerdict infinitesimal_test(const NetVectorField& xi, const NetFunction& u,
                                     const CompactBox& K, const ClassifyOptions& opts) {
    NegligibilityEvidence ev = is_negligible(lie_derivative(xi, u), K, 1, opts);
    InvarianceVerdict v;
    v.method = InvarianceMethod::Infinitesimal;
    v.passed = ev.negligible;
    v.evidence = ev.worst_profile;
    v.evidence_class = ev.worst_class;
    v.region = K;
    return v;
}

namespace {

// residual profile with per-eps sup-of-|u| scale; `residual_at` receives the
// eps index and the member handle
template <class ResidualFn>
InvarianceVerdict residual_verdict(const NetFunction& u, const CompactBox& K,
                                   InvarianceMethod method, const ClassifyOptions& opts,
                                   ResidualFn residual_at) {
    const std::size_t m = u.grid.size();
    std::vector<double> res(m, 0.0), scale(m, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::size_t e = 0; e < m; ++e) {
        double eps = u.grid.values[e];
        SmoothFunctionHandle h = u.member(eps);
        MultiIndex zero = zero_index(u.dimension);
        double sc = 0.0;
        for (const Point& x : profile_sample_points(K, eps))
            sc = std::max(sc, std::abs(h.derivative(zero, x)));
        scale[e] = sc;
        res[e] = residual_at(e, eps, h);
    }
    InvarianceVerdict v;
    v.method = method;
    v.region = K;
    v.evidence = profile_from_entries(u.grid, std::move(res), std::move(scale), K,
                                      zero_index(u.dimension));
    v.evidence_class = classify(v.evidence, opts);
    v.passed = v.evidence_class.verdict == Verdict::Negligible;
    return v;
}

} // namespace

InvarianceVerdict flow_invariance_test(const FlowNet& flow, const NetFunction& u,
                                       const std::vector<GeneralizedNumber>& etas,
                                       const std::vector<GeneralizedPoint>& points,
                                       const ClassifyOptions& opts) {
    if (!flow.grid.same_as(u.grid)) throw ConfigError("flow_invariance_test: grid mismatch");
    if (flow.dimension != u.dimension)
        throw ConfigError("flow_invariance_test: dimension mismatch");
    for (const auto& eta : etas)
        for (double eps : u.grid.values) {
            double t = eta.value(eps);
            if (t < flow.t_min || t > flow.t_max)
                throw ConfigError("flow_invariance_test: eta outside the flow span");
        }

    const std::size_t m = u.grid.size();
    std::vector<double> res(m, 0.0), scale(m, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::size_t e = 0; e < m; ++e) {
        double eps = u.grid.values[e];
        SmoothFunctionHandle h = u.member(eps);
        MultiIndex zero = zero_index(u.dimension);
        double worst = 0.0, sc = 0.0;
        for (const auto& p : points) {
            Point x = point_at(p, eps);
            double base = h.derivative(zero, x);
            sc = std::max(sc, std::abs(base));
            for (const auto& eta : etas) {
                Point y = flow.map(e, eta.value(eps), x);
                worst = std::max(worst, std::abs(h.derivative(zero, y) - base));
            }
        }
        res[e] = worst;
        scale[e] = sc;
    }
    InvarianceVerdict v;
    v.method = InvarianceMethod::FlowSampled;
    v.region = flow.seed_box;
    v.evidence = profile_from_entries(u.grid, std::move(res), std::move(scale),
                                      flow.seed_box, zero_index(u.dimension));
    v.evidence_class = classify(v.evidence, opts);
    v.passed = v.evidence_class.verdict == Verdict::Negligible;
    return v;
}

std::vector<GeneralizedNumber> default_scalar_family(const EpsilonGrid& grid) {
    std::vector<GeneralizedNumber> fam;
    fam.push_back(constant_number(grid, 1.0));
    fam.push_back(constant_number(grid, 0.5));
    fam.push_back({grid, [](double eps) { return eps; }});
    fam.push_back({grid, [](double eps) { return std::sqrt(eps); }});
    fam.push_back({grid, [](double eps) { return std::abs(std::log(eps)); }});
    fam.push_back({grid, [](double eps) { return std::sin(1.0 / eps); }});
    return fam;
}

namespace {

NetFunction axis_slice(const NetFunction& u, int axis) {
    const std::size_t ax = static_cast<std::size_t>(axis);
    NetFunction rep;
    rep.grid = u.grid;
    rep.dimension = u.dimension;
    rep.max_order = u.max_order;
    rep.member = [u, ax](double eps) {
        auto hu = std::make_shared<SmoothFunctionHandle>(u.member(eps));
        SmoothFunctionHandle h;
        h.arity = u.dimension;
        h.max_order = u.max_order;
        h.derivative = [hu, ax](const MultiIndex& alpha, const Point& x) {
            if (alpha[ax] > 0) return 0.0;  // constant along the axis by construction
            Point y = x;
            y[ax] = 0.0;
            return hu->derivative(alpha, y);
        };
        return h;
    };
    return rep;
}

} // namespace

RepresentativeResult build_invariant_representative(const NetFunction& u, int axis,
                                                    const CompactBox& K,
                                                    const ClassifyOptions& opts) {
    if (axis < 0 || axis >= u.dimension)
        throw ConfigError("build_invariant_representative: axis out of range");
    RepresentativeResult result;
    result.representative = axis_slice(u, axis);
    result.certificate = is_negligible(net_sub(u, result.representative), K, 1, opts);
    result.difference_class = result.certificate.worst_class;
    if (!result.certificate.negligible)
        throw ConstructionError(
            "slice representative certificate failed: u minus its axis slice is not "
            "negligible on the region");
    return result;
}

TranslationReport translation_tests(const NetFunction& u, int axis, const CompactBox& K,
                                    const std::vector<GeneralizedNumber>& etas,
                                    const ClassifyOptions& opts) {
    if (axis < 0 || axis >= u.dimension)
        throw ConfigError("translation_tests: axis out of range");
    const std::size_t ax = static_cast<std::size_t>(axis);

    TranslationReport rep;
    rep.shifted = residual_verdict(
        u, K, InvarianceMethod::TranslationShift, opts,
        [&](std::size_t, double eps, const SmoothFunctionHandle& h) {
            MultiIndex zero = zero_index(u.dimension);
            double worst = 0.0;
            for (const Point& x : profile_sample_points(K, eps)) {
                double base = h.derivative(zero, x);
                for (const auto& eta : etas) {
                    Point y = x;
                    y[ax] += eta.value(eps);
                    worst = std::max(worst, std::abs(h.derivative(zero, y) - base));
                }
            }
            return worst;
        });

    NegligibilityEvidence ev = is_negligible(derivative_net(u, axis), K, 1, opts);
    rep.axis_partial.method = InvarianceMethod::TranslationPartial;
    rep.axis_partial.passed = ev.negligible;
    rep.axis_partial.evidence = ev.worst_profile;
    rep.axis_partial.evidence_class = ev.worst_class;
    rep.axis_partial.region = K;

    rep.representative.method = InvarianceMethod::TranslationRepresentative;
    rep.representative.region = K;
    if (!ev.negligible) {
        // precondition (ii) failed: rejected before construction
        rep.representative.passed = false;
        rep.representative.evidence = ev.worst_profile;
        rep.representative.evidence_class = ev.worst_class;
    } else {
        NegligibilityEvidence cert =
            is_negligible(net_sub(u, axis_slice(u, axis)), K, 1, opts);
        rep.representative.passed = cert.negligible;
        rep.representative.evidence = cert.worst_profile;
        rep.representative.evidence_class = cert.worst_class;
    }
    return rep;
}

std::vector<double> default_rotation_angles() {
    const double pi = std::numbers::pi;
    return {0.5 * pi, pi,  1.5 * pi, 0.1, 0.25,           0.4, 0.55, 0.7,
            0.85,     1.0, 1.2,      1.7, std::sqrt(2.0), 2.2, 2.9,  3.6};
}

std::vector<std::pair<int, int>> all_rotation_planes(int n) {
    std::vector<std::pair<int, int>> planes;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) planes.emplace_back(i, j);
    return planes;
}

namespace {

// plane rotation with exact signed-permutation quarter turns
Point rotate_in_plane(const Point& x, int i, int j, double angle) {
    const double pi = std::numbers::pi;
    const std::size_t a = static_cast<std::size_t>(i), b = static_cast<std::size_t>(j);
    Point y = x;
    if (angle == 0.5 * pi) {
        y[a] = -x[b];
        y[b] = x[a];
    } else if (angle == pi) {
        y[a] = -x[a];
        y[b] = -x[b];
    } else if (angle == 1.5 * pi) {
        y[a] = x[b];
        y[b] = -x[a];
    } else {
        double c = std::cos(angle), s = std::sin(angle);
        y[a] = c * x[a] - s * x[b];
        y[b] = s * x[a] + c * x[b];
    }
    return y;
}

} // namespace

InvarianceVerdict standard_rotation_test(const NetFunction& u, const CompactBox& K,
                                         const std::vector<double>& angles,
                                         const std::vector<std::pair<int, int>>& planes,
                                         const ClassifyOptions& opts) {
    if (u.dimension < 2) throw ConfigError("rotation tests need dimension >= 2");
    return residual_verdict(
        u, K, InvarianceMethod::StandardRotations, opts,
        [&](std::size_t, double eps, const SmoothFunctionHandle& h) {
            MultiIndex zero = zero_index(u.dimension);
            double worst = 0.0;
            for (const Point& x : profile_sample_points(K, eps)) {
                double base = h.derivative(zero, x);
                for (const auto& [i, j] : planes)
                    for (double angle : angles) {
                        Point y = rotate_in_plane(x, i, j, angle);
                        worst = std::max(worst, std::abs(h.derivative(zero, y) - base));
                    }
            }
            return worst;
        });
}

std::vector<std::vector<PlaneAngle>> default_generalized_angles(const EpsilonGrid& grid,
                                                                int n) {
    std::vector<std::vector<PlaneAngle>> out;
    for (const auto& [i, j] : all_rotation_planes(n))
        for (const GeneralizedNumber& s : default_scalar_family(grid)) {
            PlaneAngle pa;
            pa.i = i;
            pa.j = j;
            pa.angle = s;
            out.push_back({pa});
        }
    // one mixed assignment exercising several planes at once
    if (n > 2) {
        std::vector<PlaneAngle> mixed;
        for (const auto& [i, j] : all_rotation_planes(n)) {
            PlaneAngle pa;
            pa.i = i;
            pa.j = j;
            pa.angle = {grid, [](double eps) { return std::abs(std::log(eps)); }};
            mixed.push_back(pa);
        }
        out.push_back(mixed);
    }
    return out;
}

InvarianceVerdict generalized_rotation_test(const NetFunction& u, const CompactBox& K,
                                            const std::vector<std::vector<PlaneAngle>>& alphas,
                                            const ClassifyOptions& opts) {
    if (u.dimension < 2) throw ConfigError("rotation tests need dimension >= 2");
    std::vector<RotationNet> rotations;
    for (const auto& assignment : alphas)
        rotations.push_back(generalized_rotation(assignment, u.dimension, u.grid));
    return residual_verdict(
        u, K, InvarianceMethod::GeneralizedRotations, opts,
        [&](std::size_t, double eps, const SmoothFunctionHandle& h) {
            MultiIndex zero = zero_index(u.dimension);
            std::vector<Mat> mats;
            for (const auto& rot : rotations) mats.push_back(rot.member(eps));
            double worst = 0.0;
            for (const Point& x : profile_sample_points(K, eps)) {
                double base = h.derivative(zero, x);
                for (const Mat& A : mats)
                    worst = std::max(worst,
                                     std::abs(h.derivative(zero, mat_vec(A, x)) - base));
            }
            return worst;
        });
}

PolarReduction polar_reduce_2d(const NetFunction& u, const GeneralizedNumber& r,
                               const ClassifyOptions& opts) {
    if (u.dimension != 2) throw ConfigError("polar_reduce_2d needs a 2D net");
    if (!u.grid.same_as(r.grid)) throw ConfigError("polar_reduce_2d: grid mismatch");
    if (u.max_order < 1) throw CapabilityError("polar_reduce_2d needs max_order >= 1");
    for (double eps : u.grid.values)
        if (!(r.value(eps) >= 0.0))
            throw ConfigError("polar_reduce_2d: radius members must be nonnegative");

    NetFunction v;
    v.grid = u.grid;
    v.dimension = 1;
    v.max_order = std::min(u.max_order, 2);
    v.member = [u, r, order = v.max_order](double eps) {
        auto hu = std::make_shared<SmoothFunctionHandle>(u.member(eps));
        const double rad = r.value(eps);
        SmoothFunctionHandle h;
        h.arity = 1;
        h.max_order = order;
        h.derivative = [hu, rad](const MultiIndex& alpha, const Point& theta) {
            const double t = theta[0];
            const double p = rad * std::cos(t), q = rad * std::sin(t);
            const Point x{p, q};
            const MultiIndex zero{0, 0}, e1{1, 0}, e2{0, 1};
            const int ord = alpha[0];
            if (ord == 0) return hu->derivative(zero, x);
            // tangent of the computed circle point, exactly (-q, p)
            if (ord == 1) {
                if (hu->grad_scale) {
                    // <grad u, x'> = Q(x) <x, x'> and <(p,q), (-q,p)> cancels
                    // termwise to zero
                    double dot = p * (-q) + q * p;
                    return hu->grad_scale->derivative(zero, x) * dot;
                }
                return hu->derivative(e1, x) * (-q) + hu->derivative(e2, x) * p;
            }
            if (ord == 2) {
                MultiIndex e11{2, 0}, e12{1, 1}, e22{0, 2};
                double h11 = hu->derivative(e11, x), h12 = hu->derivative(e12, x),
                       h22 = hu->derivative(e22, x);
                double quad = h11 * q * q - 2.0 * h12 * q * p + h22 * p * p;
                return quad - (hu->derivative(e1, x) * p + hu->derivative(e2, x) * q);
            }
            throw CapabilityError("polar_reduce_2d handles carry two derivative orders");
        };
        return h;
    };

    PolarReduction red;
    red.v = v;
    CompactBox theta_box(std::vector<std::array<double, 2>>{{0.0, 2.0 * std::numbers::pi}});
    red.evidence = is_negligible(derivative_net(v, 0), theta_box, 0, opts);
    red.constant = red.evidence.negligible;
    return red;
}

NetFunction planar_slice(const NetFunction& u, int i, int j,
                         const GeneralizedPoint& fixed) {
    if (u.dimension < 3) throw ConfigError("planar_slice needs dimension >= 3");
    if (!(0 <= i && i < j && j < u.dimension))
        throw ConfigError("planar_slice: need 0 <= i < j < n");
    if (fixed.dimension != u.dimension - 2)
        throw ConfigError("planar_slice: fixed point must cover the remaining coordinates");
    if (!fixed.grid.same_as(u.grid)) throw ConfigError("planar_slice: grid mismatch");

    const int n = u.dimension;
    NetFunction w;
    w.grid = u.grid;
    w.dimension = 2;
    w.max_order = u.max_order;
    w.member = [u, fixed, i, j, n](double eps) {
        auto hu = std::make_shared<SmoothFunctionHandle>(u.member(eps));
        Point frozen = point_at(fixed, eps);
        SmoothFunctionHandle h;
        h.arity = 2;
        h.max_order = u.max_order;
        h.derivative = [hu, frozen, i, j, n](const MultiIndex& alpha, const Point& ab) {
            Point x(static_cast<std::size_t>(n));
            MultiIndex full(static_cast<std::size_t>(n), 0);
            std::size_t next = 0;
            for (int k = 0; k < n; ++k) {
                if (k == i) {
                    x[static_cast<std::size_t>(k)] = ab[0];
                    full[static_cast<std::size_t>(k)] = alpha[0];
                } else if (k == j) {
                    x[static_cast<std::size_t>(k)] = ab[1];
                    full[static_cast<std::size_t>(k)] = alpha[1];
                } else {
                    x[static_cast<std::size_t>(k)] = frozen[next++];
                }
            }
            return hu->derivative(full, x);
        };
        return h;
    };
    return w;
}

} // namespace colombeau
