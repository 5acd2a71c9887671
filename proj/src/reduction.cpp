#include "colombeau/reduction.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace colombeau {

NetFunction radial_profile(const NetFunction& u) {
    if (u.dimension < 2) throw ConfigError("radial_profile needs dimension >= 2");
    const int n = u.dimension;

    NetFunction v;
    v.grid = u.grid;
    v.dimension = 1;
    v.max_order = u.max_order;
    v.member = [u, n](double eps) {
        auto hu = std::make_shared<SmoothFunctionHandle>(u.member(eps));
        SmoothFunctionHandle h;
        h.arity = 1;
        h.max_order = u.max_order;
        h.derivative = [hu, n](const MultiIndex& alpha, const Point& r) {
            const double sign = r[0] < 0.0 ? -1.0 : 1.0;
            Point x(static_cast<std::size_t>(n), 0.0);
            x[0] = std::abs(r[0]);
            MultiIndex full(static_cast<std::size_t>(n), 0);
            full[0] = alpha[0];
            double d = hu->derivative(full, x);
            return alpha[0] % 2 == 1 ? sign * d : d;
        };
        return h;
    };
    return v;
}

ReductionResult verify_reduction(const NetFunction& u, const NetFunction& v,
                                 const CompactBox& K, const ClassifyOptions& opts) {
    if (!u.grid.same_as(v.grid)) throw ConfigError("verify_reduction: grid mismatch");
    if (v.dimension != 1) throw ConfigError("verify_reduction: v must live on the radius");

    const std::size_t m = u.grid.size();
    std::vector<double> res(m, 0.0), scale(m, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::size_t e = 0; e < m; ++e) {
        double eps = u.grid.values[e];
        SmoothFunctionHandle hu = u.member(eps);
        SmoothFunctionHandle hv = v.member(eps);
        MultiIndex zero_n = zero_index(u.dimension), zero_1 = zero_index(1);
        double worst = 0.0, sc = 0.0;
        for (const Point& x : profile_sample_points(K, eps)) {
            double a = hu.derivative(zero_n, x);
            double b = hv.derivative(zero_1, Point{euclid_norm(x)});
            sc = std::max(sc, std::abs(a));
            worst = std::max(worst, std::abs(a - b));
        }
        res[e] = worst;
        scale[e] = sc;
    }
    ReductionResult out;
    out.v = v;
    out.residual = profile_from_entries(u.grid, std::move(res), std::move(scale), K,
                                        zero_index(u.dimension));
    out.residual_class = classify(out.residual, opts);
    out.certified = out.residual_class.verdict == Verdict::Negligible;
    return out;
}

} // namespace colombeau
