#include "colombeau/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace colombeau {

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Negligible: return "Negligible";
        case Verdict::Moderate: return "Moderate";
        case Verdict::LogType: return "LogType";
        case Verdict::Bounded: return "Bounded";
        case Verdict::Divergent: return "Divergent";
    }
    return "Divergent";
}

std::vector<Point> profile_sample_points(const CompactBox& K, double eps) {
    std::vector<Point> pts = sample_box(K);
    std::size_t fixed = pts.size();
    for (std::size_t i = 0; i < fixed; ++i) {
        Point q = pts[i];
        for (double& c : q) c *= eps;
        if (K.contains(q)) pts.push_back(std::move(q));
    }
    return pts;
}

static double sup_at_eps(const SmoothFunctionHandle& h, const MultiIndex& alpha,
                         const std::vector<Point>& pts) {
    double m = 0.0;
    for (const Point& x : pts) m = std::max(m, std::abs(h.derivative(alpha, x)));
    return m;
}

static GrowthProfile growth_profile_impl(const NetFunction& u, const CompactBox& K,
                                         const MultiIndex& alpha, bool parallel) {
    if (static_cast<int>(alpha.size()) != u.dimension)
        throw CapabilityError("multi-index arity mismatch");
    if (order_of(alpha) > u.max_order)
        throw CapabilityError("profile order exceeds net max_order");
    GrowthProfile p;
    p.box = K;
    p.order = alpha;
    p.tail_start = u.grid.tail_start;
    const std::size_t m = u.grid.size();
    std::vector<double> sups(m, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (std::size_t i = 0; i < m; ++i) {
        double eps = u.grid.values[i];
        auto h = u.member(eps);
        sups[i] = sup_at_eps(h, alpha, profile_sample_points(K, eps));
    }
    (void)parallel;
    p.entries.reserve(m);
    for (std::size_t i = 0; i < m; ++i) p.entries.emplace_back(u.grid.values[i], sups[i]);
    return p;
}

GrowthProfile growth_profile(const NetFunction& u, const CompactBox& K,
                             const MultiIndex& alpha) {
    return growth_profile_impl(u, K, alpha, true);
}

GrowthProfile growth_profile_serial(const NetFunction& u, const CompactBox& K,
                                    const MultiIndex& alpha) {
    return growth_profile_impl(u, K, alpha, false);
}

GrowthProfile profile_from_entries(const EpsilonGrid& grid, std::vector<double> sups,
                                   std::vector<double> scale, CompactBox box,
                                   MultiIndex order) {
    if (sups.size() != grid.size()) throw ConfigError("one entry per grid value required");
    GrowthProfile p;
    p.box = std::move(box);
    p.order = std::move(order);
    p.tail_start = grid.tail_start;
    p.scale = std::move(scale);
    for (std::size_t i = 0; i < sups.size(); ++i)
        p.entries.emplace_back(grid.values[i], sups[i]);
    return p;
}

// ordinary least squares of y against x
static void ols(const std::vector<double>& x, const std::vector<double>& y, double& slope,
                double& intercept, double& rms) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    intercept = (sy - slope * sx) / n;
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double r = y[i] - (slope * x[i] + intercept);
        ss += r * r;
    }
    rms = std::sqrt(ss / n);
}

AsymptoticClass classify(const GrowthProfile& profile, const ClassifyOptions& opts) {
    AsymptoticClass out;
    out.thresholds = opts;
    if (profile.entries.empty()) throw InsufficientDataError("empty growth profile");
    if (opts.m_max < 2) throw ConfigError("m_max must be >= 2");
    const std::size_t t0 = profile.tail_start;
    if (profile.entries.size() < t0 + 4)
        throw InsufficientDataError("fewer than 4 tail points");

    std::vector<double> le, ls, ratios;
    bool all_floor = true;
    double max_sup = 0.0;
    for (std::size_t i = t0; i < profile.entries.size(); ++i) {
        double eps = profile.entries[i].first;
        double sup = profile.entries[i].second;
        double floor = opts.abs_floor;
        if (!profile.scale.empty())
            floor = std::max(floor, opts.rel_floor * profile.scale[i]);
        if (sup > floor) all_floor = false;
        max_sup = std::max(max_sup, sup);
        le.push_back(std::log(eps));
        ls.push_back(std::log(std::max(sup, floor)));
        ratios.push_back(sup / std::abs(std::log(eps)));
    }
    // (a) everything at or below the noise floor
    if (all_floor) {
        out.verdict = Verdict::Negligible;
        out.slope = 0.0;
        return out;
    }

    double intercept = 0;
    ols(le, ls, out.slope, intercept, out.residual);

    if (out.residual > opts.residual_max) {
        out.verdict = Verdict::Divergent;
        out.low_confidence = true;
        return out;
    }
    // (b) decays faster than eps^m_max
    if (out.slope >= static_cast<double>(opts.m_max) - opts.slope_tol) {
        out.verdict = Verdict::Negligible;
        return out;
    }
    // (c) sup / |log eps| constant across the tail
    double rmin = *std::min_element(ratios.begin(), ratios.end());
    double rmax = *std::max_element(ratios.begin(), ratios.end());
    if (rmin > 0.0 && rmax <= (1.0 + opts.ratio_tol) * rmin) {
        out.verdict = Verdict::LogType;
        out.log_ratio = 0.5 * (rmin + rmax);
        return out;
    }
    // (d) flat and bounded
    if (std::abs(out.slope) <= opts.slope_tol) {
        out.verdict = Verdict::Bounded;
        return out;
    }
    // (e) smallest N with slope >= -N - slope_tol
    int n = std::max(0, static_cast<int>(std::ceil(-out.slope - opts.slope_tol - 1e-12)));
    if (n <= opts.n_cap) {
        out.verdict = Verdict::Moderate;
        out.moderate_order = n;
        return out;
    }
    // (f)
    out.verdict = Verdict::Divergent;
    return out;
}

NegligibilityEvidence is_negligible(const NetFunction& u, const CompactBox& K,
                                    int max_derivative_order, const ClassifyOptions& opts) {
    if (max_derivative_order > u.max_order)
        throw CapabilityError("negligibility order exceeds net max_order");
    NegligibilityEvidence ev;
    ev.negligible = true;
    double worst = -1.0;
    for (const MultiIndex& alpha : multi_indices_up_to(u.dimension, max_derivative_order)) {
        GrowthProfile p = growth_profile(u, K, alpha);
        AsymptoticClass c = classify(p, opts);
        bool ok = c.verdict == Verdict::Negligible;
        double tail_sup = p.entries.back().second;
        // evidence: the failing profile with the largest tail sup, or the
        // largest tail sup overall when everything is negligible
        bool reset_on_first_failure = ev.negligible && !ok;
        if (reset_on_first_failure) worst = -1.0;
        if ((ev.negligible || !ok) && tail_sup > worst) {
            worst = tail_sup;
            ev.worst_alpha = alpha;
            ev.worst_profile = p;
            ev.worst_class = c;
        }
        if (!ok) ev.negligible = false;
    }
    return ev;
}

LogTypeReport log_type_check(const NetVectorField& v, const CompactBox& K,
                             const ClassifyOptions& opts) {
    LogTypeReport rep;
    rep.passed = true;
    for (int ci = 0; ci < v.dimension; ++ci) {
        const NetFunction& comp = v.components[static_cast<std::size_t>(ci)];
        if (comp.max_order < 1)
            throw CapabilityError("log-type check needs first derivatives");
        std::vector<MultiIndex> alphas{zero_index(v.dimension)};
        for (int a = 0; a < v.dimension; ++a) alphas.push_back(unit_index(v.dimension, a));
        for (const MultiIndex& alpha : alphas) {
            GrowthProfile p = growth_profile(comp, K, alpha);
            std::vector<double> ratios;
            for (std::size_t i = p.tail_start; i < p.entries.size(); ++i)
                ratios.push_back(p.entries[i].second /
                                 std::abs(std::log(p.entries[i].first)));
            // bounded iff the tail ratios never rise above the constant fitted
            // at the start of the tail
            double c = std::max(ratios.front(), opts.abs_floor);
            double worst = *std::max_element(ratios.begin(), ratios.end());
            bool ok = worst <= (1.0 + opts.ratio_tol) * c;
            if (worst > rep.worst_ratio) {
                rep.worst_ratio = worst;
                rep.fitted_constant = c;
                rep.worst_component = ci;
                rep.worst_alpha = alpha;
            }
            if (!ok) rep.passed = false;
        }
    }
    return rep;
}

} // namespace colombeau
