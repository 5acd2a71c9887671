#include "colombeau/flow_engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace colombeau {

Mat Mat::identity(int n) {
    Mat m = Mat::zero(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

Mat Mat::zero(int n) {
    Mat m;
    m.n = n;
    m.a.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    return m;
}

Mat mat_mul(const Mat& x, const Mat& y) {
    Mat r = Mat::zero(x.n);
    for (int i = 0; i < x.n; ++i)
        for (int k = 0; k < x.n; ++k) {
            double v = x.at(i, k);
            if (v == 0.0) continue;
            for (int j = 0; j < x.n; ++j) r.at(i, j) += v * y.at(k, j);
        }
    return r;
}

Point mat_vec(const Mat& m, const Point& x) {
    Point r(static_cast<std::size_t>(m.n), 0.0);
    for (int i = 0; i < m.n; ++i) {
        double s = 0.0;
        for (int j = 0; j < m.n; ++j) s += m.at(i, j) * x[static_cast<std::size_t>(j)];
        r[static_cast<std::size_t>(i)] = s;
    }
    return r;
}

static double mat_norm_inf(const Mat& m) {
    double best = 0.0;
    for (int i = 0; i < m.n; ++i) {
        double row = 0.0;
        for (int j = 0; j < m.n; ++j) row += std::abs(m.at(i, j));
        best = std::max(best, row);
    }
    return best;
}

Mat mat_exp(const Mat& m) {
    double norm = mat_norm_inf(m);
    int s = 0;
    while (norm > 0.5) {
        norm *= 0.5;
        ++s;
    }
    Mat b = m;
    double scale = pow_int(2.0, -s);
    for (double& v : b.a) v *= scale;

    Mat sum = Mat::identity(m.n);
    Mat term = Mat::identity(m.n);
    for (int k = 1; k <= 30; ++k) {
        term = mat_mul(term, b);
        for (double& v : term.a) v /= k;
        for (std::size_t i = 0; i < sum.a.size(); ++i) sum.a[i] += term.a[i];
        if (mat_norm_inf(term) < 1e-19) break;
    }
    for (int i = 0; i < s; ++i) sum = mat_mul(sum, sum);
    return sum;
}

// ---------------------------------------------------------------------------

CompactBox default_safety_box(int n) {
    std::vector<std::array<double, 2>> iv(static_cast<std::size_t>(n),
                                          std::array<double, 2>{-1e3, 1e3});
    return CompactBox(std::move(iv), 9);
}

CompactBox default_global_box(int n) {
    std::vector<std::array<double, 2>> iv(static_cast<std::size_t>(n),
                                          std::array<double, 2>{-10.0, 10.0});
    return CompactBox(std::move(iv));
}

CompletenessReport check_completeness(const NetVectorField& xi, const CompactBox& K,
                                      const CompactBox& global_box) {
    for (const auto& c : xi.components)
        if (c.max_order < 1) throw CapabilityError("completeness check needs max_order >= 1");

    CompletenessReport rep;

    // sup of the Euclidean field norm over the global box, per eps
    std::vector<double> sups(xi.grid.size(), 0.0);
    const std::size_t m = xi.grid.size();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::size_t e = 0; e < m; ++e) {
        double eps = xi.grid.values[e];
        std::vector<SmoothFunctionHandle> hs;
        for (const auto& c : xi.components) hs.push_back(c.member(eps));
        double sup = 0.0;
        for (const Point& x : profile_sample_points(global_box, eps)) {
            Point v(hs.size());
            for (std::size_t i = 0; i < hs.size(); ++i) v[i] = hs[i].value(x);
            sup = std::max(sup, euclid_norm(v));
        }
        sups[e] = sup;
    }
    GrowthProfile norm_profile = profile_from_entries(xi.grid, sups, {}, global_box,
                                                      zero_index(xi.dimension));
    rep.bound_class = classify(norm_profile);
    rep.bound_estimate = *std::max_element(sups.begin(), sups.end());
    rep.globally_bounded = rep.bound_class.verdict == Verdict::Negligible ||
                           rep.bound_class.verdict == Verdict::Bounded ||
                           (rep.bound_class.verdict == Verdict::Moderate &&
                            rep.bound_class.slope >= 0.0);

    LogTypeReport lt = log_type_check(xi, K);
    rep.derivatives_log_type = lt.passed;
    rep.worst_log_ratio = lt.worst_ratio;
    // step shrinking is only warranted when the field really grows like
    // |log eps|; bounded fields keep a uniform step so residuals stay
    // comparable across the grid
    rep.log_type_constant =
        rep.bound_class.verdict == Verdict::LogType ? rep.bound_class.log_ratio : 0.0;
    return rep;
}

// ---------------------------------------------------------------------------

namespace {

using FieldEval = std::function<void(const Point&, Point&)>;

FieldEval make_field_eval(const NetVectorField& xi, double eps) {
    auto handles = std::make_shared<std::vector<SmoothFunctionHandle>>();
    for (const auto& c : xi.components) handles->push_back(c.member(eps));
    MultiIndex zero = zero_index(xi.dimension);
    return [handles, zero](const Point& x, Point& out) {
        for (std::size_t i = 0; i < handles->size(); ++i)
            out[i] = (*handles)[i].derivative(zero, x);
    };
}

void check_safety(const Point& x, const CompactBox& safety, double eps, double t) {
    if (!safety.contains(x)) {
        std::ostringstream os;
        os << "trajectory escaped safety box at eps = " << eps << ", t = " << t;
        throw BlowUpError(os.str(), eps, t);
    }
}

// one classical RK4 step
void rk4_step(const FieldEval& f, Point& x, double dt, Point& k1, Point& k2, Point& k3,
              Point& k4, Point& tmp) {
    const std::size_t n = x.size();
    f(x, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * dt * k1[i];
    f(tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * dt * k2[i];
    f(tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + dt * k3[i];
    f(tmp, k4);
    for (std::size_t i = 0; i < n; ++i)
        x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

Point rk4_integrate(const FieldEval& f, Point x, double a, double b, double h,
                    const CompactBox& safety, double eps) {
    if (b == a) return x;
    long long steps = std::max<long long>(1, static_cast<long long>(std::ceil(std::abs(b - a) / h)));
    double dt = (b - a) / static_cast<double>(steps);
    const std::size_t n = x.size();
    Point k1(n), k2(n), k3(n), k4(n), tmp(n);
    for (long long s = 0; s < steps; ++s) {
        rk4_step(f, x, dt, k1, k2, k3, k4, tmp);
        check_safety(x, safety, eps, a + dt * static_cast<double>(s + 1));
    }
    return x;
}

double step_for_eps(double h0, double eps, double log_constant) {
    double factor = std::max(1.0, log_constant * std::abs(std::log(eps)));
    return h0 / factor;
}

struct CapturedBlowUp {
    bool set = false;
    std::string msg;
    double eps = 0.0;
    double t = 0.0;
};

} // namespace

TrajectoryNet solve_ivp(const NetVectorField& xi, const GeneralizedPoint& x0, double t0,
                        double t1, const FlowOptions& opts,
                        const CompletenessReport* report) {
    if (x0.dimension != xi.dimension) throw ConfigError("initial point dimension mismatch");
    if (!x0.grid.same_as(xi.grid)) throw ConfigError("initial point grid mismatch");
    CompletenessReport local;
    if (report == nullptr && !opts.override_completeness) {
        local = check_completeness(xi, default_global_box(xi.dimension),
                                   default_global_box(xi.dimension));
        report = &local;
    }
    if (report && !report->complete() && !opts.override_completeness)
        throw ConfigError("vector field failed the completeness check; "
                          "pass override_completeness to integrate anyway");
    double log_c = report ? report->log_type_constant : opts.log_step_factor;

    CompactBox safety =
        opts.safety_box.dimension() == 0 ? default_safety_box(xi.dimension) : opts.safety_box;

    TrajectoryNet traj;
    traj.grid = xi.grid;
    traj.t0 = t0;
    traj.t1 = t1;
    long long mesh_steps =
        std::max<long long>(1, static_cast<long long>(std::ceil(std::abs(t1 - t0) / opts.h0)));
    for (long long k = 0; k <= mesh_steps; ++k)
        traj.mesh.push_back(t0 + (t1 - t0) * static_cast<double>(k) /
                                     static_cast<double>(mesh_steps));
    traj.states.assign(xi.grid.size(), {});
    traj.step_size.assign(xi.grid.size(), 0.0);

    const std::size_t m = xi.grid.size();
    std::vector<CapturedBlowUp> errors(m);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::size_t e = 0; e < m; ++e) {
        try {
            double eps = xi.grid.values[e];
            double h = step_for_eps(opts.h0, eps, log_c);
            traj.step_size[e] = h;
            FieldEval f = make_field_eval(xi, eps);
            Point x = point_at(x0, eps);
            std::vector<Point> states;
            states.push_back(x);
            for (std::size_t k = 1; k < traj.mesh.size(); ++k) {
                x = rk4_integrate(f, std::move(x), traj.mesh[k - 1], traj.mesh[k], h,
                                  safety, eps);
                states.push_back(x);
            }
            traj.states[e] = std::move(states);
        } catch (const BlowUpError& err) {
            errors[e] = {true, err.what(), err.eps, err.t};
        }
    }
    for (const auto& err : errors)
        if (err.set) throw BlowUpError(err.msg, err.eps, err.t);
    return traj;
}

FlowNet flow(const NetVectorField& xi, double t_min, double t_max,
             const CompactBox& seed_box, const FlowOptions& opts,
             const CompletenessReport* report) {
    CompletenessReport local;
    if (report == nullptr && !opts.override_completeness) {
        local = check_completeness(xi, seed_box, default_global_box(xi.dimension));
        report = &local;
    }
    if (report && !report->complete() && !opts.override_completeness)
        throw ConfigError("vector field failed the completeness check; "
                          "pass override_completeness to integrate anyway");
    double log_c = report ? report->log_type_constant : opts.log_step_factor;
    CompactBox safety =
        opts.safety_box.dimension() == 0 ? default_safety_box(xi.dimension) : opts.safety_box;

    FlowNet fl;
    fl.grid = xi.grid;
    fl.dimension = xi.dimension;
    fl.t_min = t_min;
    fl.t_max = t_max;
    fl.seed_box = seed_box;

    auto evals = std::make_shared<std::vector<FieldEval>>();
    std::vector<double> steps;
    for (double eps : xi.grid.values) {
        evals->push_back(make_field_eval(xi, eps));
        steps.push_back(step_for_eps(opts.h0, eps, log_c));
    }
    fl.map = [evals, steps, safety, grid = xi.grid](std::size_t e, double t,
                                                    const Point& x) {
        if (t == 0.0) return x;  // identity law, bitwise
        return rk4_integrate((*evals)[e], x, 0.0, t, steps[e], safety, grid.values[e]);
    };

    // c-boundedness sweep on a coarse subsample of the seed box
    CompactBox sweep_box(seed_box.intervals, 9);
    std::vector<Point> all_pts = sample_box(sweep_box);
    std::vector<Point> pts;
    std::size_t stride = std::max<std::size_t>(1, all_pts.size() / 24);
    for (std::size_t i = 0; i < all_pts.size(); i += stride) pts.push_back(all_pts[i]);
    std::vector<double> times;
    if (t_min != 0.0) times.push_back(t_min);
    if (t_max != 0.0) times.push_back(t_max);
    const std::size_t m = xi.grid.size();
    std::vector<double> records(m, 0.0);
    std::vector<int> escaped(m, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::size_t e = 0; e < m; ++e) {
        double rec = 0.0;
        try {
            for (double t : times)
                for (const Point& x : pts)
                    rec = std::max(rec, euclid_norm(fl.map(e, t, x)));
        } catch (const BlowUpError&) {
            escaped[e] = 1;
        }
        records[e] = rec;
    }
    for (std::size_t e = 0; e < m; ++e) {
        fl.c_bounded_record = std::max(fl.c_bounded_record, records[e]);
        if (escaped[e]) fl.c_bounded_ok = false;
    }
    return fl;
}

FlowNet linear_flow(const Mat& A, const EpsilonGrid& grid) {
    for (double v : A.a)
        if (!std::isfinite(v)) throw ConfigError("linear flow needs a finite matrix");
    FlowNet fl;
    fl.grid = grid;
    fl.dimension = A.n;
    fl.t_min = -1e6;
    fl.t_max = 1e6;
    std::vector<std::array<double, 2>> iv(static_cast<std::size_t>(A.n),
                                          std::array<double, 2>{-1.0, 1.0});
    fl.seed_box = CompactBox(std::move(iv));
    fl.map = [A](std::size_t, double t, const Point& x) {
        if (t == 0.0) return x;
        Mat tA = A;
        for (double& v : tA.a) v *= t;
        return mat_vec(mat_exp(tA), x);
    };
    fl.c_bounded_ok = true;
    return fl;
}

GroupLawReport verify_group_law(const FlowNet& fl, double t, double s,
                                const std::vector<Point>& points, double tolerance) {
    if (t + s < fl.t_min || t + s > fl.t_max || t < fl.t_min || t > fl.t_max ||
        s < fl.t_min || s > fl.t_max)
        throw ConfigError("group-law times outside the flow span");
    const std::size_t m = fl.grid.size();
    std::vector<double> res(m, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::size_t e = 0; e < m; ++e) {
        double worst = 0.0;
        for (const Point& x : points) {
            Point lhs = fl.map(e, t + s, x);
            Point rhs = fl.map(e, t, fl.map(e, s, x));
            for (std::size_t i = 0; i < lhs.size(); ++i)
                worst = std::max(worst, std::abs(lhs[i] - rhs[i]));
        }
        res[e] = worst;
    }
    GroupLawReport rep;
    rep.tolerance = tolerance;
    rep.residual = profile_from_entries(fl.grid, res, {}, fl.seed_box,
                                        zero_index(fl.dimension));
    rep.passed = true;
    for (const auto& [eps, r] : rep.residual.entries)
        if (r > tolerance) rep.passed = false;
    return rep;
}

RotationNet generalized_rotation(const std::vector<PlaneAngle>& alphas, int n,
                                 const EpsilonGrid& grid) {
    for (const auto& pa : alphas)
        if (!(0 <= pa.i && pa.i < pa.j && pa.j < n))
            throw ConfigError("rotation plane requires 0 <= i < j < n");
    RotationNet rot;
    rot.grid = grid;
    rot.dimension = n;
    rot.member = [alphas, n](double eps) {
        Mat skew = Mat::zero(n);
        for (const auto& pa : alphas) {
            double a = pa.angle.value(eps);
            skew.at(pa.j, pa.i) += a;
            skew.at(pa.i, pa.j) -= a;
        }
        return mat_exp(skew);
    };
    return rot;
}

} // namespace colombeau
