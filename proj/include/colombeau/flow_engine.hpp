#ifndef COLOMBEAU_FLOW_ENGINE_HPP
#define COLOMBEAU_FLOW_ENGINE_HPP

#include <functional>
#include <optional>
#include <vector>

#include "colombeau/asymptotics.hpp"
#include "colombeau/net_core.hpp"

namespace colombeau {

// dense row-major n x n matrix, n <= 4 in practice
struct Mat {
    int n = 0;
    std::vector<double> a;

    static Mat identity(int n);
    static Mat zero(int n);
    double& at(int r, int c) { return a[static_cast<std::size_t>(r * n + c)]; }
    double at(int r, int c) const { return a[static_cast<std::size_t>(r * n + c)]; }
};

Mat mat_mul(const Mat& x, const Mat& y);
Point mat_vec(const Mat& m, const Point& x);
// scaling-and-squaring matrix exponential, Taylor core
Mat mat_exp(const Mat& m);

// ---------------------------------------------------------------------------

struct CompletenessReport {
    bool globally_bounded = false;
    double bound_estimate = 0.0;
    AsymptoticClass bound_class;
    bool derivatives_log_type = false;
    double worst_log_ratio = 0.0;
    double log_type_constant = 0.0;  // fitted C: |d xi| <= C |log eps|
    std::string metric = "euclidean";

    bool complete() const { return globally_bounded && derivatives_log_type; }
};

struct FlowOptions {
    double h0 = 1e-3;
    CompactBox safety_box;      // default [-1e3, 1e3]^n, set when empty
    bool override_completeness = false;
    double log_step_factor = 1.0;  // fitted log-type constant for step shrinking
};

CompactBox default_safety_box(int n);
CompactBox default_global_box(int n);

CompletenessReport check_completeness(const NetVectorField& xi, const CompactBox& K,
                                      const CompactBox& global_box);

struct TrajectoryNet {
    EpsilonGrid grid;
    double t0 = 0.0;
    double t1 = 0.0;
    std::vector<double> mesh;                   // shared across eps
    std::vector<std::vector<Point>> states;     // [eps index][mesh index]
    std::vector<double> step_size;              // per-eps RK4 step actually used
};

// classical fixed-step RK4 per eps; the report (when given) supplies the
// log-type constant used to shrink steps for |log eps|-sized fields
TrajectoryNet solve_ivp(const NetVectorField& xi, const GeneralizedPoint& x0, double t0,
                        double t1, const FlowOptions& opts = {},
                        const CompletenessReport* report = nullptr);

struct FlowNet {
    EpsilonGrid grid;
    int dimension = 0;
    double t_min = 0.0;
    double t_max = 0.0;
    CompactBox seed_box;
    double c_bounded_record = 0.0;
    bool c_bounded_ok = true;
    // evaluate Phi_eps(t, x); t == 0 returns x unchanged
    std::function<Point(std::size_t eps_index, double t, const Point&)> map;
};

FlowNet flow(const NetVectorField& xi, double t_min, double t_max,
             const CompactBox& seed_box, const FlowOptions& opts = {},
             const CompletenessReport* report = nullptr);

// Phi(t, x) = exp(tA) x as an eps-independent flow
FlowNet linear_flow(const Mat& A, const EpsilonGrid& grid);

struct GroupLawReport {
    GrowthProfile residual;
    double tolerance = 1e-6;
    bool passed = false;
};

GroupLawReport verify_group_law(const FlowNet& flow, double t, double s,
                                const std::vector<Point>& points,
                                double tolerance = 1e-6);

struct RotationNet {
    EpsilonGrid grid;
    int dimension = 0;
    std::function<Mat(double eps)> member;
};

struct PlaneAngle {
    int i = 0;
    int j = 1;
    GeneralizedNumber angle;
};

// per-eps exp of the skew matrix sum alpha_ij (E_ji - E_ij); every member is
// orthogonal with determinant 1 up to roundoff
RotationNet generalized_rotation(const std::vector<PlaneAngle>& alphas, int n,
                                 const EpsilonGrid& grid);

} // namespace colombeau

#endif
