#ifndef COLOMBEAU_ASYMPTOTICS_HPP
#define COLOMBEAU_ASYMPTOTICS_HPP

#include <string>
#include <utility>
#include <vector>

#include "colombeau/net_core.hpp"

namespace colombeau {

// Sup of |d^alpha u_eps| over a sampled compact box, one entry per grid value.
// `scale`, when nonempty, carries a per-epsilon reference magnitude used for
// the relative noise floor of residual profiles (see ClassifyOptions).
struct GrowthProfile {
    std::vector<std::pair<double, double>> entries;  // (eps, sup)
    std::vector<double> scale;
    CompactBox box;
    MultiIndex order;
    std::size_t tail_start = 0;
};

enum class Verdict { Negligible, Moderate, LogType, Bounded, Divergent };

std::string verdict_name(Verdict v);

struct ClassifyOptions {
    int m_max = 3;
    double slope_tol = 0.15;
    double abs_floor = 1e-13;
    double ratio_tol = 0.25;
    // Entries below rel_floor * scale[i] count as zero. Residual profiles of
    // nets of magnitude eps^-N carry evaluation noise of that same magnitude
    // times machine epsilon; without a scale-relative floor the noise alone
    // would read as Moderate(N).
    double rel_floor = 1e-9;
    double residual_max = 0.5;
    int n_cap = 30;
};

struct AsymptoticClass {
    Verdict verdict = Verdict::Divergent;
    int moderate_order = 0;  // N for Moderate(N)
    double slope = 0.0;      // fitted s in sup ~ eps^s
    double residual = 0.0;   // rms residual of the log-log fit
    double log_ratio = 0.0;  // fitted C in sup ~ C |log eps| (LogType only)
    bool low_confidence = false;
    ClassifyOptions thresholds;
};

// sampled points used by growth sweeps: the tensor grid of K plus its
// eps-scaled copy (clipped to K), so features concentrating at scale eps
// stay visible to the sup
std::vector<Point> profile_sample_points(const CompactBox& K, double eps);

GrowthProfile growth_profile(const NetFunction& u, const CompactBox& K,
                             const MultiIndex& alpha);
// single-threaded reference implementation; bitwise-identical output
GrowthProfile growth_profile_serial(const NetFunction& u, const CompactBox& K,
                                    const MultiIndex& alpha);

// profile from raw entries (residual sweeps, completeness norms)
GrowthProfile profile_from_entries(const EpsilonGrid& grid,
                                   std::vector<double> sups,
                                   std::vector<double> scale,
                                   CompactBox box, MultiIndex order);

AsymptoticClass classify(const GrowthProfile& profile, const ClassifyOptions& opts = {});

struct NegligibilityEvidence {
    bool negligible = false;
    MultiIndex worst_alpha;
    GrowthProfile worst_profile;
    AsymptoticClass worst_class;
};

NegligibilityEvidence is_negligible(const NetFunction& u, const CompactBox& K,
                                    int max_derivative_order,
                                    const ClassifyOptions& opts = {});

struct LogTypeReport {
    bool passed = false;
    double worst_ratio = 0.0;
    double fitted_constant = 0.0;
    int worst_component = -1;
    MultiIndex worst_alpha;
};

// components and all first-order partials must have sup/|log eps| bounded on
// the grid tail
LogTypeReport log_type_check(const NetVectorField& v, const CompactBox& K,
                             const ClassifyOptions& opts = {});

} // namespace colombeau

#endif
