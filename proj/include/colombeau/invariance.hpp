#ifndef COLOMBEAU_INVARIANCE_HPP
#define COLOMBEAU_INVARIANCE_HPP

#include <string>
#include <vector>

#include "colombeau/asymptotics.hpp"
#include "colombeau/flow_engine.hpp"
#include "colombeau/net_core.hpp"

namespace colombeau {

enum class InvarianceMethod {
    Infinitesimal,
    FlowSampled,
    StandardRotations,
    GeneralizedRotations,
    TranslationShift,
    TranslationPartial,
    TranslationRepresentative,
};

std::string method_name(InvarianceMethod m);

// passed is a pure function of the recorded evidence and thresholds, so every
// verdict can be re-checked offline from its report
struct InvarianceVerdict {
    InvarianceMethod method = InvarianceMethod::Infinitesimal;
    bool passed = false;
    GrowthProfile evidence;        // worst residual profile
    AsymptoticClass evidence_class;
    CompactBox region;
};

// the net eps -> sum_i xi_i * d_i u. When u carries the factored radial form
// grad u = Q * x, the contraction is evaluated as Q(x) * <xi(x), x> with the
// dot product accumulated termwise, so it cancels exactly for rotation
// generators.
NetFunction lie_derivative(const NetVectorField& xi, const NetFunction& u);

InvarianceVerdict infinitesimal_test(const NetVectorField& xi, const NetFunction& u,
                                     const CompactBox& K,
                                     const ClassifyOptions& opts = {});

// residuals |u(Phi(eta, x)) - u(x)| over all (eta, point) combinations
InvarianceVerdict flow_invariance_test(const FlowNet& flow, const NetFunction& u,
                                       const std::vector<GeneralizedNumber>& etas,
                                       const std::vector<GeneralizedPoint>& points,
                                       const ClassifyOptions& opts = {});

// generalized scalar sample family: constants, eps, sqrt(eps), |log eps|,
// sin(1/eps) -- designed to separate the gallery cases
std::vector<GeneralizedNumber> default_scalar_family(const EpsilonGrid& grid);

struct RepresentativeResult {
    NetFunction representative;    // constant along the axis by construction
    NegligibilityEvidence certificate;
    AsymptoticClass difference_class;
};

// slice freeze u'(x) = u(x with x[axis] = 0); throws ConstructionError when
// the negligibility certificate for u - u' fails
RepresentativeResult build_invariant_representative(const NetFunction& u, int axis,
                                                    const CompactBox& K,
                                                    const ClassifyOptions& opts = {});

struct TranslationReport {
    InvarianceVerdict shifted;         // (i)  u(x + eta e_axis) = u(x)
    InvarianceVerdict axis_partial;    // (ii) d_axis u = 0
    InvarianceVerdict representative;  // (iii) distinguished representative exists

    bool agree() const {
        return shifted.passed == axis_partial.passed &&
               axis_partial.passed == representative.passed;
    }
};

TranslationReport translation_tests(const NetFunction& u, int axis, const CompactBox& K,
                                    const std::vector<GeneralizedNumber>& etas,
                                    const ClassifyOptions& opts = {});

// 16 classical angles; the quarter turns are applied as exact signed
// permutations
std::vector<double> default_rotation_angles();
std::vector<std::pair<int, int>> all_rotation_planes(int n);

InvarianceVerdict standard_rotation_test(const NetFunction& u, const CompactBox& K,
                                         const std::vector<double>& angles,
                                         const std::vector<std::pair<int, int>>& planes,
                                         const ClassifyOptions& opts = {});

// one generalized rotation per (plane, scalar family) combination
std::vector<std::vector<PlaneAngle>> default_generalized_angles(const EpsilonGrid& grid,
                                                                int n);

InvarianceVerdict generalized_rotation_test(const NetFunction& u, const CompactBox& K,
                                            const std::vector<std::vector<PlaneAngle>>& alphas,
                                            const ClassifyOptions& opts = {});

struct PolarReduction {
    NetFunction v;               // theta |-> u(r cos theta, r sin theta)
    bool constant = false;
    NegligibilityEvidence evidence;  // negligibility of d_theta v on [0, 2 pi]
};

PolarReduction polar_reduce_2d(const NetFunction& u, const GeneralizedNumber& r,
                               const ClassifyOptions& opts = {});

// freeze all coordinates except slots i < j at a compactly supported
// generalized point
NetFunction planar_slice(const NetFunction& u, int i, int j,
                         const GeneralizedPoint& fixed);

} // namespace colombeau

#endif
