#ifndef COLOMBEAU_REDUCTION_HPP
#define COLOMBEAU_REDUCTION_HPP

#include <string>

#include "colombeau/asymptotics.hpp"
#include "colombeau/net_core.hpp"

namespace colombeau {

struct ReductionResult {
    NetFunction v;                         // reduced net on the radius variable
    std::string invariant_map = "|x|";     // the complete rotation invariant
    GrowthProfile residual;                // sup_K |u(x) - v(|x|)| per eps
    AsymptoticClass residual_class;
    bool certified = false;                // residual classified Negligible
};

// v(r) := u(r, 0, ..., 0), extended evenly to r < 0 so handles stay total.
// Radial nets evaluated norm-first reproduce u(x) = v(|x|) bitwise.
NetFunction radial_profile(const NetFunction& u);

ReductionResult verify_reduction(const NetFunction& u, const NetFunction& v,
                                 const CompactBox& K, const ClassifyOptions& opts = {});

} // namespace colombeau

#endif
