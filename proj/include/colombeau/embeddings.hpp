#ifndef COLOMBEAU_EMBEDDINGS_HPP
#define COLOMBEAU_EMBEDDINGS_HPP

#include <map>
#include <string>
#include <vector>

#include "colombeau/net_core.hpp"

namespace colombeau {

enum class MollifierShape { RadialBump, AsymmetricBump, GaussianTruncated };
enum class Normalization { MassOne, SupOne };

struct MollifierSpec {
    int dimension = 1;
    MollifierShape shape = MollifierShape::RadialBump;
    double support_radius = 1.0;
    Normalization normalization = Normalization::SupOne;
    // asymmetric bumps are the radial profile recentered here; the default
    // (0.5, 0, ...) with radius 0.3 puts the support strictly off the origin
    // so a quarter turn maps it off itself
    Point center;
};

MollifierSpec asymmetric_bump_spec(int dimension);

// compactly supported smooth function with closed-form partials to order 2
SmoothFunctionHandle make_mollifier(const MollifierSpec& spec);

// u_eps(x) = eps^-n phi(x/eps); requires mass-one normalization
NetFunction embed_delta(const MollifierSpec& spec, const EpsilonGrid& grid);

// u_eps(x) = phi(x/eps), no prefactor; requires an asymmetric spec
NetFunction shrinking_bump(const MollifierSpec& spec, const EpsilonGrid& grid);

// generic scaling helper: eps^power_of_eps * phi(x/eps) as a net member
SmoothFunctionHandle scaled_member(const SmoothFunctionHandle& phi, double eps,
                                   int power_of_eps);

struct Gallery {
    std::map<std::string, NetFunction> functions;
    std::map<std::string, NetVectorField> fields;

    const NetFunction& function(const std::string& name) const;
    const NetVectorField& field(const std::string& name) const;
    std::vector<std::string> function_names() const;
    std::vector<std::string> field_names() const;
};

// deterministic fixture collection used by tests and the CLI
Gallery gallery(const EpsilonGrid& grid);

// rotation generator xi_ij = x_i d_j - x_j d_i as a net field (0-based plane)
NetVectorField rotation_generator(const EpsilonGrid& grid, int n, int i, int j);
// constant coordinate field d_axis
NetVectorField coordinate_field(const EpsilonGrid& grid, int n, int axis);
// c(eps) * d_axis
NetVectorField scaled_coordinate_field(const EpsilonGrid& grid, int n, int axis,
                                       std::function<double(double)> coefficient);

} // namespace colombeau

#endif
