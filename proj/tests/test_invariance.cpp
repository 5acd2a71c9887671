#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "colombeau/embeddings.hpp"
#include "colombeau/invariance.hpp"

using namespace colombeau;

namespace {

const CompactBox kBox2{{{-1.0, 1.0}, {-1.0, 1.0}}};
const CompactBox kOffOrigin{{{0.5, 1.0}, {-1.0, 1.0}}};

GeneralizedPoint scaled_point(const EpsilonGrid& grid, Point direction) {
    GeneralizedPoint p;
    p.grid = grid;
    p.dimension = static_cast<int>(direction.size());
    p.bound = euclid_norm(direction) + 1.0;
    p.position = [direction](double eps) {
        Point x = direction;
        for (double& v : x) v *= eps;
        return x;
    };
    return p;
}

} // namespace

TEST_CASE("lie derivative oracles") {
    EpsilonGrid grid = default_grid();
    Gallery gal = gallery(grid);
    const NetVectorField& xi = gal.field("xi_12_rotation");

    SUBCASE("rotation generator annihilates radial nets, bitwise") {
        for (const char* name : {"radial_poly_2d", "radial_gauss_2d", "delta_radial_2d"}) {
            NetFunction lu = lie_derivative(xi, gal.function(name));
            for (double eps : {grid.values[0], grid.values[15]})
                for (Point x : {Point{0.3, 0.4}, Point{-0.7, 0.1}, Point{0.5 * eps, 0.25 * eps}})
                    CHECK(eval_net(lu, eps, x) == 0.0);
        }
    }
    SUBCASE("coordinate net rotates into minus the other coordinate") {
        NetFunction lu = lie_derivative(xi, gal.function("coord_x1_2d"));
        double eps = grid.values[3];
        CHECK(eval_net(lu, eps, {0.2, 0.7}) == -0.7);
        CHECK(eval_net(lu, eps, {-1.0, -0.4}) == 0.4);
    }
    SUBCASE("linearity") {
        NetFunction u = gal.function("coord_x1_2d");
        NetFunction w = gal.function("trans_inv_2d");
        NetFunction lhs = lie_derivative(xi, net_add(u, w));
        NetFunction rhs = net_add(lie_derivative(xi, u), lie_derivative(xi, w));
        double eps = grid.values[7];
        for (Point x : {Point{0.2, 0.7}, Point{-0.9, 0.35}})
            CHECK(eval_net(lhs, eps, x) ==
                  doctest::Approx(eval_net(rhs, eps, x)).epsilon(1e-12));
    }
    SUBCASE("the derivative of a shrinking bump is not negligible") {
        InvarianceVerdict v = infinitesimal_test(xi, gal.function("bump_asym_2d"), kBox2);
        CHECK(!v.passed);
        // order zero is eps-independent; the order-one evidence grows like 1/eps
        CHECK(v.evidence_class.verdict == Verdict::Moderate);
    }
    SUBCASE("order-two handles are refused") {
        NetFunction lu = lie_derivative(xi, gal.function("radial_poly_2d"));
        CHECK_THROWS_AS(partial(lu, grid.values[0], {1, 1}, {0.2, 0.3}), CapabilityError);
    }
}

TEST_CASE("infinitesimal tests on the gallery") {
    EpsilonGrid grid = default_grid();
    Gallery gal = gallery(grid);
    const NetVectorField& xi = gal.field("xi_12_rotation");

    CHECK(infinitesimal_test(xi, gal.function("delta_radial_2d"), kBox2).passed);
    CHECK(!infinitesimal_test(xi, gal.function("bump_asym_2d"), kBox2).passed);
    // the bump is supported near the origin, so off-origin boxes see nothing
    CHECK(infinitesimal_test(xi, gal.function("bump_asym_2d"), kOffOrigin).passed);
}

TEST_CASE("flow-sampled tests") {
    EpsilonGrid grid = default_grid();
    Gallery gal = gallery(grid);
    FlowNet rot = flow(gal.field("xi_12_rotation"), -17.0, 17.0, kBox2);
    std::vector<GeneralizedPoint> pts = {
        constant_point(grid, {1.0, 0.0}),
        constant_point(grid, {0.0, 0.0}),
        scaled_point(grid, {1.0, 0.0}),
        scaled_point(grid, {0.5, 0.0}),
    };

    SUBCASE("eta = 0 leaves an exactly zero residual") {
        std::vector<GeneralizedNumber> zero = {constant_number(grid, 0.0)};
        InvarianceVerdict v =
            flow_invariance_test(rot, gal.function("coord_x1_2d"), zero, pts);
        CHECK(v.passed);
        for (const auto& [eps, r] : v.evidence.entries) CHECK(r == 0.0);
    }
    SUBCASE("a quarter turn moves the coordinate net by order one") {
        std::vector<GeneralizedNumber> one = {constant_number(grid, 1.0)};
        InvarianceVerdict v =
            flow_invariance_test(rot, gal.function("coord_x1_2d"), one, pts);
        CHECK(!v.passed);
        CHECK(v.evidence.entries.back().second > 0.4);
    }
    SUBCASE("etas outside the flow span are refused") {
        std::vector<GeneralizedNumber> big = {constant_number(grid, 30.0)};
        CHECK_THROWS_AS(flow_invariance_test(rot, gal.function("coord_x1_2d"), big, pts),
                        ConfigError);
    }
}

TEST_CASE("infinitesimal and flow-sampled verdicts agree on the designated pairs") {
    EpsilonGrid grid = default_grid();
    Gallery gal = gallery(grid);
    std::vector<GeneralizedNumber> etas = default_scalar_family(grid);

    FlowNet rot = flow(gal.field("xi_12_rotation"), -17.0, 17.0, kBox2);
    FlowNet shift = flow(gal.field("const_dx"), -17.0, 17.0, kBox2);
    std::vector<GeneralizedPoint> pts = {
        constant_point(grid, {1.0, 0.0}),
        constant_point(grid, {0.0, 0.0}),
        constant_point(grid, {0.3, -0.6}),
        scaled_point(grid, {1.0, 0.0}),
        scaled_point(grid, {0.5, 0.0}),
    };

    struct Pair {
        const char* field;
        const char* net;
        bool expect;
    };
    const Pair pairs[] = {
        {"xi_12_rotation", "radial_poly_2d", true},
        {"xi_12_rotation", "delta_radial_2d", true},
        {"xi_12_rotation", "bump_asym_2d", false},
        {"xi_12_rotation", "coord_x1_2d", false},
        {"const_dx", "trans_inv_2d", true},
        {"const_dx", "coord_x1_2d", false},
        {"const_dx", "trans_pert_2d", true},
    };
    for (const Pair& p : pairs) {
        CAPTURE(p.field);
        CAPTURE(p.net);
        const NetFunction& u = gal.function(p.net);
        InvarianceVerdict inf = infinitesimal_test(gal.field(p.field), u, kBox2);
        const FlowNet& fl = std::string(p.field) == "const_dx" ? shift : rot;
        InvarianceVerdict sampled = flow_invariance_test(fl, u, etas, pts);
        CHECK(inf.passed == p.expect);
        CHECK(sampled.passed == p.expect);
    }
}

TEST_CASE("translation tests") {
    EpsilonGrid grid = default_grid();
    Gallery gal = gallery(grid);
    std::vector<GeneralizedNumber> etas = default_scalar_family(grid);

    SUBCASE("the three characterizations agree across the gallery") {
        struct Case {
            const char* net;
            bool expect;
        };
        const Case cases[] = {
            {"trans_inv_2d", true},   {"trans_pert_2d", true}, {"negligible_2d", true},
            {"const_one_2d", true},   {"coord_x1_2d", false},  {"delta_radial_2d", false},
            {"bump_asym_2d", false},  {"eps_x1_2d", false},
        };
        for (const Case& c : cases) {
            CAPTURE(c.net);
            TranslationReport rep = translation_tests(gal.function(c.net), 0, kBox2, etas);
            CHECK(rep.agree());
            CHECK(rep.shifted.passed == c.expect);
        }
    }
    SUBCASE("the perturbed net certifies with a steep difference") {
        // drop the noise floors so the fit measures the actual decay rate
        ClassifyOptions exact;
        exact.abs_floor = 1e-300;
        exact.rel_floor = 1e-300;
        TranslationReport rep =
            translation_tests(gal.function("trans_pert_2d"), 0, kBox2, etas, exact);
        CHECK(rep.representative.passed);
        CHECK(rep.representative.evidence_class.slope >= 3.0);
    }
    SUBCASE("axis out of range") {
        CHECK_THROWS_AS(translation_tests(gal.function("trans_inv_2d"), 2, kBox2, etas),
                        ConfigError);
    }
}

TEST_CASE("distinguished representatives") {
    EpsilonGrid grid = default_grid();
    Gallery gal = gallery(grid);

    SUBCASE("the perturbed net flattens to its slice") {
        RepresentativeResult r =
            build_invariant_representative(gal.function("trans_pert_2d"), 0, kBox2);
        CHECK(r.certificate.negligible);
        CHECK(r.difference_class.verdict == Verdict::Negligible);
        double eps = grid.values[12];
        for (Point x : {Point{0.3, 0.8}, Point{-0.9, -0.1}}) {
            CHECK(partial(r.representative, eps, {1, 0}, x) == 0.0);  // axis-constant
            CHECK(eval_net(r.representative, eps, x) == x[1]);
        }
    }
    SUBCASE("an invariant net is its own slice") {
        RepresentativeResult r =
            build_invariant_representative(gal.function("trans_inv_2d"), 0, kBox2);
        GrowthProfile diff = r.certificate.worst_profile;
        for (const auto& [eps, sup] : diff.entries) CHECK(sup == 0.0);
    }
    SUBCASE("a genuinely varying net is rejected") {
        CHECK_THROWS_AS(build_invariant_representative(gal.function("coord_x1_2d"), 0, kBox2),
                        ConstructionError);
        CHECK_THROWS_AS(build_invariant_representative(gal.function("coord_x1_2d"), 5, kBox2),
                        ConfigError);
    }
}

TEST_CASE("rotation tests") {
    EpsilonGrid grid = default_grid();
    Gallery gal = gallery(grid);
    std::vector<double> angles = default_rotation_angles();
    auto planes2 = all_rotation_planes(2);

    SUBCASE("the radial delta passes") {
        InvarianceVerdict v =
            standard_rotation_test(gal.function("delta_radial_2d"), kBox2, angles, planes2);
        CHECK(v.passed);
    }
    SUBCASE("the shrinking bump fails with an eps-independent residual") {
        InvarianceVerdict v =
            standard_rotation_test(gal.function("bump_asym_2d"), kBox2, angles, planes2);
        CHECK(!v.passed);
        CHECK(v.evidence_class.verdict == Verdict::Bounded);
        const auto& e = v.evidence.entries;
        for (std::size_t i = v.evidence.tail_start; i < e.size(); ++i)
            CHECK(e[i].second == e[v.evidence.tail_start].second);
    }
    SUBCASE("localization: off-origin boxes see an exactly zero residual") {
        InvarianceVerdict std_v = standard_rotation_test(gal.function("bump_asym_2d"),
                                                         kOffOrigin, angles, planes2);
        CHECK(std_v.passed);
        for (const auto& [eps, r] : std_v.evidence.entries) CHECK(r == 0.0);
        InvarianceVerdict gen_v = generalized_rotation_test(
            gal.function("bump_asym_2d"), kOffOrigin, default_generalized_angles(grid, 2));
        CHECK(gen_v.passed);
        for (const auto& [eps, r] : gen_v.evidence.entries) CHECK(r == 0.0);
    }
    SUBCASE("one-dimensional nets are rejected") {
        CHECK_THROWS_AS(
            standard_rotation_test(gal.function("delta_radial_1d"),
                                   CompactBox({{-1.0, 1.0}}), angles, {}),
            ConfigError);
    }
}

TEST_CASE("standard and generalized rotation verdicts agree across the gallery") {
    EpsilonGrid grid = default_grid();
    Gallery gal = gallery(grid);
    std::vector<double> angles = default_rotation_angles();

    SUBCASE("two dimensions") {
        auto planes = all_rotation_planes(2);
        auto gen = default_generalized_angles(grid, 2);
        for (const char* name :
             {"delta_radial_2d", "bump_asym_2d", "radial_poly_2d", "radial_gauss_2d",
              "coord_x1_2d", "trans_inv_2d", "trans_pert_2d", "negligible_2d",
              "const_one_2d", "lognet_2d", "eps_x1_2d"}) {
            CAPTURE(name);
            const NetFunction& u = gal.function(name);
            InvarianceVerdict a = standard_rotation_test(u, kBox2, angles, planes);
            InvarianceVerdict b = generalized_rotation_test(u, kBox2, gen);
            CHECK(a.passed == b.passed);
        }
    }
    SUBCASE("three dimensions") {
        CompactBox box3({{-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}}, 9);
        auto planes = all_rotation_planes(3);
        auto gen = default_generalized_angles(grid, 3);
        for (const char* name : {"delta_radial_3d", "radial_poly_3d", "coord_x1_3d"}) {
            CAPTURE(name);
            const NetFunction& u = gal.function(name);
            InvarianceVerdict a = standard_rotation_test(u, box3, angles, planes);
            InvarianceVerdict b = generalized_rotation_test(u, box3, gen);
            CHECK(a.passed == b.passed);
            bool expect = std::string(name) != "coord_x1_3d";
            CHECK(a.passed == expect);
        }
    }
}

TEST_CASE("polar reduction") {
    EpsilonGrid grid = default_grid();
    Gallery gal = gallery(grid);

    SUBCASE("the squared norm restricts to an exact constant") {
        PolarReduction red =
            polar_reduce_2d(gal.function("radial_poly_2d"), constant_number(grid, 2.0));
        CHECK(red.constant);
        for (const auto& [eps, r] : red.evidence.worst_profile.entries) CHECK(r == 0.0);
        double eps = grid.values[1];
        for (double theta : {0.0, 0.37, 2.5})
            CHECK(eval_net(red.v, eps, {theta}) == doctest::Approx(4.0).epsilon(1e-12));
    }
    SUBCASE("the delta on its own scale is constant, exactly") {
        GeneralizedNumber r{grid, [](double eps) { return 0.5 * eps; }};
        PolarReduction red = polar_reduce_2d(gal.function("delta_radial_2d"), r);
        CHECK(red.constant);
        for (const auto& [eps, res] : red.evidence.worst_profile.entries) CHECK(res == 0.0);
    }
    SUBCASE("a circle through the bump support is not constant") {
        GeneralizedNumber r{grid, [](double eps) { return 0.5 * eps; }};
        PolarReduction red = polar_reduce_2d(gal.function("bump_asym_2d"), r);
        CHECK(!red.constant);
    }
    SUBCASE("a coordinate restricts to a cosine") {
        PolarReduction red =
            polar_reduce_2d(gal.function("coord_x1_2d"), constant_number(grid, 1.0));
        CHECK(!red.constant);
        CHECK(eval_net(red.v, grid.values[0], {0.0}) == 1.0);
    }
    SUBCASE("negative radii are refused") {
        CHECK_THROWS_AS(polar_reduce_2d(gal.function("radial_poly_2d"),
                                        constant_number(grid, -1.0)),
                        ConfigError);
    }
}

TEST_CASE("planar slices") {
    EpsilonGrid grid = default_grid();
    Gallery gal = gallery(grid);

    SUBCASE("the squared norm slices to a shifted paraboloid") {
        NetFunction w =
            planar_slice(gal.function("radial_poly_3d"), 0, 1, constant_point(grid, {1.0}));
        double eps = grid.values[2];
        CHECK(eval_net(w, eps, {0.5, -0.25}) ==
              doctest::Approx(0.5 * 0.5 + 0.25 * 0.25 + 1.0).epsilon(1e-12));
    }
    SUBCASE("a central slice of the radial delta stays rotation invariant") {
        NetFunction w =
            planar_slice(gal.function("delta_radial_3d"), 0, 1, constant_point(grid, {0.0}));
        InvarianceVerdict v = standard_rotation_test(w, kBox2, default_rotation_angles(),
                                                     all_rotation_planes(2));
        CHECK(v.passed);
    }
    SUBCASE("slices at runaway generalized points are refused at evaluation") {
        GeneralizedPoint runaway;
        runaway.grid = grid;
        runaway.dimension = 1;
        runaway.bound = 10.0;
        runaway.position = [](double eps) { return Point{1.0 / eps}; };
        NetFunction w = planar_slice(gal.function("radial_poly_3d"), 0, 1, runaway);
        CHECK_THROWS_AS(eval_net(w, grid.values.back(), {0.0, 0.0}), InvariantViolation);
    }
    SUBCASE("configuration guards") {
        CHECK_THROWS_AS(
            planar_slice(gal.function("radial_poly_2d"), 0, 1, constant_point(grid, {})),
            ConfigError);
        CHECK_THROWS_AS(
            planar_slice(gal.function("radial_poly_3d"), 1, 1, constant_point(grid, {0.0})),
            ConfigError);
    }
}
