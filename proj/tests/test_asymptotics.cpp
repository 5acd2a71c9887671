#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "colombeau/asymptotics.hpp"
#include "colombeau/embeddings.hpp"

using namespace colombeau;

namespace {

// net whose members are constant in x with value c(eps)
NetFunction level_net(const EpsilonGrid& g, std::function<double(double)> c) {
    NetFunction u;
    u.grid = g;
    u.dimension = 1;
    u.max_order = 2;
    u.member = [c](double eps) {
        double v = c(eps);
        return make_handle2(
            1, [v](const Point&) { return v; }, [](int, const Point&) { return 0.0; },
            [](int, int, const Point&) { return 0.0; });
    };
    return u;
}

const CompactBox kBox1{{{-1.0, 1.0}}};

AsymptoticClass classify_level(std::function<double(double)> c) {
    EpsilonGrid g = default_grid();
    return classify(growth_profile(level_net(g, std::move(c)), kBox1, {0}));
}

} // namespace

TEST_CASE("sample points include the eps-scaled copy") {
    CompactBox box({{-1.0, 1.0}, {-1.0, 1.0}});
    double eps = 0.03125;
    auto pts = profile_sample_points(box, eps);
    auto plain = sample_box(box);
    CHECK(pts.size() == 2 * plain.size());  // every scaled point stays inside
    bool found = false;
    for (const auto& p : pts) found = found || (p == Point{0.5 * eps, 0.0});
    CHECK(found);
}

TEST_CASE("classification of the canonical levels") {
    SUBCASE("eps^5 is negligible") {
        auto c = classify_level([](double e) { return pow_int(e, 5); });
        CHECK(c.verdict == Verdict::Negligible);
    }
    SUBCASE("eps decays but only to order zero") {
        auto c = classify_level([](double e) { return e; });
        CHECK(c.verdict == Verdict::Moderate);
        CHECK(c.moderate_order == 0);
        CHECK(c.slope == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("1/eps is moderate of order one") {
        auto c = classify_level([](double e) { return 1.0 / e; });
        CHECK(c.verdict == Verdict::Moderate);
        CHECK(c.moderate_order == 1);
        CHECK(c.slope == doctest::Approx(-1.0).epsilon(1e-9));
    }
    SUBCASE("|log eps| is log-type") {
        auto c = classify_level([](double e) { return std::abs(std::log(e)); });
        CHECK(c.verdict == Verdict::LogType);
        CHECK(c.log_ratio == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("constants are bounded") {
        auto c = classify_level([](double) { return 3.5; });
        CHECK(c.verdict == Verdict::Bounded);
    }
    SUBCASE("eps^-40 exceeds the moderateness cap") {
        auto c = classify_level([](double e) { return pow_int(e, -40); });
        CHECK(c.verdict == Verdict::Divergent);
        CHECK(!c.low_confidence);
    }
    SUBCASE("wild oscillation yields a low-confidence divergent verdict") {
        auto c = classify_level(
            [](double e) { return std::exp(3.0 * std::sin(7.0 * std::log(e))) / e; });
        CHECK(c.verdict == Verdict::Divergent);
        CHECK(c.low_confidence);
    }
}

TEST_CASE("slope shifts additively under eps powers") {
    EpsilonGrid g = default_grid();
    auto base = [](double e) { return 2.0 + std::sin(1.0 / e); };
    auto c0 = classify(growth_profile(level_net(g, base), kBox1, {0}));
    auto c1 = classify(growth_profile(
        level_net(g, [base](double e) { return e * base(e); }), kBox1, {0}));
    CHECK(c1.slope - c0.slope == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("relative noise floor suppresses scale-borne roundoff") {
    EpsilonGrid g = default_grid();
    std::vector<double> sups, scale;
    for (double e : g.values) {
        scale.push_back(1.0 / (e * e));
        sups.push_back(1e-12 / (e * e));  // fp noise at the net's own magnitude
    }
    auto with_scale = classify(profile_from_entries(g, sups, scale, kBox1, {0}));
    CHECK(with_scale.verdict == Verdict::Negligible);
    auto without = classify(profile_from_entries(g, sups, {}, kBox1, {0}));
    CHECK(without.verdict == Verdict::Moderate);
    CHECK(without.moderate_order == 2);
}

TEST_CASE("classification guards") {
    EpsilonGrid g = default_grid();
    GrowthProfile p = growth_profile(level_net(g, [](double) { return 1.0; }), kBox1, {0});
    ClassifyOptions bad;
    bad.m_max = 1;
    CHECK_THROWS_AS(classify(p, bad), ConfigError);

    GrowthProfile short_tail;
    short_tail.entries = {{0.5, 1}, {0.25, 1}, {0.125, 1}, {0.0625, 1}, {0.03125, 1}};
    short_tail.tail_start = 3;
    CHECK_THROWS_AS(classify(short_tail), InsufficientDataError);
    CHECK_THROWS_AS(classify(GrowthProfile{}), InsufficientDataError);
}

TEST_CASE("serial and parallel sweeps agree bitwise") {
    EpsilonGrid g = default_grid();
    Gallery gal = gallery(g);
    CompactBox box({{-1.0, 1.0}, {-1.0, 1.0}});
    for (const char* name : {"delta_radial_2d", "bump_asym_2d"}) {
        const NetFunction& u = gal.function(name);
        GrowthProfile a = growth_profile(u, box, {0, 0});
        GrowthProfile b = growth_profile_serial(u, box, {0, 0});
        CHECK(a.entries == b.entries);
    }
}

TEST_CASE("negligibility evidence") {
    EpsilonGrid g = default_grid();
    Gallery gal = gallery(g);
    CompactBox box({{-1.0, 1.0}, {-1.0, 1.0}});

    NegligibilityEvidence good = is_negligible(gal.function("negligible_2d"), box, 1);
    CHECK(good.negligible);

    NegligibilityEvidence bad = is_negligible(gal.function("coord_x1_2d"), box, 1);
    CHECK(!bad.negligible);
    CHECK(bad.worst_class.verdict != Verdict::Negligible);
    CHECK(bad.worst_profile.entries.back().second > 0.5);

    CHECK_THROWS_AS(is_negligible(gal.function("coord_x1_2d"), box, 5), CapabilityError);
}

TEST_CASE("log-type field check") {
    EpsilonGrid g = default_grid();
    Gallery gal = gallery(g);
    CompactBox box({{-1.0, 1.0}, {-1.0, 1.0}});
    CHECK(log_type_check(gal.field("log_dx"), box).passed);
    CHECK(log_type_check(gal.field("xi_12_rotation"), box).passed);
    LogTypeReport bad = log_type_check(gal.field("eps_inv_dx"), box);
    CHECK(!bad.passed);
    CHECK(bad.worst_component == 0);
}
