#include "colombeau/scenario.hpp"

#include <cctype>
#include <filesystem>
#include <iostream>

#include "colombeau/expr.hpp"
#include "colombeau/flow_engine.hpp"
#include "colombeau/invariance.hpp"
#include "colombeau/reduction.hpp"
#include "colombeau/report.hpp"

namespace colombeau {

using nlohmann::json;

namespace {

CompactBox box_from_json(const json& j) {
    std::vector<std::array<double, 2>> iv;
    for (const auto& pair : j)
        iv.push_back({pair.at(0).get<double>(), pair.at(1).get<double>()});
    return CompactBox(std::move(iv));
}

CompactBox default_box(int dim) {
    return CompactBox(std::vector<std::array<double, 2>>(
        static_cast<std::size_t>(dim), std::array<double, 2>{-1.0, 1.0}));
}

ClassifyOptions options_from(const json& params) {
    ClassifyOptions opts;
    if (params.contains("m_max")) opts.m_max = params.at("m_max").get<int>();
    return opts;
}

std::string sanitize(const std::string& name) {
    std::string out;
    for (char c : name)
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ? c : '_';
    return out;
}

struct TaskContext {
    const Scenario& scenario;
    Gallery gallery_items;
    std::filesystem::path out;
    bool all_passed = true;

    std::vector<std::pair<std::string, NetFunction>> targets(const json& params) const {
        if (params.contains("item")) {
            std::string name = params.at("item").get<std::string>();
            for (const auto& it : scenario.items)
                if (it.first == name) return {it};
            throw LookupError("task references unknown item: " + name);
        }
        return scenario.items;
    }

    void emit(const std::string& stem, const json& report, const std::string& csv_name,
              const std::string& csv) const {
        write_text_file((out / (stem + ".json")).string(), report.dump(2) + "\n");
        if (!csv.empty()) write_text_file((out / csv_name).string(), csv);
    }
};

void run_classify(TaskContext& ctx, std::size_t idx, const json& params) {
    for (const auto& [name, net] : ctx.targets(params)) {
        CompactBox box = params.contains("box") ? box_from_json(params.at("box"))
                                                : default_box(net.dimension);
        MultiIndex order = zero_index(net.dimension);
        if (params.contains("order")) order = params.at("order").get<MultiIndex>();
        GrowthProfile profile = growth_profile(net, box, order);
        AsymptoticClass cls = classify(profile, options_from(params));
        json payload{{"item", name},
                     {"order", order},
                     {"profile", json_of(profile)},
                     {"classification", json_of(cls)}};
        std::string stem = "classify_" + std::to_string(idx) + "_" + sanitize(name);
        ctx.emit(stem, report_envelope("classify", payload), stem + ".csv",
                 csv_profile(profile));
    }
}

void run_flow_task(TaskContext& ctx, std::size_t idx, const json& params) {
    std::string field_name = params.at("field").get<std::string>();
    const NetVectorField& xi = ctx.gallery_items.field(field_name);
    Point x0 = params.at("x0").get<Point>();
    double t1 = params.at("t").get<double>();
    double t0 = params.value("t0", 0.0);
    FlowOptions opts;
    opts.h0 = params.value("h0", opts.h0);
    opts.override_completeness = params.value("override", false);
    CompletenessReport rep = check_completeness(xi, default_box(xi.dimension),
                                                default_global_box(xi.dimension));
    TrajectoryNet traj = solve_ivp(xi, constant_point(xi.grid, x0), t0, t1, opts, &rep);
    json payload{{"field", field_name},
                 {"x0", x0},
                 {"span", {t0, t1}},
                 {"completeness", json_of(rep)}};
    std::string stem = "flow_" + std::to_string(idx) + "_" + sanitize(field_name);
    ctx.emit(stem, report_envelope("flow", payload), stem + ".csv", csv_trajectory(traj));
    if (!rep.complete() && !opts.override_completeness) ctx.all_passed = false;
}

void run_invariance(TaskContext& ctx, std::size_t idx, const json& params) {
    std::string method = params.value("method", "standard_rotations");
    for (const auto& [name, net] : ctx.targets(params)) {
        CompactBox box = params.contains("box") ? box_from_json(params.at("box"))
                                                : default_box(net.dimension);
        ClassifyOptions opts = options_from(params);
        std::string stem =
            "invariance_" + std::to_string(idx) + "_" + sanitize(name) + "_" + method;
        if (method == "translation") {
            int axis = params.value("axis", 0);
            TranslationReport rep = translation_tests(
                net, axis, box, default_scalar_family(net.grid), opts);
            bool passed = rep.shifted.passed && rep.axis_partial.passed &&
                          rep.representative.passed;
            ctx.emit(stem, report_envelope("invariance", json_of(rep)), stem + ".csv",
                     csv_residual(rep.shifted.evidence));
            if (!passed) ctx.all_passed = false;
            continue;
        }
        InvarianceVerdict v;
        if (method == "infinitesimal") {
            const NetVectorField& xi =
                ctx.gallery_items.field(params.at("field").get<std::string>());
            v = infinitesimal_test(xi, net, box, opts);
        } else if (method == "standard_rotations") {
            v = standard_rotation_test(net, box, default_rotation_angles(),
                                       all_rotation_planes(net.dimension), opts);
        } else if (method == "generalized_rotations") {
            v = generalized_rotation_test(
                net, box, default_generalized_angles(net.grid, net.dimension), opts);
        } else {
            throw ConfigError("unknown invariance method: " + method);
        }
        ctx.emit(stem, report_envelope("invariance", json_of(v)), stem + ".csv",
                 csv_residual(v.evidence));
        if (!v.passed) ctx.all_passed = false;
    }
}

void run_reduce(TaskContext& ctx, std::size_t idx, const json& params) {
    for (const auto& [name, net] : ctx.targets(params)) {
        CompactBox box = params.contains("box") ? box_from_json(params.at("box"))
                                                : default_box(net.dimension);
        NetFunction v = radial_profile(net);
        ReductionResult res = verify_reduction(net, v, box, options_from(params));
        json payload = json_of(res);
        payload["item"] = name;
        std::string stem = "reduce_" + std::to_string(idx) + "_" + sanitize(name);
        ctx.emit(stem, report_envelope("reduce", payload), stem + ".csv",
                 csv_residual(res.residual));
        // one representative radius sweep at the first tail epsilon
        double eps = net.grid.values[net.grid.tail_start];
        write_text_file((ctx.out / (stem + "_v.csv")).string(),
                        csv_radial(v, eps, box.max_abs_corner(), 101));
        if (!res.certified) ctx.all_passed = false;
    }
}

} // namespace

Scenario parse_scenario(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what(), e.byte);
    }
    Scenario s;
    double base = 0.5;
    int k_min = 4, k_max = 24;
    if (doc.contains("grid")) {
        const json& g = doc.at("grid");
        base = g.value("base", base);
        if (g.contains("k")) {
            k_min = g.at("k").at(0).get<int>();
            k_max = g.at("k").at(1).get<int>();
        }
    }
    s.grid = make_epsilon_grid(k_min, k_max, base);
    s.out_dir = doc.value("out", s.out_dir);

    Gallery g = gallery(s.grid);
    if (doc.contains("items"))
        for (const json& item : doc.at("items")) {
            if (item.is_string()) {
                std::string name = item.get<std::string>();
                s.items.emplace_back(name, g.function(name));
            } else {
                std::string name = item.at("name").get<std::string>();
                int arity = item.at("arity").get<int>();
                s.items.emplace_back(name,
                                     compile_net(item.at("expr").get<std::string>(),
                                                 arity, s.grid));
            }
        }
    if (doc.contains("tasks")) {
        if (!doc.at("tasks").is_array()) throw ConfigError("tasks must be an array");
        s.tasks = doc.at("tasks");
    }
    return s;
}

int run_scenario(const Scenario& s) {
    TaskContext ctx{s, gallery(s.grid), std::filesystem::path(s.out_dir)};
    try {
        std::filesystem::create_directories(ctx.out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    for (std::size_t i = 0; i < s.tasks.size(); ++i) {
        try {
            const json& task = s.tasks[i];
            if (!task.is_object() || task.size() != 1)
                throw ConfigError("each task must be a single-key object");
            const std::string kind = task.begin().key();
            const json& params = task.begin().value();
            if (kind == "classify")
                run_classify(ctx, i, params);
            else if (kind == "flow")
                run_flow_task(ctx, i, params);
            else if (kind == "invariance")
                run_invariance(ctx, i, params);
            else if (kind == "reduce")
                run_reduce(ctx, i, params);
            else
                throw ConfigError("unknown task kind: " + kind);
        } catch (const BlowUpError& e) {
            std::cerr << "error in task " << i << " at eps = " << e.eps << ": "
                      << e.what() << "\n";
            return 2;
        } catch (const std::exception& e) {
            std::cerr << "error in task " << i << ": " << e.what() << "\n";
            return 2;
        }
    }
    return ctx.all_passed ? 0 : 1;
}

} // namespace colombeau
