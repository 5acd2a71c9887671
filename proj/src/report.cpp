#include "colombeau/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace colombeau {

using nlohmann::json;

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_profile(const GrowthProfile& p) {
    std::string out = "epsilon,sup\n";
    for (const auto& [eps, sup] : p.entries)
        out += format_double(eps) + "," + format_double(sup) + "\n";
    return out;
}

std::string csv_residual(const GrowthProfile& p) {
    std::string out = "epsilon,residual\n";
    for (const auto& [eps, sup] : p.entries)
        out += format_double(eps) + "," + format_double(sup) + "\n";
    return out;
}

std::string csv_trajectory(const TrajectoryNet& t) {
    std::string out = "epsilon,t";
    int dim = t.states.empty() || t.states[0].empty()
                  ? 0
                  : static_cast<int>(t.states[0][0].size());
    for (int i = 1; i <= dim; ++i) out += ",x" + std::to_string(i);
    out += "\n";
    for (std::size_t e = 0; e < t.grid.size(); ++e)
        for (std::size_t k = 0; k < t.mesh.size(); ++k) {
            out += format_double(t.grid.values[e]) + "," + format_double(t.mesh[k]);
            for (double c : t.states[e][k]) out += "," + format_double(c);
            out += "\n";
        }
    return out;
}

std::string csv_radial(const NetFunction& v, double eps, double r_max, int samples) {
    if (v.dimension != 1) throw ConfigError("csv_radial expects a net on the radius");
    if (samples < 2) throw ConfigError("csv_radial needs at least 2 samples");
    SmoothFunctionHandle h = v.member(eps);
    MultiIndex zero = zero_index(1);
    std::string out = "r,value\n";
    for (int i = 0; i < samples; ++i) {
        double r = r_max * static_cast<double>(i) / static_cast<double>(samples - 1);
        out += format_double(r) + "," + format_double(h.derivative(zero, Point{r})) + "\n";
    }
    return out;
}

json json_of(const ClassifyOptions& o) {
    return {{"m_max", o.m_max},         {"slope_tol", o.slope_tol},
            {"abs_floor", o.abs_floor}, {"ratio_tol", o.ratio_tol},
            {"rel_floor", o.rel_floor}, {"residual_max", o.residual_max},
            {"n_cap", o.n_cap}};
}

json json_of(const CompactBox& b) {
    json iv = json::array();
    for (const auto& [lo, hi] : b.intervals) iv.push_back({lo, hi});
    return {{"intervals", iv}, {"resolution", b.resolution}};
}

json json_of(const GrowthProfile& p) {
    json entries = json::array();
    for (const auto& [eps, sup] : p.entries) entries.push_back({eps, sup});
    json j{{"entries", entries},
           {"tail_start", p.tail_start},
           {"order", p.order},
           {"box", json_of(p.box)}};
    if (!p.scale.empty()) j["scale"] = p.scale;
    return j;
}

json json_of(const AsymptoticClass& c) {
    json j{{"verdict", verdict_name(c.verdict)},
           {"slope", c.slope},
           {"residual", c.residual},
           {"low_confidence", c.low_confidence},
           {"thresholds", json_of(c.thresholds)}};
    if (c.verdict == Verdict::Moderate) j["moderate_order"] = c.moderate_order;
    if (c.verdict == Verdict::LogType) j["log_ratio"] = c.log_ratio;
    return j;
}

json json_of(const InvarianceVerdict& v) {
    return {{"method", method_name(v.method)},
            {"passed", v.passed},
            {"region", json_of(v.region)},
            {"worst_profile", v.evidence.entries.empty() ? json(nullptr)
                                                         : json_of(v.evidence)},
            {"classification", v.evidence.entries.empty() ? json(nullptr)
                                                          : json_of(v.evidence_class)}};
}

json json_of(const CompletenessReport& r) {
    return {{"globally_bounded", r.globally_bounded},
            {"bound_estimate", r.bound_estimate},
            {"bound_class", json_of(r.bound_class)},
            {"derivatives_log_type", r.derivatives_log_type},
            {"worst_log_ratio", r.worst_log_ratio},
            {"log_type_constant", r.log_type_constant},
            {"metric", r.metric},
            {"complete", r.complete()},
            {"caveat",
             "global boundedness is certified on a finite box proxy, not on all of "
             "R^n"}};
}

json json_of(const GroupLawReport& r) {
    return {{"passed", r.passed},
            {"tolerance", r.tolerance},
            {"residual", json_of(r.residual)}};
}

json json_of(const TranslationReport& r) {
    return {{"shifted", json_of(r.shifted)},
            {"axis_partial", json_of(r.axis_partial)},
            {"representative", json_of(r.representative)},
            {"agree", r.agree()}};
}

json json_of(const ReductionResult& r) {
    return {{"invariant_map", r.invariant_map},
            {"certified", r.certified},
            {"residual", json_of(r.residual)},
            {"classification", json_of(r.residual_class)}};
}

json report_envelope(const std::string& kind, json payload) {
    return {{"schema_version", kSchemaVersion}, {"kind", kind},
            {"payload", std::move(payload)}};
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open for writing: " + path);
    f << contents;
}

} // namespace colombeau
