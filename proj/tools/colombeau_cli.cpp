#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "colombeau/embeddings.hpp"
#include "colombeau/scenario.hpp"

using nlohmann::json;

namespace {

// "l1,h1,l2,h2,..." -> [[l1,h1],[l2,h2],...]
json box_json(const std::string& spec) {
    std::vector<double> vals;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) vals.push_back(std::stod(tok));
    if (vals.empty() || vals.size() % 2 != 0)
        throw colombeau::ConfigError("--box needs an even number of comma-separated values");
    json box = json::array();
    for (std::size_t i = 0; i < vals.size(); i += 2) box.push_back({vals[i], vals[i + 1]});
    return box;
}

std::vector<double> csv_doubles(const std::string& spec) {
    std::vector<double> vals;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) vals.push_back(std::stod(tok));
    return vals;
}

std::vector<int> csv_ints(const std::string& spec) {
    std::vector<int> vals;
    for (double v : csv_doubles(spec)) vals.push_back(static_cast<int>(v));
    return vals;
}

} // namespace

int main(int argc, char** argv) {
    if (const char* env = std::getenv("COLOMBEAU_THREADS")) {
        int n = std::atoi(env);
#ifdef _OPENMP
        if (n > 0) omp_set_num_threads(n);
#else
        (void)n;
#endif
    }

    CLI::App app{"generalized-function nets: classification, flows, invariance"};
    app.require_subcommand(1);

    double grid_base = 0.5;
    int k_min = 4, k_max = 24, m_max = 3;
    std::string out_dir = "reports", box_spec;
    app.add_option("--grid-base", grid_base, "epsilon grid base in (0,1)");
    app.add_option("--grid-k-min", k_min, "smallest grid exponent");
    app.add_option("--grid-k-max", k_max, "largest grid exponent");
    app.add_option("--out", out_dir, "report output directory");
    app.add_option("--m-max", m_max, "negligibility decay threshold");
    app.add_option("--box", box_spec, "compact box as l1,h1,l2,h2,...");
    app.fallthrough();

    std::string item, field, method = "standard_rotations", order_spec, x0_spec = "1,0";
    std::string scenario_path, gallery_action;
    double flow_t = 1.0, h0 = 1e-3;
    int axis = 0;
    bool override_completeness = false;

    CLI::App* classify = app.add_subcommand("classify", "growth classification of a net");
    classify->add_option("item", item, "gallery net name")->required();
    classify->add_option("--order", order_spec, "derivative multi-index as a0,a1,...");

    CLI::App* flow_cmd = app.add_subcommand("flow", "integrate a net vector field");
    flow_cmd->add_option("field", field, "gallery field name")->required();
    flow_cmd->add_option("--t", flow_t, "end time")->required();
    flow_cmd->add_option("--x0", x0_spec, "initial point as c1,c2,...");
    flow_cmd->add_option("--h0", h0, "base RK4 step");
    flow_cmd->add_flag("--override", override_completeness,
                       "integrate even if the completeness check fails");

    CLI::App* inv = app.add_subcommand("invariance", "invariance tests for a net");
    inv->add_option("item", item, "gallery net name")->required();
    inv->add_option("--method", method,
                    "infinitesimal | standard_rotations | generalized_rotations | "
                    "translation");
    inv->add_option("--field", field, "generator field for the infinitesimal test");
    inv->add_option("--axis", axis, "translation axis (0-based)");

    CLI::App* reduce = app.add_subcommand("reduce", "radial reduction of a net");
    reduce->add_option("item", item, "gallery net name")->required();

    CLI::App* gal = app.add_subcommand("gallery", "gallery inspection");
    gal->add_option("action", gallery_action, "list")->required();

    CLI::App* run_cmd = app.add_subcommand("run", "execute a scenario file");
    run_cmd->add_option("scenario", scenario_path, "path to a scenario JSON file")
        ->required()
        ->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gal->parsed()) {
            if (gallery_action != "list") {
                std::cerr << "unknown gallery action: " << gallery_action << "\n";
                return 2;
            }
            colombeau::Gallery g =
                colombeau::gallery(colombeau::make_epsilon_grid(k_min, k_max, grid_base));
            std::cout << "functions:\n";
            for (const auto& n : g.function_names()) std::cout << "  " << n << "\n";
            std::cout << "fields:\n";
            for (const auto& n : g.field_names()) std::cout << "  " << n << "\n";
            return 0;
        }

        json doc{{"grid", {{"base", grid_base}, {"k", {k_min, k_max}}}},
                 {"out", out_dir}};
        if (run_cmd->parsed()) {
            std::ifstream f(scenario_path);
            std::stringstream buf;
            buf << f.rdbuf();
            colombeau::Scenario s = colombeau::parse_scenario(buf.str());
            return colombeau::run_scenario(s);
        }

        json params;
        if (!box_spec.empty()) params["box"] = box_json(box_spec);
        params["m_max"] = m_max;
        std::string kind;
        if (classify->parsed()) {
            kind = "classify";
            doc["items"] = {item};
            params["item"] = item;
            if (!order_spec.empty()) params["order"] = csv_ints(order_spec);
        } else if (flow_cmd->parsed()) {
            kind = "flow";
            params["field"] = field;
            params["t"] = flow_t;
            params["x0"] = csv_doubles(x0_spec);
            params["h0"] = h0;
            params["override"] = override_completeness;
        } else if (inv->parsed()) {
            kind = "invariance";
            doc["items"] = {item};
            params["item"] = item;
            params["method"] = method;
            params["axis"] = axis;
            if (!field.empty()) params["field"] = field;
        } else if (reduce->parsed()) {
            kind = "reduce";
            doc["items"] = {item};
            params["item"] = item;
        }
        doc["tasks"] = json::array({json{{kind, params}}});
        colombeau::Scenario s = colombeau::parse_scenario(doc.dump());
        return colombeau::run_scenario(s);
    } catch (const colombeau::ParseError& e) {
        std::cerr << "parse error at position " << e.position << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
