#ifndef COLOMBEAU_SCENARIO_HPP
#define COLOMBEAU_SCENARIO_HPP

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "colombeau/embeddings.hpp"
#include "colombeau/net_core.hpp"

namespace colombeau {

struct Scenario {
    EpsilonGrid grid;
    // named nets: gallery items plus inline expression definitions
    std::vector<std::pair<std::string, NetFunction>> items;
    nlohmann::json tasks = nlohmann::json::array();
    std::string out_dir = "reports";
};

// validated scenario from JSON text; inline expressions are compiled with
// symbolic partials to order 2
Scenario parse_scenario(const std::string& text);

// executes tasks in order, writing one JSON report per task plus CSV profiles
// into out_dir; returns 0 when every verdict passed, 1 when any failed, 2 on
// execution error
int run_scenario(const Scenario& s);

} // namespace colombeau

#endif
