#ifndef COLOMBEAU_REPORT_HPP
#define COLOMBEAU_REPORT_HPP

#include <string>

#include <json.hpp>

#include "colombeau/asymptotics.hpp"
#include "colombeau/flow_engine.hpp"
#include "colombeau/invariance.hpp"
#include "colombeau/reduction.hpp"

namespace colombeau {

inline constexpr int kSchemaVersion = 1;

// shortest round-trippable decimal form; identical runs yield identical bytes
std::string format_double(double v);

std::string csv_profile(const GrowthProfile& p);     // epsilon,sup
std::string csv_residual(const GrowthProfile& p);    // epsilon,residual
std::string csv_trajectory(const TrajectoryNet& t);  // epsilon,t,x1..xn
// one radius sweep of a reduced net member: r,value
std::string csv_radial(const NetFunction& v, double eps, double r_max, int samples);

nlohmann::json json_of(const ClassifyOptions& o);
nlohmann::json json_of(const CompactBox& b);
nlohmann::json json_of(const GrowthProfile& p);
nlohmann::json json_of(const AsymptoticClass& c);
nlohmann::json json_of(const InvarianceVerdict& v);
nlohmann::json json_of(const CompletenessReport& r);
nlohmann::json json_of(const GroupLawReport& r);
nlohmann::json json_of(const TranslationReport& r);
nlohmann::json json_of(const ReductionResult& r);

// wraps a payload with schema_version
nlohmann::json report_envelope(const std::string& kind, nlohmann::json payload);

void write_text_file(const std::string& path, const std::string& contents);

} // namespace colombeau

#endif
