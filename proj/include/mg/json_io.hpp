#pragma once

#include <string>

#include <json.hpp>

#include "mg/divisor.hpp"
#include "mg/experiment.hpp"
#include "mg/graph.hpp"
#include "mg/measure.hpp"
#include "mg/okounkov.hpp"
#include "mg/slopes.hpp"
#include "mg/weierstrass.hpp"

namespace mg::io {

using nlohmann::json;

// Rationals appear in JSON as integers or strings "p/q".
Rat rat_from_json(const json& j);
json rat_to_json(const Rat& q);

json load_json_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

MetricGraph graph_from_json(const json& j);
json graph_to_json(const MetricGraph& g);

Point point_from_json(const MetricGraph& g, const json& j);
json point_to_json(const MetricGraph& g, const Point& p);

Divisor divisor_from_json(const MetricGraph& g, const json& j);
json divisor_to_json(const MetricGraph& g, const Divisor& d);
json qdivisor_to_json(const MetricGraph& g, const QDivisor& d);

Measure measure_from_json(const MetricGraph& g, const json& j);
json measure_to_json(const MetricGraph& g, const Measure& m);

SlopeStructure slope_structure_from_json(const MetricGraph& g, const json& j);
json slope_structure_to_json(const MetricGraph& g, const SlopeStructure& s);

SlopeData slope_data_from_json(const json& j);
json slope_data_to_json(const SlopeData& d);

SlopeFamily slope_family_from_json(const json& j);
json slope_family_to_json(const SlopeFamily& f);

ExperimentConfig config_from_json(const json& j);

}  // namespace mg::io
