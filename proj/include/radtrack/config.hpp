///////////////////////////////////////////////////////////////////////////////
// config.hpp: Pipeline and scenario configuration documents (JSON). Every
// field is optional and defaulted; unknown keys are rejected by name.
///////////////////////////////////////////////////////////////////////////////

#pragma once

#include <filesystem>

#include "json.hpp"

#include "radtrack/clustering.hpp"
#include "radtrack/simulator.hpp"
#include "radtrack/tracking.hpp"

namespace radtrack
{

struct PipelineConfig
{
  ClusteringParams clustering;
  TrackerConfig tracker;  // kf, weights, thresholds, lifecycle, policy, delta_v
  bool compensate_before_association = false;
  double match_dist = 1.0;  // evaluation gate [m]

  void validate() const;
};

PipelineConfig pipeline_config_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const PipelineConfig& cfg);
PipelineConfig load_pipeline_config(const std::filesystem::path& path);

ScenarioConfig scenario_config_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const ScenarioConfig& cfg);
ScenarioConfig load_scenario_config(const std::filesystem::path& path);

/// Parses a whole JSON document from a file; ValidationError on failure.
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace radtrack
