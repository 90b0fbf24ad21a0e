///////////////////////////////////////////////////////////////////////////////
// pipeline.hpp: suppress -> cluster -> associate -> filter -> lifecycle over a
// frame sequence, plus world-frame correction and evaluation helpers.
///////////////////////////////////////////////////////////////////////////////

#pragma once

#include <optional>
#include <vector>

#include "radtrack/config.hpp"
#include "radtrack/io.hpp"
#include "radtrack/metrics.hpp"
#include "radtrack/tracking.hpp"

namespace radtrack
{

struct TrackRun
{
  std::vector<TrackRecord> records;        // per frame, ascending track id
  std::vector<CorrectedRecord> corrected;  // empty without ego motion
  std::vector<TrackEvent> events;
  std::vector<Track> final_tracks;         // tracker state after the last frame
  std::vector<Track> all_tracks;           // every track ever created, final snapshot
};

/// Runs the whole tracking pipeline. With `ego`, every frame must have an
/// ego record (ValidationError naming the first missing frame) and the
/// records carry moving/static flags and a world-frame correction.
TrackRun run_tracking(const std::vector<Frame>& frames,
                      const std::optional<std::vector<EgoMotion>>& ego,
                      const PipelineConfig& cfg, const SimilarityFunction& sim_override = {});

/// Track records the evaluation treats as detections: confirmed or coasting,
/// and not flagged static.
std::vector<DetectionSample> detections_from_records(const std::vector<TrackRecord>& records);

/// Ground truth converted to confirmed track records (one track per target).
std::vector<TrackRecord> records_from_gt(const std::vector<GroundTruthTrack>& gt);

/// Report document: {"config", "overall", "targets"}.
nlohmann::json report_to_json(const EvalReport& rep, const PipelineConfig& cfg);

/// CSV: frame,target,track,dx,dy,iou
std::string residuals_csv(const EvalReport& rep);

}  // namespace radtrack
