///////////////////////////////////////////////////////////////////////////////
// io.hpp: JSON Lines records for frames, ego motion, ground truth and track
// output. Readers report malformed input as "line N: ...".
///////////////////////////////////////////////////////////////////////////////

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "radtrack/core_model.hpp"
#include "radtrack/ego_motion.hpp"
#include "radtrack/metrics.hpp"
#include "radtrack/tracking.hpp"

namespace radtrack
{

/// One line of the track output file.
struct TrackRecord
{
  long frame = 0;
  int track_id = 0;
  TrackStatus status = TrackStatus::tentative;
  double px = 0.0;
  double py = 0.0;
  double vx = 0.0;
  double vy = 0.0;
  BoundingBoxd bbox;
  std::optional<double> similarity;
  std::optional<bool> moving;  // present only when ego motion was supplied

  bool operator==(const TrackRecord&) const = default;
};

/// One line of the world-frame corrected output.
struct CorrectedRecord
{
  long frame = 0;
  int track_id = 0;
  TrackStatus status = TrackStatus::tentative;
  bool moving = false;
  std::optional<double> residual;
  Eigen::Vector2d world = Eigen::Vector2d::Zero();                 // corrected estimate
  std::optional<Eigen::Vector2d> world_measured;                   // corrected cluster centroid

  bool operator==(const CorrectedRecord&) const = default;
};

nlohmann::json to_json(const Frame& f);
Frame frame_from_json(const nlohmann::json& j);
nlohmann::json to_json(const EgoMotion& e);
EgoMotion ego_from_json(const nlohmann::json& j);
nlohmann::json to_json(const TrackRecord& r);
TrackRecord track_record_from_json(const nlohmann::json& j);
nlohmann::json to_json(const CorrectedRecord& r);

/// Ground truth lines, one per (frame, target).
std::vector<nlohmann::json> gt_to_json_lines(const std::vector<GroundTruthTrack>& gt);
/// Groups lines by target id (ascending), samples ordered by frame.
std::vector<GroundTruthTrack> gt_from_json_lines(const std::vector<nlohmann::json>& lines);

/// Parses each non-empty line as JSON; ValidationError "line N: ..." on failure.
std::vector<nlohmann::json> read_json_lines(std::istream& in);
std::vector<nlohmann::json> read_json_lines(const std::filesystem::path& path);
void write_json_lines(std::ostream& out, const std::vector<nlohmann::json>& lines);
void write_json_lines(const std::filesystem::path& path, const std::vector<nlohmann::json>& lines);

std::vector<Frame> read_frames(const std::filesystem::path& path);
std::vector<EgoMotion> read_ego(const std::filesystem::path& path);
std::vector<GroundTruthTrack> read_gt(const std::filesystem::path& path);
std::vector<TrackRecord> read_track_records(const std::filesystem::path& path);

void write_frames(const std::filesystem::path& path, const std::vector<Frame>& frames);
void write_ego(const std::filesystem::path& path, const std::vector<EgoMotion>& ego);
void write_gt(const std::filesystem::path& path, const std::vector<GroundTruthTrack>& gt);
void write_track_records(const std::filesystem::path& path, const std::vector<TrackRecord>& recs);

/// Shortest round-trip decimal form of `v`.
std::string format_double(double v);

}  // namespace radtrack
