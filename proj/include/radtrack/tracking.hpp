///////////////////////////////////////////////////////////////////////////////
// tracking.hpp: Multi-target tracker. Each frame the live tracks are
// predicted, associated with the frame's clusters by feature similarity,
// updated, and pushed through the tentative/confirmed/coasting/deleted
// lifecycle.
///////////////////////////////////////////////////////////////////////////////

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "radtrack/association.hpp"
#include "radtrack/core_model.hpp"
#include "radtrack/ego_motion.hpp"
#include "radtrack/kalman.hpp"

namespace radtrack
{

enum class TrackStatus
{
  tentative,
  confirmed,
  coasting,
  deleted,
};

std::string_view to_string(TrackStatus s);
TrackStatus track_status_from_string(std::string_view s);

/// Whether the lifecycle allows `from` -> `to`.
bool is_valid_transition(TrackStatus from, TrackStatus to);

struct LifecycleConfig
{
  int confirm_hits = 3;
  int max_misses = 3;

  void validate() const;
};

struct TrackerConfig
{
  KFConfig kf;
  SimilarityWeights weights;
  SimilarityThresholds thresholds;
  LifecycleConfig lifecycle;
  AssignmentPolicy policy = AssignmentPolicy::greedy;
  // Cluster radial velocities arrive ego-compensated; the tracker restores
  // the raw value before decomposing it into a Cartesian velocity.
  bool compensated_input = false;
  double delta_v = 0.5;  // moving/static residual threshold [m/s]

  void validate() const;
};

struct HistoryEntry
{
  long frame = 0;
  FeatureVectord estimate;
  std::optional<FeatureVectord> measurement;  // associated cluster, if any
  std::optional<double> similarity;
  std::optional<double> residual;  // ego-compensated radial velocity
};

struct Track
{
  int id = 0;
  KFStated state;
  TrackStatus status = TrackStatus::tentative;
  int hits = 1;
  int consecutive_misses = 0;
  std::vector<HistoryEntry> history;
  Eigen::Vector2d last_centroid = Eigen::Vector2d::Zero();
  double last_centroid_time = 0.0;
  double amplitude = 0.0;  // of the last associated cluster
  bool moving = false;     // latched once the ego-compensated residual exceeds delta_v

  /// Current estimate as a feature vector (vr is the line-of-sight
  /// projection of the velocity estimate).
  FeatureVectord estimate() const;
};

enum class TrackEventKind
{
  created,
  confirmed,
  coasting,
  deleted,
};

std::string_view to_string(TrackEventKind k);

struct TrackEvent
{
  long frame = 0;
  int track_id = 0;
  TrackEventKind kind = TrackEventKind::created;
};

class Tracker
{
public:
  explicit Tracker(TrackerConfig cfg = {});

  /// Advances by one frame. `clusters` must come from `frame`. When `ego`
  /// is given the tracks' moving flags are refreshed. Throws
  /// ValidationError on a non-increasing timestamp.
  std::vector<TrackEvent> step(const Frame& frame, const std::vector<Cluster>& clusters,
                               const std::optional<EgoMotion>& ego = std::nullopt);

  /// Live tracks plus any deleted during the last step.
  const std::vector<Track>& tracks() const { return tracks_; }
  const TrackerConfig& config() const { return cfg_; }

  /// Replaces the weighted similarity (weights/gate from config still apply
  /// for the gate only).
  void set_similarity(SimilarityFunction fn) { sim_override_ = std::move(fn); }

private:
  Track spawn(const Cluster& c, const Frame& frame, const std::optional<EgoMotion>& ego);
  double raw_vr(const FeatureVectord& f, const std::optional<EgoMotion>& ego) const;

  TrackerConfig cfg_;
  std::vector<Track> tracks_;
  std::optional<double> last_timestamp_;
  int next_id_ = 0;
  SimilarityFunction sim_override_;
};

}  // namespace radtrack
